//! Local actions of the generators on spheres of the two trees.
//!
//! A horizontal letter `a` fixes the base vertex of the vertical tree. For
//! each vertical `b` the unique square form `a b a' b'` rewrites `a b` as
//! `b'^-1 a'^-1`: the `b`-neighbour goes to the `b'^-1`-neighbour and the
//! action continues one level deeper as `a'^-1`. Vertical letters act on the
//! horizontal tree symmetrically.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::complex::{Letter, Side, SquareComplex};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const DEFAULT_MAX_DEPTH: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalError {
    #[error("link condition violated: no square with corner ({0}, {1})")]
    MissingCorner(Letter, Letter),
    #[error("link condition violated: corner ({0}, {1}) lies on several squares")]
    DuplicateCorner(Letter, Letter),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("depth {depth} exceeds the configured bound {max}")]
    TooDeep { depth: usize, max: usize },
    #[error("depth-1 map of {0} is not a bijection")]
    NotBijective(Letter),
}

/// Action of one letter on the 1-sphere of the opposite tree, together with
/// the letter that carries the action one level further out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPerm {
    pub actor: Letter,
    pub depth_1_map: BTreeMap<Letter, Letter>,
    pub residual: BTreeMap<Letter, Letter>,
}

/// Horizontal actor `a`: `b -> b'^-1`, residual `a'^-1`, from the form `a b a' b'`.
pub fn vertical_local_perm(c: &SquareComplex, a: Letter) -> Result<LocalPerm, LocalError> {
    debug_assert_eq!(a.side, Side::Horizontal);
    let table = c.corner_table();
    let mut depth_1_map = BTreeMap::new();
    let mut residual = BTreeMap::new();
    for b in c.letters(Side::Vertical) {
        let form = unique_form(&table, a, b)?;
        depth_1_map.insert(b, form[3].inv());
        residual.insert(b, form[2].inv());
    }
    finish(a, depth_1_map, residual)
}

/// Vertical actor `b`: from the cyclic form `b a' b' a`, `a' -> a^-1` with
/// residual `b'^-1`. The form is looked up through its corner `(a'^-1, b^-1)`.
pub fn horizontal_local_perm(c: &SquareComplex, b: Letter) -> Result<LocalPerm, LocalError> {
    debug_assert_eq!(b.side, Side::Vertical);
    let table = c.corner_table();
    let mut depth_1_map = BTreeMap::new();
    let mut residual = BTreeMap::new();
    for x in c.letters(Side::Horizontal) {
        // (x^-1, b^-1, a^-1, b'^-1) is the inverse form of (a, b, x, b')
        let form = unique_form(&table, x.inv(), b.inv())?;
        depth_1_map.insert(x, form[2]);
        residual.insert(x, form[3]);
    }
    finish(b, depth_1_map, residual)
}

fn unique_form(
    table: &BTreeMap<(Letter, Letter), Vec<[Letter; 4]>>,
    x: Letter,
    y: Letter,
) -> Result<[Letter; 4], LocalError> {
    match table.get(&(x, y)).map(|v| v.as_slice()) {
        None | Some([]) => Err(LocalError::MissingCorner(x, y)),
        Some([form]) => Ok(*form),
        Some(_) => Err(LocalError::DuplicateCorner(x, y)),
    }
}

fn finish(
    actor: Letter,
    depth_1_map: BTreeMap<Letter, Letter>,
    residual: BTreeMap<Letter, Letter>,
) -> Result<LocalPerm, LocalError> {
    let mut images: Vec<Letter> = depth_1_map.values().copied().collect();
    images.sort();
    images.dedup();
    if images.len() != depth_1_map.len() {
        return Err(LocalError::NotBijective(actor));
    }
    Ok(LocalPerm {
        actor,
        depth_1_map,
        residual,
    })
}

pub fn local_perm(c: &SquareComplex, actor: Letter) -> Result<LocalPerm, LocalError> {
    match actor.side {
        Side::Horizontal => vertical_local_perm(c, actor),
        Side::Vertical => horizontal_local_perm(c, actor),
    }
}

/// Reduced words of length `depth` over the `2k` letters of one side.
///
/// Letters are ordered `x1 < ... < xk < x1^-1 < ... < xk^-1` and words
/// lexicographically; points are numbered in that order.
#[derive(Clone, Debug)]
pub struct SphereIndex {
    side: Side,
    rank: u32,
    depth: usize,
}

impl SphereIndex {
    pub fn new(side: Side, rank: u32, depth: usize) -> Self {
        SphereIndex { side, rank, depth }
    }

    fn alphabet(&self) -> usize {
        2 * self.rank as usize
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `d (d-1)^(k-1)` with `d = 2 * rank`.
    pub fn len(&self) -> usize {
        let d = self.alphabet();
        if self.depth == 0 {
            return 1;
        }
        d * (d - 1).pow(self.depth as u32 - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letter_code(&self, l: Letter) -> usize {
        debug_assert_eq!(l.side, self.side);
        let k = self.rank as usize;
        (l.index as usize - 1) + if l.inverted { k } else { 0 }
    }

    pub fn code_letter(&self, code: usize) -> Letter {
        let k = self.rank as usize;
        Letter::new(self.side, (code % k) as u32 + 1, code >= k)
    }

    fn inverse_code(&self, code: usize) -> usize {
        let k = self.rank as usize;
        (code + k) % (2 * k)
    }

    pub fn index_of(&self, word: &[Letter]) -> usize {
        assert_eq!(word.len(), self.depth);
        let d = self.alphabet();
        let mut idx = 0;
        let mut prev: Option<usize> = None;
        for &l in word {
            let code = self.letter_code(l);
            let digit = match prev {
                None => {
                    idx = 0;
                    code
                }
                Some(p) => {
                    let forbidden = self.inverse_code(p);
                    assert_ne!(code, forbidden, "word is not reduced");
                    idx *= d - 1;
                    if code > forbidden {
                        code - 1
                    } else {
                        code
                    }
                }
            };
            idx += digit;
            prev = Some(code);
        }
        idx
    }

    pub fn word_at(&self, mut idx: usize) -> Vec<Letter> {
        let d = self.alphabet();
        let mut digits = vec![0; self.depth];
        for i in (1..self.depth).rev() {
            digits[i] = idx % (d - 1);
            idx /= d - 1;
        }
        digits[0] = idx;
        let mut word = Vec::with_capacity(self.depth);
        let mut prev: Option<usize> = None;
        for digit in digits {
            let code = match prev {
                None => digit,
                Some(p) => {
                    let forbidden = self.inverse_code(p);
                    if digit >= forbidden {
                        digit + 1
                    } else {
                        digit
                    }
                }
            };
            word.push(self.code_letter(code));
            prev = Some(code);
        }
        word
    }

    pub fn words(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        (0..self.len()).map(|i| self.word_at(i))
    }
}

/// Local permutations of every letter of the side acting on `side`'s
/// opposite tree, i.e. all letters of `actor_side`.
pub struct LocalActions {
    pub target: Side,
    perms: BTreeMap<Letter, LocalPerm>,
}

impl LocalActions {
    /// Actions on the tree of `target` (letters of the other side act).
    pub fn new(c: &SquareComplex, target: Side) -> Result<Self, LocalError> {
        let perms = c
            .letters(target.opposite())
            .into_iter()
            .map(|l| local_perm(c, l).map(|p| (l, p)))
            .collect::<Result<_, _>>()?;
        Ok(LocalActions { target, perms })
    }

    pub fn get(&self, actor: Letter) -> &LocalPerm {
        &self.perms[&actor]
    }

    /// `rho_x(w1 w2 .. wk) = depth_1_map_x(w1) . rho_{residual_x(w1)}(w2 .. wk)`.
    pub fn act_on_word(&self, actor: Letter, word: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(word.len());
        let mut current = actor;
        for &w in word {
            let lp = self.get(current);
            out.push(lp.depth_1_map[&w]);
            current = lp.residual[&w];
        }
        out
    }
}

fn check_depth(depth: usize, max_depth: usize) -> Result<(), LocalError> {
    if depth == 0 {
        return Err(LocalError::ZeroDepth);
    }
    if depth > max_depth {
        return Err(LocalError::TooDeep {
            depth,
            max: max_depth,
        });
    }
    Ok(())
}

pub fn sphere_action(
    c: &SquareComplex,
    actor: Letter,
    depth: usize,
) -> Result<Permutation, LocalError> {
    sphere_action_bounded(c, actor, depth, DEFAULT_MAX_DEPTH)
}

pub fn sphere_action_bounded(
    c: &SquareComplex,
    actor: Letter,
    depth: usize,
    max_depth: usize,
) -> Result<Permutation, LocalError> {
    check_depth(depth, max_depth)?;
    let target = actor.side.opposite();
    let actions = LocalActions::new(c, target)?;
    let index = SphereIndex::new(target, c.side_size(target), depth);
    Ok(sphere_perm(&actions, &index, actor))
}

fn sphere_perm(actions: &LocalActions, index: &SphereIndex, actor: Letter) -> Permutation {
    let images = index
        .words()
        .map(|w| index.index_of(&actions.act_on_word(actor, &w)) as u32)
        .collect();
    Permutation::from_images(images).expect("sphere action is a bijection under the link condition")
}

/// The local group on the `depth`-sphere of the tree of `side`, generated by
/// the positive letters of the other side.
#[derive(Clone, Debug)]
pub struct LocalGroup {
    pub side: Side,
    pub depth: usize,
    pub generators: Vec<(Letter, Permutation)>,
    pub group: PermGroup,
}

impl LocalGroup {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

pub fn local_group(c: &SquareComplex, side: Side, depth: usize) -> Result<LocalGroup, LocalError> {
    local_group_bounded(c, side, depth, DEFAULT_MAX_DEPTH)
}

pub fn local_group_bounded(
    c: &SquareComplex,
    side: Side,
    depth: usize,
    max_depth: usize,
) -> Result<LocalGroup, LocalError> {
    check_depth(depth, max_depth)?;
    let actions = LocalActions::new(c, side)?;
    let index = SphereIndex::new(side, c.side_size(side), depth);
    let generators: Vec<(Letter, Permutation)> = (1..=c.side_size(side.opposite()))
        .map(|i| {
            let actor = Letter::new(side.opposite(), i, false);
            (actor, sphere_perm(&actions, &index, actor))
        })
        .collect();
    let group = PermGroup::new(
        index.len(),
        generators.iter().map(|(_, p)| p.clone()).collect(),
    )
    .expect("uniform degree");
    Ok(LocalGroup {
        side,
        depth,
        generators,
        group,
    })
}
