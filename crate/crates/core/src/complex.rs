//! One-vertex VH square complexes: letters, squares, the link condition and
//! subcomplexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Horizontal,
    Vertical,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Horizontal => Side::Vertical,
            Side::Vertical => Side::Horizontal,
        }
    }
}

/// An oriented edge loop `x_i` or `x_i^-1`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub side: Side,
    pub index: u32,
    pub inverted: bool,
}

impl Letter {
    pub fn new(side: Side, index: u32, inverted: bool) -> Self {
        Letter { side, index, inverted }
    }

    pub fn h(index: u32) -> Self {
        Letter::new(Side::Horizontal, index, false)
    }

    pub fn v(index: u32) -> Self {
        Letter::new(Side::Vertical, index, false)
    }

    pub fn inv(self) -> Self {
        Letter { inverted: !self.inverted, ..self }
    }

    pub fn is_horizontal(self) -> bool {
        self.side == Side::Horizontal
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.side {
            Side::Horizontal => 'a',
            Side::Vertical => 'b',
        };
        write!(f, "{prefix}{}", self.index)?;
        if self.inverted {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("square corner {position} must be {expected:?}, found {found}")]
    WrongSide {
        position: usize,
        expected: Side,
        found: Letter,
    },
    #[error("letter subset is not closed under inversion: {0} present without its inverse")]
    NotInversionClosed(Letter),
    #[error("letter subset is empty")]
    EmptySubset,
    #[error("letter {letter} out of range for side with {size} generators")]
    OutOfRange { letter: Letter, size: u32 },
}

/// A geometric square with boundary `a b a' b'`, stored in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub a: Letter,
    pub b: Letter,
    pub a2: Letter,
    pub b2: Letter,
}

impl Square {
    /// The four boundary words describing the same square, in the order
    /// `(a,b,a',b')`, `(a',b',a,b)`, `(a⁻¹,b'⁻¹,a'⁻¹,b⁻¹)`, `(a'⁻¹,b⁻¹,a⁻¹,b'⁻¹)`.
    pub fn forms(&self) -> [[Letter; 4]; 4] {
        let Square { a, b, a2, b2 } = *self;
        [
            [a, b, a2, b2],
            [a2, b2, a, b],
            [a.inv(), b2.inv(), a2.inv(), b.inv()],
            [a2.inv(), b.inv(), a.inv(), b2.inv()],
        ]
    }

    /// The `(horizontal, vertical)` corner pair opening each form.
    pub fn corners(&self) -> [(Letter, Letter); 4] {
        self.forms().map(|f| (f[0], f[1]))
    }

    pub fn letters(&self) -> [Letter; 4] {
        [self.a, self.b, self.a2, self.b2]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.a2, self.b2)
    }
}

/// Lexicographic minimum over the four equivalent forms of `a b a' b'`.
pub fn canonical_square(
    a: Letter,
    b: Letter,
    a2: Letter,
    b2: Letter,
) -> Result<Square, ComplexError> {
    for (position, (letter, expected)) in [
        (a, Side::Horizontal),
        (b, Side::Vertical),
        (a2, Side::Horizontal),
        (b2, Side::Vertical),
    ]
    .into_iter()
    .enumerate()
    {
        if letter.side != expected {
            return Err(ComplexError::WrongSide {
                position: position + 1,
                expected,
                found: letter,
            });
        }
    }
    let raw = Square { a, b, a2, b2 };
    let best = raw.forms().into_iter().min().expect("four forms");
    Ok(Square {
        a: best[0],
        b: best[1],
        a2: best[2],
        b2: best[3],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareComplex {
    pub name: String,
    pub horizontal_names: Vec<String>,
    pub vertical_names: Vec<String>,
    pub squares: BTreeSet<Square>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuplicateCorner {
    pub corner: (String, String),
    pub squares: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub ok: bool,
    pub covered: usize,
    pub expected: usize,
    pub missing_corners: Vec<(String, String)>,
    pub duplicate_corners: Vec<DuplicateCorner>,
}

impl SquareComplex {
    /// Builds a complex with default generator names `a1..am`, `b1..bn`.
    pub fn new(
        name: impl Into<String>,
        m: u32,
        n: u32,
        squares: impl IntoIterator<Item = Square>,
    ) -> Self {
        SquareComplex {
            name: name.into(),
            horizontal_names: (1..=m).map(|i| format!("a{i}")).collect(),
            vertical_names: (1..=n).map(|j| format!("b{j}")).collect(),
            squares: squares.into_iter().collect(),
        }
    }

    pub fn m(&self) -> u32 {
        self.horizontal_names.len() as u32
    }

    pub fn n(&self) -> u32 {
        self.vertical_names.len() as u32
    }

    pub fn side_size(&self, side: Side) -> u32 {
        match side {
            Side::Horizontal => self.m(),
            Side::Vertical => self.n(),
        }
    }

    /// All `2m` (or `2n`) letters of one side: positives first, then inverses.
    pub fn letters(&self, side: Side) -> Vec<Letter> {
        let k = self.side_size(side);
        (1..=k)
            .map(|i| Letter::new(side, i, false))
            .chain((1..=k).map(|i| Letter::new(side, i, true)))
            .collect()
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        let names = match letter.side {
            Side::Horizontal => &self.horizontal_names,
            Side::Vertical => &self.vertical_names,
        };
        let base = names
            .get(letter.index as usize - 1)
            .cloned()
            .unwrap_or_else(|| letter.to_string());
        if letter.inverted {
            format!("{base}^-1")
        } else {
            base
        }
    }

    pub fn square_text(&self, sq: &Square) -> String {
        sq.letters()
            .iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Map from corner pair to the forms opening with it.
    pub fn corner_table(&self) -> BTreeMap<(Letter, Letter), Vec<[Letter; 4]>> {
        let mut table: BTreeMap<(Letter, Letter), Vec<[Letter; 4]>> = BTreeMap::new();
        for sq in &self.squares {
            for form in sq.forms() {
                table.entry((form[0], form[1])).or_default().push(form);
            }
        }
        table
    }

    /// Exact-cover check of the `2m x 2n` corner pairs.
    pub fn check_link(&self) -> LinkReport {
        let mut owners: BTreeMap<(Letter, Letter), Vec<Square>> = BTreeMap::new();
        for sq in &self.squares {
            for corner in sq.corners() {
                owners.entry(corner).or_default().push(*sq);
            }
        }
        let mut missing = Vec::new();
        let mut covered = 0;
        for a in self.letters(Side::Horizontal) {
            for b in self.letters(Side::Vertical) {
                match owners.get(&(a, b)) {
                    Some(_) => covered += 1,
                    None => missing.push((self.letter_name(a), self.letter_name(b))),
                }
            }
        }
        let duplicates: Vec<DuplicateCorner> = owners
            .iter()
            .filter(|(_, sqs)| sqs.len() > 1)
            .map(|(&(a, b), sqs)| DuplicateCorner {
                corner: (self.letter_name(a), self.letter_name(b)),
                squares: sqs.iter().map(|s| self.square_text(s)).collect(),
            })
            .collect();
        let expected = 4 * self.m() as usize * self.n() as usize;
        LinkReport {
            ok: missing.is_empty() && duplicates.is_empty(),
            covered,
            expected,
            missing_corners: missing,
            duplicate_corners: duplicates,
        }
    }

    /// `1 - (m + n) + mn`: one vertex, `m + n` edges, `mn` squares.
    pub fn euler_characteristic(&self) -> i64 {
        let (m, n) = (self.m() as i64, self.n() as i64);
        1 - (m + n) + m * n
    }

    /// The full subcomplex on the given inversion-closed letter subsets.
    pub fn check_subcomplex(
        &self,
        horizontal: &[Letter],
        vertical: &[Letter],
    ) -> Result<SubcomplexCheck, ComplexError> {
        let hset = self.closed_subset(horizontal, Side::Horizontal)?;
        let vset = self.closed_subset(vertical, Side::Vertical)?;
        // old base index -> new base index, in increasing order
        let renumber = |set: &BTreeSet<Letter>| -> BTreeMap<u32, u32> {
            let bases: BTreeSet<u32> = set.iter().map(|l| l.index).collect();
            bases.into_iter().zip(1..).collect()
        };
        let hmap = renumber(&hset);
        let vmap = renumber(&vset);
        let relabel = |l: Letter| -> Letter {
            let map = if l.is_horizontal() { &hmap } else { &vmap };
            Letter { index: map[&l.index], ..l }
        };
        let inside = |l: Letter| hset.contains(&l) || vset.contains(&l);

        let mut squares = BTreeSet::new();
        for sq in &self.squares {
            if sq.letters().iter().all(|&l| inside(l)) {
                let [a, b, a2, b2] = sq.letters().map(relabel);
                squares.insert(canonical_square(a, b, a2, b2)?);
            }
        }
        let names = |map: &BTreeMap<u32, u32>, all: &[String]| -> Vec<String> {
            map.keys().map(|&i| all[i as usize - 1].clone()).collect()
        };
        let sub = SquareComplex {
            name: format!("{}_sub", self.name),
            horizontal_names: names(&hmap, &self.horizontal_names),
            vertical_names: names(&vmap, &self.vertical_names),
            squares,
        };
        let link = sub.check_link();
        Ok(SubcomplexCheck { ok: link.ok, link, sub })
    }

    fn closed_subset(&self, letters: &[Letter], side: Side) -> Result<BTreeSet<Letter>, ComplexError> {
        if letters.is_empty() {
            return Err(ComplexError::EmptySubset);
        }
        let set: BTreeSet<Letter> = letters.iter().copied().collect();
        let size = self.side_size(side);
        for &l in &set {
            if l.side != side {
                return Err(ComplexError::WrongSide {
                    position: 0,
                    expected: side,
                    found: l,
                });
            }
            if l.index == 0 || l.index > size {
                return Err(ComplexError::OutOfRange { letter: l, size });
            }
            if !set.contains(&l.inv()) {
                return Err(ComplexError::NotInversionClosed(l));
            }
        }
        Ok(set)
    }

    /// Canonical text rendering in the `.vh` file format.
    pub fn render(&self) -> String {
        let mut out = format!("complex {}\n", self.name);
        out.push_str(&format!("horizontal {}\n", self.horizontal_names.join(" ")));
        out.push_str(&format!("vertical {}\n", self.vertical_names.join(" ")));
        for sq in &self.squares {
            out.push_str(&format!("square {}\n", self.square_text(sq)));
        }
        out
    }
}

/// Both letters of each base index in `indices`.
pub fn closed_letters(side: Side, indices: impl IntoIterator<Item = u32>) -> Vec<Letter> {
    indices
        .into_iter()
        .flat_map(|i| [Letter::new(side, i, false), Letter::new(side, i, true)])
        .collect()
}

#[derive(Clone, Debug)]
pub struct SubcomplexCheck {
    pub ok: bool,
    pub link: LinkReport,
    pub sub: SquareComplex,
}
