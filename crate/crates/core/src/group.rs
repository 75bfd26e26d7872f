//! Permutation groups with a base and strong generating set.
//!
//! The stabilizer chain is built by deterministic Schreier–Sims. Orbits are
//! extended in place so that transversal elements never change once chosen,
//! which lets each level remember which Schreier generators it has already
//! sifted.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::perm::{PermError, Permutation};

/// Default element bound for brute-force simplicity checks.
pub const DEFAULT_SIMPLICITY_BOUND: u64 = 100_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    // point -> index into `reps`
    slot: Vec<Option<u32>>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    // Schreier pairs (orbit index, generator index) below these marks are sifted.
    done_orbit: usize,
    done_gens: usize,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut slot = vec![None; degree];
        slot[base_point] = Some(0);
        Level {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            slot,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            done_orbit: 0,
            done_gens: 0,
        }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let point = self.orbit[i];
            let rep_idx = self.slot[point].expect("orbit point has a rep") as usize;
            for s in &self.generators {
                let image = s.apply(point);
                if self.slot[image].is_none() {
                    let rep = self.reps[rep_idx].mul(s);
                    self.slot[image] = Some(self.reps.len() as u32);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                    self.orbit.push(image);
                }
            }
            i += 1;
        }
    }

    fn rep(&self, point: usize) -> Option<&Permutation> {
        self.slot[point].map(|i| &self.reps[i as usize])
    }

    fn rep_inv(&self, point: usize) -> Option<&Permutation> {
        self.slot[point].map(|i| &self.reps_inv[i as usize])
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Deterministic Schreier–Sims with first-moved-point base selection.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// As [`PermGroup::new`], but the base starts with `prefix` (kept even
    /// where redundant).
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(g.degree(), degree));
            }
        }
        let mut group = PermGroup {
            degree,
            generators,
            levels: Vec::new(),
        };
        group.schreier_sims(prefix);
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    fn schreier_sims(&mut self, prefix: &[usize]) {
        let degree = self.degree;
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &self.generators {
            if base.iter().all(|&b| g.apply(b) == b) {
                if let Some(p) = g.moved_points().next() {
                    base.push(p);
                }
            }
        }
        self.levels = base.iter().map(|&b| Level::new(degree, b)).collect();
        for (i, level) in self.levels.iter_mut().enumerate() {
            level.generators = self
                .generators
                .iter()
                .filter(|g| !g.is_identity() && base[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            level.extend_orbit();
        }

        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_nonsifting(level) {
                Some((residue, depth)) => {
                    if depth == self.levels.len() {
                        let p = residue
                            .moved_points()
                            .next()
                            .expect("non-identity residue moves a point");
                        self.levels.push(Level::new(degree, p));
                    }
                    for l in level + 1..=depth {
                        self.levels[l].generators.push(residue.clone());
                        self.levels[l].extend_orbit();
                    }
                    i = depth + 1;
                }
                None => {
                    let lv = &mut self.levels[level];
                    lv.done_orbit = lv.orbit.len();
                    lv.done_gens = lv.generators.len();
                    i -= 1;
                }
            }
        }
    }

    /// First Schreier generator of `level` that does not sift through the
    /// levels below it.
    fn find_nonsifting(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for (oi, &point) in lv.orbit.iter().enumerate() {
            for (si, s) in lv.generators.iter().enumerate() {
                if oi < lv.done_orbit && si < lv.done_gens {
                    continue;
                }
                let image = s.apply(point);
                let u = lv.rep(point).expect("orbit point");
                let schreier = u.mul(s).mul(lv.rep_inv(image).expect("orbit closed"));
                if schreier.is_identity() {
                    continue;
                }
                let (residue, depth) = self.strip(schreier, level + 1);
                if !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        None
    }

    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let image = g.apply(level.base_point);
            match level.rep_inv(image) {
                Some(inv) => g = g.mul(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (residue, depth) = self.strip(g.clone(), 0);
            depth == self.levels.len() && residue.is_identity()
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, x)| {
            gens[i + 1..]
                .iter()
                .all(|y| x.mul(y) == y.mul(x))
        })
    }

    /// Stabilizer of `point`, read off a chain rebuilt with `point` first.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let rebased = PermGroup::with_base_prefix(self.degree, self.generators.clone(), &[point])
            .expect("same degree");
        let levels: Vec<Level> = rebased.levels[1..].to_vec();
        let generators = levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default();
        PermGroup {
            degree: self.degree,
            generators,
            levels,
        }
    }

    /// Transitivity on ordered `k`-tuples of distinct points, checked through
    /// the chain of point stabilizers of `0, 1, ..., k-1`.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if k > self.degree {
            return false;
        }
        let prefix: Vec<usize> = (0..k).collect();
        let rebased = PermGroup::with_base_prefix(self.degree, self.generators.clone(), &prefix)
            .expect("same degree");
        (0..k).all(|i| rebased.levels[i].orbit.len() == self.degree - i)
    }

    /// The action on the moved points, relabelled `0..s` in increasing order.
    pub fn on_support(&self) -> PermGroup {
        let mut moved = vec![false; self.degree];
        for g in &self.generators {
            for p in g.moved_points() {
                moved[p] = true;
            }
        }
        let support: Vec<usize> = (0..self.degree).filter(|&p| moved[p]).collect();
        if support.len() == self.degree {
            return self.clone();
        }
        let mut index = vec![u32::MAX; self.degree];
        for (i, &p) in support.iter().enumerate() {
            index[p] = i as u32;
        }
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| {
                Permutation::from_images_unchecked(
                    support.iter().map(|&p| index[g.apply(p)]).collect(),
                )
            })
            .collect();
        PermGroup::new(support.len(), gens).expect("same degree")
    }

    /// All elements, as products of transversal representatives.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for e in &out {
                for &p in &level.orbit {
                    next.push(e.mul(level.rep(p).expect("orbit point")));
                }
            }
            out = next;
        }
        out
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> PermGroup {
        let mut gens: Vec<Permutation> = elems.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut closure = PermGroup::new(self.degree, gens.clone()).expect("same degree");
        let mut queue: VecDeque<Permutation> = gens.iter().cloned().collect();
        while let Some(n) = queue.pop_front() {
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if !closure.contains(&c) {
                    gens.push(c.clone());
                    closure = PermGroup::new(self.degree, gens.clone()).expect("same degree");
                    queue.push_back(c);
                }
            }
        }
        closure
    }

    /// Relabels points by `relabel`.
    pub fn conjugate(&self, relabel: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.relabel(relabel)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Recognition {
    Alt { degree: usize },
    Sym { degree: usize },
    M11,
    M12,
    Other {
        #[serde(serialize_with = "crate::serialize_biguint")]
        order: BigUint,
    },
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognition::Alt { degree } => write!(f, "A{degree}"),
            Recognition::Sym { degree } => write!(f, "S{degree}"),
            Recognition::M11 => f.write_str("M11"),
            Recognition::M12 => f.write_str("M12"),
            Recognition::Other { order } => write!(f, "group of order {order}"),
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Identifies `S_d`, `A_d`, `M11` and `M12` in their natural actions, where
/// `d` is the number of moved points.
pub fn recognize(group: &PermGroup) -> Recognition {
    let order = group.order();
    let support = group.on_support();
    let d = support.degree();
    if d == 0 {
        return Recognition::Other { order };
    }
    let full = factorial(d);
    if order == full {
        return Recognition::Sym { degree: d };
    }
    if order == &full / 2u32 && group.generators().iter().all(|g| g.is_even()) {
        return Recognition::Alt { degree: d };
    }
    let small = order.to_u64();
    if d == 12 && small == Some(95_040) && support.is_k_transitive(5) {
        return Recognition::M12;
    }
    if d == 11 && small == Some(7_920) && support.is_k_transitive(4) {
        return Recognition::M11;
    }
    Recognition::Other { order }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteVerdict {
    Simple,
    NotSimple {
        witness: Permutation,
        closure_order: BigUint,
    },
    Unknown,
}

/// Enumerates the group and tests the normal closure of every conjugacy
/// class representative. `Unknown` when the order exceeds `bound`.
pub fn brute_simplicity(group: &PermGroup, bound: u64) -> BruteVerdict {
    let order = group.order();
    if order > BigUint::from(bound) {
        return BruteVerdict::Unknown;
    }
    let elements = group.elements();
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = &elements[members[i]];
            for g in group.generators() {
                let j = index[&x.conjugate_by(g)];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
            i += 1;
        }
        classes.push(members);
    }
    if order == BigUint::one() {
        return BruteVerdict::NotSimple {
            witness: Permutation::identity(group.degree()),
            closure_order: order,
        };
    }
    for class in &classes {
        let rep = &elements[class[0]];
        if rep.is_identity() {
            continue;
        }
        let mut gens = vec![rep.clone()];
        let mut closure = PermGroup::new(group.degree(), gens.clone()).expect("same degree");
        for &m in &class[1..] {
            if !closure.contains(&elements[m]) {
                gens.push(elements[m].clone());
                closure = PermGroup::new(group.degree(), gens.clone()).expect("same degree");
            }
        }
        if closure.order() < order {
            return BruteVerdict::NotSimple {
                witness: rep.clone(),
                closure_order: closure.order(),
            };
        }
    }
    BruteVerdict::Simple
}

/// How a simplicity verdict was reached; recognition carries the verdict
/// for groups too large to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Recognition,
    BruteForce,
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SimplicityVerdict {
    Simple {
        evidence: Evidence,
        recognized: Recognition,
    },
    NotSimple {
        evidence: Evidence,
        recognized: Recognition,
        witness: Option<String>,
    },
    Unknown {
        recognized: Recognition,
    },
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::Simple { .. })
    }
}

/// Non-abelian simplicity: `A_d` (d ≥ 5), `M11` and `M12` by recognition,
/// anything else by brute force up to `bound` elements.
pub fn nonabelian_simplicity(group: &PermGroup, bound: u64) -> SimplicityVerdict {
    let recognized = recognize(group);
    if group.is_abelian() {
        return SimplicityVerdict::NotSimple {
            evidence: Evidence::Abelian,
            recognized,
            witness: None,
        };
    }
    match recognized {
        Recognition::Alt { degree } if degree >= 5 => {
            return SimplicityVerdict::Simple {
                evidence: Evidence::Recognition,
                recognized,
            }
        }
        Recognition::M11 | Recognition::M12 => {
            return SimplicityVerdict::Simple {
                evidence: Evidence::Recognition,
                recognized,
            }
        }
        _ => {}
    }
    match brute_simplicity(group, bound) {
        BruteVerdict::Simple => SimplicityVerdict::Simple {
            evidence: Evidence::BruteForce,
            recognized,
        },
        BruteVerdict::NotSimple { witness, .. } => SimplicityVerdict::NotSimple {
            evidence: Evidence::BruteForce,
            recognized,
            witness: Some(witness.to_string()),
        },
        BruteVerdict::Unknown => SimplicityVerdict::Unknown { recognized },
    }
}

pub fn is_whitelisted_nonabelian_simple(group: &PermGroup, bound: u64) -> bool {
    nonabelian_simplicity(group, bound).is_simple()
}
