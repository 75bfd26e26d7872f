//! Todd–Coxeter coset enumeration.
//!
//! Two strategies share one table: HLT (relator-based definitions, with a
//! lookahead pass when the table fills up) and Felsch (definitions in
//! table order, every deduction scanned against all relator conjugates).
//! Coincidences are resolved through a forwarding array with path
//! compression and an explicit queue of dead cosets.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::fp::{abelian_invariants_of_matrix, AbelianInvariants, FreeLetter, IntMatrix, Presentation, Word};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const DEFAULT_COSET_CAP: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// HLT with lookahead.
    #[default]
    Hlt,
    Felsch,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub cap: usize,
    pub strategy: Strategy,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_COSET_CAP,
            strategy: Strategy::Hlt,
        }
    }
}

impl EnumOptions {
    pub fn with_cap(cap: usize) -> Self {
        EnumOptions {
            cap,
            ..Default::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    /// Ran out of table space. Says nothing about finiteness.
    #[error("coset enumeration exhausted its cap of {cap} cosets")]
    Exhausted { cap: usize },
    #[error("coset cap must be at least 1")]
    ZeroCap,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table row {row} column {column} is undefined or out of range")]
    Incomplete { row: usize, column: usize },
    #[error("column {column} is not inverse to column {inverse}")]
    InverseMismatch { column: usize, inverse: usize },
    #[error("the subgroup is not normal: cosets do not form a group")]
    NotNormal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumStats {
    pub strategy: Strategy,
    pub max_live: usize,
    pub total_defined: usize,
}

/// A closed, standardized coset table. Coset 0 is the subgroup; columns are
/// `2g` for generator `g` and `2g + 1` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<Vec<u32>>,
    pub stats: EnumStats,
}

impl CosetTable {
    /// From explicit rows; validated, then standardized.
    pub fn from_rows(columns: usize, rows: Vec<Vec<u32>>) -> Result<Self, TableError> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v as usize >= n || row.len() != columns {
                    return Err(TableError::Incomplete { row: r, column: c });
                }
                if rows[v as usize][c ^ 1] as usize != r {
                    return Err(TableError::InverseMismatch {
                        column: c,
                        inverse: c ^ 1,
                    });
                }
            }
        }
        let mut t = CosetTable {
            columns,
            rows,
            stats: EnumStats::default(),
        };
        t.standardize();
        Ok(t)
    }

    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn image(&self, coset: usize, letter: FreeLetter) -> usize {
        self.rows[coset][letter.code()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// Action of each generator on the cosets.
    pub fn generator_permutations(&self) -> Vec<Permutation> {
        (0..self.generator_count())
            .map(|g| {
                Permutation::from_images(self.rows.iter().map(|r| r[2 * g]).collect())
                    .expect("closed table columns are bijections")
            })
            .collect()
    }

    /// Breadth-first renumbering from coset 0, scanning columns in order.
    fn standardize(&mut self) {
        let n = self.rows.len();
        let mut new_of = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        new_of[0] = 0;
        order.push(0usize);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for x in 0..self.columns {
                let d = self.rows[c][x] as usize;
                if new_of[d] == UNDEF {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        // cosets unreachable from 0 cannot occur in a closed table
        debug_assert_eq!(order.len(), n);
        self.rows = order
            .iter()
            .map(|&old| self.rows[old].iter().map(|&v| new_of[v as usize]).collect())
            .collect();
    }

    /// Representative words along the breadth-first spanning tree: the
    /// representative of a coset first reached from `c` via column `x` is
    /// `rep(c) x`.
    pub fn transversal(&self) -> Vec<Word> {
        let n = self.index();
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..self.columns {
                let d = self.rows[c][x] as usize;
                if reps[d].is_none() {
                    let w = reps[c]
                        .as_ref()
                        .expect("visited")
                        .mul(&Word::new([FreeLetter::from_code(x)]));
                    reps[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        reps.into_iter().map(|w| w.expect("connected")).collect()
    }

    /// Every relator closes at every coset; every subgroup generator fixes 0.
    pub fn is_closed_for(&self, p: &Presentation, subgens: &[Word]) -> bool {
        (0..self.index()).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
            && subgens.iter().all(|w| self.trace(0, w) == 0)
    }

    /// Tab-separated dump: one row per coset, 1-based.
    pub fn to_tsv(&self, names: &[String]) -> String {
        let mut out = String::from("coset");
        for name in names {
            out.push_str(&format!("\t{name}\t{name}^-1"));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&(i + 1).to_string());
            for v in row {
                out.push_str(&format!("\t{}", v + 1));
            }
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "index": self.index(),
            "strategy": self.stats.strategy,
            "max_live": self.stats.max_live,
            "total_defined": self.stats.total_defined,
        })
    }
}

struct Enumerator {
    columns: usize,
    cap: usize,
    strategy: Strategy,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    stats: EnumStats,
    queue: Vec<u32>,
    deductions: Vec<(u32, usize)>,
    relators: Vec<Vec<usize>>,
    /// For each column, relator conjugates beginning with it.
    conjugates: Vec<Vec<Vec<usize>>>,
}

struct Full;

impl Enumerator {
    fn new(p: &Presentation, opts: EnumOptions) -> Self {
        let columns = 2 * p.generator_count();
        let relators: Vec<Vec<usize>> = p
            .relators
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.letters().iter().map(|l| l.code()).collect())
            .collect();
        let mut conjugates = vec![Vec::new(); columns];
        if opts.strategy == Strategy::Felsch {
            for r in &relators {
                for k in 0..r.len() {
                    let mut rot = r.clone();
                    rot.rotate_left(k);
                    if !conjugates[rot[0]].contains(&rot) {
                        conjugates[rot[0]].push(rot);
                    }
                }
            }
        }
        Enumerator {
            columns,
            cap: opts.cap,
            strategy: opts.strategy,
            table: Vec::new(),
            forward: Vec::new(),
            live: 0,
            stats: EnumStats {
                strategy: opts.strategy,
                ..Default::default()
            },
            queue: Vec::new(),
            deductions: Vec::new(),
            relators,
            conjugates,
        }
    }

    fn rows(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.columns + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.columns + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32, Full> {
        if self.rows() >= self.cap {
            return Err(Full);
        }
        let c = self.rows() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.columns));
        self.forward.push(c);
        self.live += 1;
        self.stats.total_defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        Ok(c)
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Full> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        if self.strategy == Strategy::Felsch {
            self.deductions.push((c, x));
        }
        Ok(d)
    }

    fn deduce(&mut self, c: u32, x: usize, d: u32) {
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        if self.strategy == Strategy::Felsch {
            self.deductions.push((c, x));
        }
    }

    fn find(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        while self.forward[c as usize] != root {
            let next = self.forward[c as usize];
            self.forward[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.forward[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let e = self.queue[qi];
            qi += 1;
            for x in 0..self.columns {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let e1 = self.find(e);
                let f1 = self.find(f);
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                    continue;
                }
                let fx = self.get(f1, x ^ 1);
                if fx != UNDEF {
                    self.merge(e1, fx);
                    continue;
                }
                self.deduce(e1, x, f1);
            }
        }
        self.queue.clear();
    }

    /// Scans `word` from `c`, deducing on a single gap and resolving
    /// coincidences. With `fill`, gaps are bridged by new definitions.
    fn scan(&mut self, c: u32, word: &[usize], fill: bool) -> Result<(), Full> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, word[j as usize] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.deduce(f, word[i], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn scan_relators(&mut self, c: u32, fill: bool) -> Result<(), Full> {
        for r in 0..self.relators.len() {
            if !self.is_live(c) {
                break;
            }
            let word = std::mem::take(&mut self.relators[r]);
            let res = self.scan(c, &word, fill);
            self.relators[r] = word;
            res?;
        }
        Ok(())
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let conj = std::mem::take(&mut self.conjugates[x]);
            for w in &conj {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, w, false);
            }
            self.conjugates[x] = conj;
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == UNDEF || !self.is_live(d) {
                continue;
            }
            let conj = std::mem::take(&mut self.conjugates[x ^ 1]);
            for w in &conj {
                if !self.is_live(d) {
                    break;
                }
                let _ = self.scan(d, w, false);
            }
            self.conjugates[x ^ 1] = conj;
        }
    }

    /// Renumbers live cosets to `0..live` preserving order; returns the new
    /// position of `c` (or of the first live coset after it).
    fn compact(&mut self, c: u32) -> u32 {
        let n = self.rows();
        let mut new_of = vec![UNDEF; n];
        let mut next = 0u32;
        let mut pos = None;
        for old in 0..n as u32 {
            if old >= c && pos.is_none() {
                pos = Some(next);
            }
            if self.is_live(old) {
                new_of[old as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.columns);
        for old in 0..n as u32 {
            if !self.is_live(old) {
                continue;
            }
            for x in 0..self.columns {
                let v = self.get(old, x);
                table.push(if v == UNDEF { UNDEF } else { new_of[v as usize] });
            }
        }
        self.table = table;
        self.forward = (0..next).collect();
        self.deductions.retain(|(c, _)| new_of[*c as usize] != UNDEF);
        for (c, _) in self.deductions.iter_mut() {
            *c = new_of[*c as usize];
        }
        pos.unwrap_or(next)
    }

    fn lookahead(&mut self) {
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            if self.is_live(c) {
                let _ = self.scan_relators(c, false);
            }
            c += 1;
        }
    }

    fn run(&mut self, subgens: &[Vec<usize>]) -> Result<(), EnumError> {
        let exhausted = EnumError::Exhausted { cap: self.cap };
        self.new_coset().map_err(|_| exhausted.clone())?;
        for w in subgens {
            if self.scan(0, w, true).is_err() {
                return Err(exhausted);
            }
        }
        match self.strategy {
            Strategy::Hlt => self.run_hlt(),
            Strategy::Felsch => self.run_felsch(),
        }
    }

    fn run_hlt(&mut self) -> Result<(), EnumError> {
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            let step = self.scan_relators(c, true).and_then(|_| {
                for x in 0..self.columns {
                    if !self.is_live(c) {
                        break;
                    }
                    if self.get(c, x) == UNDEF {
                        self.define(c, x)?;
                    }
                }
                Ok(())
            });
            match step {
                Ok(()) => c += 1,
                Err(Full) => {
                    self.lookahead();
                    c = self.compact(c);
                    if self.rows() >= self.cap {
                        return Err(EnumError::Exhausted { cap: self.cap });
                    }
                }
            }
        }
        Ok(())
    }

    fn run_felsch(&mut self) -> Result<(), EnumError> {
        self.process_deductions();
        let mut c = 0u32;
        loop {
            while (c as usize) < self.rows() && (!self.is_live(c) || self.row_complete(c)) {
                c += 1;
            }
            if c as usize >= self.rows() {
                return Ok(());
            }
            let x = (0..self.columns)
                .find(|&x| self.get(c, x) == UNDEF)
                .expect("incomplete row");
            if self.define(c, x).is_err() {
                c = self.compact(c);
                if self.rows() >= self.cap {
                    return Err(EnumError::Exhausted { cap: self.cap });
                }
                continue;
            }
            self.process_deductions();
        }
    }

    fn row_complete(&self, c: u32) -> bool {
        (0..self.columns).all(|x| self.get(c, x) != UNDEF)
    }

    fn into_table(mut self) -> CosetTable {
        self.compact(0);
        let n = self.rows();
        let rows = (0..n)
            .map(|c| self.table[c * self.columns..(c + 1) * self.columns].to_vec())
            .collect();
        let mut t = CosetTable {
            columns: self.columns,
            rows,
            stats: self.stats,
        };
        t.standardize();
        t
    }
}

/// Enumerates the cosets of `<subgens>` in the group presented by `p`.
pub fn enumerate(
    p: &Presentation,
    subgens: &[Word],
    opts: EnumOptions,
) -> Result<CosetTable, EnumError> {
    if opts.cap == 0 {
        return Err(EnumError::ZeroCap);
    }
    let mut e = Enumerator::new(p, opts);
    let subs: Vec<Vec<usize>> = subgens
        .iter()
        .map(|w| w.letters().iter().map(|l| l.code()).collect())
        .collect();
    e.run(&subs)?;
    let table = e.into_table();
    debug_assert!(table.is_closed_for(p, subgens));
    Ok(table)
}

/// Index of the normal closure of `w`: the order of `p` with `w` added as a
/// relator.
pub fn normal_closure_index(
    p: &Presentation,
    w: &Word,
    opts: EnumOptions,
) -> Result<usize, EnumError> {
    enumerate(&p.with_relator(w.clone()), &[], opts).map(|t| t.index())
}

/// The group of cosets of a normal subgroup.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pub order: usize,
    pub representatives: Vec<Word>,
    /// `multiplication[i][j]` is the coset of `rep_i * rep_j`.
    pub multiplication: Vec<Vec<usize>>,
    pub abelian: bool,
    pub invariants: Option<AbelianInvariants>,
}

impl FiniteQuotient {
    /// Identity, inverses, and associativity (exhaustive up to order 32,
    /// otherwise on a deterministic sample of triples).
    pub fn satisfies_group_axioms(&self) -> bool {
        let n = self.order;
        let m = &self.multiplication;
        let identity = (0..n).all(|i| m[0][i] == i && m[i][0] == i);
        let inverses = (0..n).all(|i| (0..n).any(|j| m[i][j] == 0 && m[j][i] == 0));
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= 32 {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            Box::new((0..4096usize).map(move |k| (k % n, (k * 7 + 3) % n, (k * 13 + 5) % n)))
        };
        let assoc = triples.into_iter().all(|(a, b, c)| m[m[a][b]][c] == m[a][m[b][c]]);
        identity && inverses && assoc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "abelian": self.abelian,
            "invariants": self.invariants,
        })
    }
}

/// Multiplication structure of `G / H` for a closed table of a normal
/// subgroup `H`.
pub fn quotient_structure(t: &CosetTable) -> Result<FiniteQuotient, TableError> {
    let n = t.index();
    let action = PermGroup::new(n, t.generator_permutations()).expect("uniform degree");
    // The action on cosets of H is regular exactly when H is normal.
    if action.order() != BigUint::from(n) {
        return Err(TableError::NotNormal);
    }
    let reps = t.transversal();
    let multiplication: Vec<Vec<usize>> = (0..n)
        .map(|i| reps.iter().map(|r| t.trace(i, r)).collect())
        .collect();
    let abelian = (0..n).all(|i| (0..i).all(|j| multiplication[i][j] == multiplication[j][i]));
    let invariants = abelian.then(|| abelian_invariants_of_table(t, &reps));
    Ok(FiniteQuotient {
        order: n,
        representatives: reps,
        multiplication,
        abelian,
        invariants,
    })
}

/// For an abelian quotient `Z^g / L`: each table edge `c --x_i--> d` gives the
/// lattice vector `v(c) + e_i - v(d)`, with `v` the exponent sums of the
/// coset representatives.
fn abelian_invariants_of_table(t: &CosetTable, reps: &[Word]) -> AbelianInvariants {
    let g = t.generator_count();
    let vecs: Vec<Vec<i64>> = reps.iter().map(|r| r.exponent_sums(g)).collect();
    let mut rows = Vec::with_capacity(t.index() * g);
    for c in 0..t.index() {
        for i in 0..g {
            let d = t.image(c, FreeLetter::new(i, false));
            let mut v: Vec<i64> = vecs[c].iter().zip(&vecs[d]).map(|(a, b)| a - b).collect();
            v[i] += 1;
            rows.push(v);
        }
    }
    let m = if rows.is_empty() {
        IntMatrix::zeros(0, g)
    } else {
        IntMatrix::from_rows(&rows)
    };
    abelian_invariants_of_matrix(&m, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(g: &[&str], r: &[&str]) -> Presentation {
        Presentation::parse(g, r).unwrap()
    }

    fn both(p: &Presentation, subgens: &[Word], cap: usize) -> Vec<Result<usize, EnumError>> {
        [Strategy::Hlt, Strategy::Felsch]
            .into_iter()
            .map(|strategy| enumerate(p, subgens, EnumOptions { cap, strategy }).map(|t| t.index()))
            .collect()
    }

    #[test]
    fn cyclic_of_order_two() {
        for r in both(&pres(&["x"], &["x^2"]), &[], 100) {
            assert_eq!(r, Ok(2));
        }
    }

    #[test]
    fn klein_four() {
        let p = pres(&["x", "y"], &["x^2", "y^2", "x*y*x*y"]);
        for r in both(&p, &[], 100) {
            assert_eq!(r, Ok(4));
        }
    }

    #[test]
    fn free_group_exhausts() {
        let p = pres(&["x", "y"], &["x"]);
        for r in both(&p, &[], 500) {
            assert_eq!(r, Err(EnumError::Exhausted { cap: 500 }));
        }
    }

    #[test]
    fn zero_cap() {
        let p = pres(&["x"], &["x^2"]);
        assert_eq!(
            enumerate(&p, &[], EnumOptions::with_cap(0)),
            Err(EnumError::ZeroCap)
        );
    }

    #[test]
    fn subgroup_index() {
        // S3 = <x, y | x^3, y^2, (xy)^2>, <y> has index 3
        let p = pres(&["x", "y"], &["x^3", "y^2", "x*y*x*y"]);
        let y = p.parse_word("y").unwrap();
        for r in both(&p, std::slice::from_ref(&y), 100) {
            assert_eq!(r, Ok(3));
        }
        let t = enumerate(&p, std::slice::from_ref(&y), EnumOptions::default()).unwrap();
        assert!(t.is_closed_for(&p, &[y]));
    }

    #[test]
    fn closure_of_identity_and_cyclic() {
        let p = pres(&["x"], &["x^3"]);
        assert_eq!(normal_closure_index(&p, &Word::identity(), EnumOptions::default()), Ok(3));
        let p = pres(&["x", "y"], &[]);
        let x = p.parse_word("x").unwrap();
        assert_eq!(
            normal_closure_index(&p, &x, EnumOptions::with_cap(1000)),
            Err(EnumError::Exhausted { cap: 1000 })
        );
    }

    #[test]
    fn quotients() {
        let p = pres(&["x"], &["x^6"]);
        let q = quotient_structure(&enumerate(&p, &[], EnumOptions::default()).unwrap()).unwrap();
        assert!(q.abelian);
        assert_eq!(q.invariants.unwrap().torsion_u64(), vec![6]);
        let p = pres(&["x", "y"], &["x^3", "y^2", "x*y*x*y"]);
        let q = quotient_structure(&enumerate(&p, &[], EnumOptions::default()).unwrap()).unwrap();
        assert_eq!(q.order, 6);
        assert!(!q.abelian);
        assert!(q.invariants.is_none());
        assert!(q.satisfies_group_axioms());
    }

    #[test]
    fn non_normal_subgroup_rejected() {
        let p = pres(&["x", "y"], &["x^3", "y^2", "x*y*x*y"]);
        let y = p.parse_word("y").unwrap();
        let t = enumerate(&p, &[y], EnumOptions::default()).unwrap();
        assert_eq!(quotient_structure(&t).unwrap_err(), TableError::NotNormal);
    }

    #[test]
    fn standardized_table_and_dump() {
        let p = pres(&["x", "y"], &["x^2", "y^2", "x*y*x*y"]);
        let t = enumerate(&p, &[], EnumOptions::default()).unwrap();
        assert_eq!(t.rows()[0], vec![1, 1, 2, 2]);
        let names = vec!["x".to_string(), "y".to_string()];
        let tsv = t.to_tsv(&names);
        assert!(tsv.starts_with("coset\tx\tx^-1\ty\ty^-1\n1\t2\t2\t3\t3\n"));
        let reps: Vec<String> = t.transversal().iter().map(|w| p.word_text(w)).collect();
        assert_eq!(reps, vec!["1", "x", "y", "x*y"]);
        assert_eq!(t.summary_json()["index"], 4);
    }

    #[test]
    fn from_rows_validates() {
        assert!(CosetTable::from_rows(2, vec![vec![1, 1], vec![0, 0]]).is_ok());
        assert!(CosetTable::from_rows(2, vec![vec![1, 0], vec![0, 1]]).is_err());
    }
}
