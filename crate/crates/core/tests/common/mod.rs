#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use vhcx::fp::{IntMatrix, Presentation, SmithForm, Word};
use vhcx::perm::Permutation;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

/// Order of the group generated by `gens`, by breadth-first closure.
pub fn brute_order(degree: usize, gens: &[Permutation]) -> usize {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&p| g.images()[p as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

pub fn random_perm(rng: &mut impl Rng, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for i in (1..degree).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

/// Image of `w` when generator `g` acts by `perms[g]`, letters applied
/// left to right.
pub fn evaluate(w: &Word, perms: &[Permutation]) -> Permutation {
    let d = perms[0].degree();
    w.letters().iter().fold(Permutation::identity(d), |acc, l| {
        let p = &perms[l.generator()];
        acc.mul(&if l.is_inverse() { p.inverse() } else { p.clone() })
    })
}

/// Finite groups of order at most 24, each with a faithful permutation
/// representation satisfying its relators.
type Entry = (&'static str, &'static [&'static str], &'static [&'static str], usize, &'static [&'static str]);

pub fn small_groups() -> Vec<(&'static str, Presentation, Vec<Permutation>)> {
    let table: &[Entry] = &[
        ("trivial", &["x"], &["x"], 1, &["()"]),
        ("Z5", &["x"], &["x^5"], 5, &["(1,2,3,4,5)"]),
        ("Z2xZ2", &["x", "y"], &["x^2", "y^2", "x*y*x^-1*y^-1"], 4, &["(1,2)", "(3,4)"]),
        ("S3", &["x", "y"], &["x^2", "y^3", "x*y*x*y"], 3, &["(1,2)", "(1,2,3)"]),
        ("Z6", &["x", "y"], &["x^2", "y^3", "x*y*x^-1*y^-1"], 5, &["(1,2)", "(3,4,5)"]),
        ("D4", &["r", "s"], &["r^4", "s^2", "s*r*s*r"], 4, &["(1,2,3,4)", "(1,3)"]),
        ("Q8", &["i", "j"], &["i^4", "i^2*j^-2", "j^-1*i*j*i"], 8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]),
        ("Z3xZ3", &["x", "y"], &["x^3", "y^3", "x*y*x^-1*y^-1"], 6, &["(1,2,3)", "(4,5,6)"]),
        ("A4", &["x", "y"], &["x^2", "y^3", "x*y*x*y*x*y"], 4, &["(1,2)(3,4)", "(1,2,3)"]),
        ("D6", &["r", "s"], &["r^6", "s^2", "s*r*s*r"], 6, &["(1,2,3,4,5,6)", "(2,6)(3,5)"]),
        ("S4", &["x", "y"], &["x^2", "y^3", "x*y*x*y*x*y*x*y"], 4, &["(1,2)", "(2,3,4)"]),
    ];
    table
        .iter()
        .map(|&(name, gens, rels, degree, perms)| {
            let p = Presentation::parse(gens, rels).unwrap();
            let perms = perms.iter().map(|c| Permutation::parse_cycles(c, degree).unwrap()).collect();
            (name, p, perms)
        })
        .collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-range..=range)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

/// `M = left * D * right`, unimodular transforms, non-negative diagonal
/// with each entry dividing the next.
pub fn check_smith(m: &IntMatrix, form: &SmithForm) -> Result<(), String> {
    let (left, right) = match (&form.left, &form.right) {
        (Some(l), Some(r)) => (l, r),
        _ => return Err("transforms not tracked".into()),
    };
    let d = form.diagonal_matrix(m.rows(), m.cols());
    if &left.mul(&d).mul(right) != m {
        return Err("left * D * right != M".into());
    }
    for t in [left, right] {
        if t.determinant().abs() != BigInt::from(1) {
            return Err("transform is not unimodular".into());
        }
    }
    for pair in form.diagonal.windows(2) {
        if pair[0].is_negative() || (!pair[0].is_zero() && !pair[1].is_multiple_of(&pair[0])) || (pair[0].is_zero() && !pair[1].is_zero()) {
            return Err(format!("divisibility fails at {:?}", pair));
        }
    }
    if form.diagonal.iter().any(|x| x.is_negative()) {
        return Err("negative invariant".into());
    }
    Ok(())
}

/// Greatest common divisor of all `k x k` minors, computed by Laplace
/// expansion.
pub fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    fn det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
        if rows.len() == 1 {
            return m[(rows[0], cols[0])].clone();
        }
        let mut acc = BigInt::zero();
        for (j, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[(rows[0], c)] * det(m, &rows[1..], &rest);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            g = g.gcd(&det(m, &rows, &cols));
        }
    }
    g
}
