//! Smith normal form over the integers, exact.
//!
//! Elimination always pivots on the nonzero entry of least absolute value.
//! The transforms are maintained so that `M = left * D * right` holds after
//! every elementary operation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = &self[(src, k)] * c;
            if !v.is_zero() {
                self[(dst, k)] += v;
            }
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for k in 0..self.rows {
            let v = &self[(k, src)] * c;
            if !v.is_zero() {
                self[(k, dst)] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -&self[(i, k)];
            self[(i, k)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -&self[(k, j)];
            self[(k, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, nonnegative, zeros last; length
    /// `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

struct Elimination {
    d: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Elimination {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        if let Some(u) = &mut self.left {
            u.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        if let Some(v) = &mut self.right {
            v.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row(dst, src, c);
        if let Some(u) = &mut self.left {
            u.add_col(src, dst, &-c);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col(dst, src, c);
        if let Some(v) = &mut self.right {
            v.add_row(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some(u) = &mut self.left {
            u.negate_col(i);
        }
    }

    /// Position of the least nonzero |entry| in row `t` / column `t`
    /// restricted to the trailing block.
    fn best_pivot_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        let cells = (t..self.d.rows)
            .map(|i| (i, t))
            .chain((t + 1..self.d.cols).map(|j| (t, j)));
        for (i, j) in cells {
            let v = self.d[(i, j)].abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
        best.map(|(p, _)| p)
    }

    fn best_pivot_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows {
            for j in t..self.d.cols {
                let v = self.d[(i, j)].abs();
                if !v.is_zero() && best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(&mut self) {
        let n = self.d.rows.min(self.d.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.best_pivot_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if let Some((pi, pj)) = self.best_pivot_in_cross(t) {
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                }
                let pivot = self.d[(t, t)].clone();
                let mut residue = false;
                for i in t + 1..self.d.rows {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.d[(i, t)].div_floor(&pivot);
                    self.add_row(i, t, &-q);
                    residue |= !self.d[(i, t)].is_zero();
                }
                for j in t + 1..self.d.cols {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.d[(t, j)].div_floor(&pivot);
                    self.add_col(j, t, &-q);
                    residue |= !self.d[(t, j)].is_zero();
                }
                if residue {
                    continue;
                }
                // Cross is clear; enforce divisibility of the trailing block.
                let offender = (t + 1..self.d.rows).find(|&i| {
                    (t + 1..self.d.cols).any(|j| !self.d[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with `left`/`right` transforms when `track` is set.
pub fn smith_normal_form(m: &IntMatrix, track: bool) -> SmithForm {
    let mut e = Elimination {
        d: m.clone(),
        left: track.then(|| IntMatrix::identity(m.rows)),
        right: track.then(|| IntMatrix::identity(m.cols)),
    };
    e.run();
    let n = m.rows.min(m.cols);
    SmithForm {
        diagonal: (0..n).map(|i| e.d[(i, i)].clone()).collect(),
        left: e.left,
        right: e.right,
    }
}
