//! Dense permutations on `0..degree`, printed 1-based in cycle notation.
//!
//! Products act on the right: `p.mul(&q)` applies `p` first, then `q`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array is not a bijection on 1..{0}")]
    NotBijective(usize),
    #[error("cycle notation: {0}")]
    Cycle(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            let x = x as usize;
            if x >= d || seen[x] {
                return Err(PermError::NotBijective(d));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// From 1-based images, as printed in the external format.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        let zero: Option<Vec<u32>> = images
            .iter()
            .map(|&x| x.checked_sub(1).map(|v| v as u32))
            .collect();
        zero.ok_or(PermError::NotBijective(images.len()))
            .and_then(Self::from_images)
    }

    /// From 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::Cycle(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if touched[x] {
                    return Err(PermError::Cycle(format!("point {} repeated", x + 1)));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses `(1,2)(4,5)(6,8,7)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .ok_or_else(|| PermError::Cycle(format!("unclosed cycle in `{text}`")))?;
            let body = rest[..body_end]
                .strip_prefix('(')
                .ok_or_else(|| PermError::Cycle(format!("expected `(` in `{text}`")))?;
            let body = body.trim();
            if !body.is_empty() {
                let points = body
                    .split(',')
                    .map(|t| match t.trim().parse::<usize>() {
                        Ok(p) if p >= 1 => Ok(p - 1),
                        _ => Err(PermError::Cycle(format!("bad point `{}`", t.trim()))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(points);
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).filter(|&i| self.apply(i) != i)
    }

    /// Relabels the points: the result maps `relabel(i)` to `relabel(self(i))`.
    pub fn relabel(&self, relabel: &Permutation) -> Self {
        self.conjugate_by(relabel)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
