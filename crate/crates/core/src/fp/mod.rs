//! Finitely presented groups: words, presentations, the parity homomorphism
//! onto `Z/2 x Z/2`, and abelianization.

mod snf;
mod word;

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use word::{FreeLetter, Word, WordDisplay, WordError};

use crate::complex::{Side, SquareComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpError {
    #[error("generator `{0}` has no horizontal/vertical side")]
    MissingSide(String),
    #[error("relator `{0}` is not in the kernel of the parity map")]
    RelatorOutsideKernel(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Side of each generator, present for presentations read off a complex.
    pub sides: Option<Vec<Side>>,
}

impl Presentation {
    /// Relators are stored cyclically reduced.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation {
            generators,
            relators: relators.iter().map(Word::cyclically_reduced).collect(),
            sides: None,
        }
    }

    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, WordError> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation::new(names, rels))
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        Word::parse(text, &self.generators)
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    pub fn with_relator(&self, w: Word) -> Self {
        let mut p = self.clone();
        p.relators.push(w.cyclically_reduced());
        p
    }

    /// Rows are relators, columns generators.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let g = self.generator_count();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(g)).collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, g);
        }
        IntMatrix::from_rows(&rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| self.word_text(r)).collect::<Vec<_>>(),
            "total_length": self.total_length(),
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// `m + n` generators and one relator `a b a' b'` per square.
pub fn presentation_from_complex(c: &SquareComplex) -> Presentation {
    let m = c.m() as usize;
    let generators: Vec<String> = c
        .horizontal_names
        .iter()
        .chain(c.vertical_names.iter())
        .cloned()
        .collect();
    let column = |l: crate::complex::Letter| {
        let g = match l.side {
            Side::Horizontal => l.index as usize - 1,
            Side::Vertical => m + l.index as usize - 1,
        };
        FreeLetter::new(g, l.inverted)
    };
    let relators = c
        .squares
        .iter()
        .map(|sq| Word::new(sq.letters().map(column)))
        .collect();
    let mut p = Presentation::new(generators, relators);
    p.sides = Some(
        std::iter::repeat_n(Side::Horizontal, m)
            .chain(std::iter::repeat_n(Side::Vertical, c.n() as usize))
            .collect(),
    );
    p
}

/// The map sending horizontal generators to `(1,0)` and vertical ones to
/// `(0,1)` in `Z/2 x Z/2`; its kernel is the index-4 subgroup.
#[derive(Clone, Debug)]
pub struct ParityHom {
    sides: Vec<Side>,
}

impl ParityHom {
    pub fn image(&self, w: &Word) -> (u8, u8) {
        let (mut h, mut v) = (0u8, 0u8);
        for l in w.letters() {
            match self.sides[l.generator()] {
                Side::Horizontal => h ^= 1,
                Side::Vertical => v ^= 1,
            }
        }
        (h, v)
    }

    pub fn in_kernel(&self, w: &Word) -> bool {
        self.image(w) == (0, 0)
    }

    /// Image of a generator as a coset label `0..4` (`h + 2 v`).
    pub fn generator_image(&self, g: usize) -> usize {
        match self.sides[g] {
            Side::Horizontal => 1,
            Side::Vertical => 2,
        }
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }
}

/// Builds the parity map and checks that every relator lies in its kernel.
pub fn index4_hom(p: &Presentation) -> Result<ParityHom, FpError> {
    let sides = p
        .sides
        .clone()
        .ok_or_else(|| FpError::MissingSide(p.generators.first().cloned().unwrap_or_default()))?;
    if sides.len() != p.generator_count() {
        return Err(FpError::MissingSide(
            p.generators.get(sides.len()).cloned().unwrap_or_default(),
        ));
    }
    let hom = ParityHom { sides };
    if let Some(r) = p.relators.iter().find(|r| !hom.in_kernel(r)) {
        return Err(FpError::RelatorOutsideKernel(p.word_text(r)));
    }
    Ok(hom)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_biguints")]
    pub torsion: Vec<BigUint>,
}

fn serialize_biguints<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl AbelianInvariants {
    pub fn from_smith(form: &SmithForm, generators: usize) -> Self {
        AbelianInvariants {
            free_rank: generators - form.rank(),
            torsion: form
                .torsion()
                .into_iter()
                .map(|d| d.to_biguint().expect("positive"))
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|t| u64::try_from(t).unwrap_or(u64::MAX))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("trivial")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// Invariants of the abelian group presented by an integer relation matrix
/// on `generators` columns.
pub fn abelian_invariants_of_matrix(m: &IntMatrix, generators: usize) -> AbelianInvariants {
    AbelianInvariants::from_smith(&smith_normal_form(m, false), generators)
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    abelian_invariants_of_matrix(&p.exponent_matrix(), p.generator_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn complex_presentations() {
        let s = presentation_from_complex(&corpus::sigma());
        assert_eq!((s.generator_count(), s.relator_count()), (10, 24));
        let l = presentation_from_complex(&corpus::lambda());
        assert_eq!((l.generator_count(), l.relator_count()), (6, 9));
        let d = presentation_from_complex(&corpus::delta());
        assert_eq!((d.generator_count(), d.relator_count()), (7, 12));
    }

    #[test]
    fn parity_kernel() {
        let s = presentation_from_complex(&corpus::sigma());
        let hom = index4_hom(&s).unwrap();
        assert!(s.relators.iter().all(|r| hom.in_kernel(r)));
        let w = s.parse_word(corpus::DELTA_RESIDUAL_WORD).unwrap();
        assert!(hom.in_kernel(&w));
        assert!(!hom.in_kernel(&s.parse_word("a1").unwrap()));
        assert_eq!(hom.image(&s.parse_word("a1*b2").unwrap()), (1, 1));
    }

    #[test]
    fn parity_needs_sides() {
        let p = Presentation::parse(&["x"], &["x^2"]).unwrap();
        assert!(matches!(index4_hom(&p), Err(FpError::MissingSide(_))));
    }

    #[test]
    fn abelianizations() {
        let d = abelianization(&presentation_from_complex(&corpus::delta()));
        assert_eq!(d.free_rank, 3);
        assert!(d.torsion.is_empty());
        let s = abelianization(&presentation_from_complex(&corpus::sigma()));
        assert_eq!(s.free_rank, 0);
        assert_eq!(s.torsion_u64(), vec![2, 2]);
        let t = abelianization(&Presentation::parse(&["x"], &["x"]).unwrap());
        assert!(t.is_trivial());
        assert_eq!(t.to_string(), "trivial");
        assert_eq!(d.to_string(), "Z^3");
        assert_eq!(s.to_string(), "Z/2 x Z/2");
    }

    #[test]
    fn no_relators() {
        let p = Presentation::parse(&["x", "y"], &[]).unwrap();
        assert_eq!(abelianization(&p).free_rank, 2);
    }
}
