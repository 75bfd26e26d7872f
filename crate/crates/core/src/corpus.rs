//! The three complexes shipped in `corpus/`.

use crate::complex::SquareComplex;
use crate::parse::parse_complex;

pub const LAMBDA: &str = include_str!("../../../corpus/lambda.vh");
pub const DELTA: &str = include_str!("../../../corpus/delta.vh");
pub const SIGMA: &str = include_str!("../../../corpus/sigma.vh");

/// The word `a2 a1^-1 a3 a4^-1` lying in the finite residual of `delta`.
pub const DELTA_RESIDUAL_WORD: &str = "a2*a1^-1*a3*a4^-1";

pub fn lambda() -> SquareComplex {
    parse_complex(LAMBDA).expect("corpus lambda.vh parses")
}

pub fn delta() -> SquareComplex {
    parse_complex(DELTA).expect("corpus delta.vh parses")
}

pub fn sigma() -> SquareComplex {
    parse_complex(SIGMA).expect("corpus sigma.vh parses")
}
