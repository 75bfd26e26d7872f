//! Verification toolkit for groups acting on products of two regular trees,
//! given as one-vertex VH square complexes.

pub mod certificates;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod coset;
pub mod fp;
pub mod group;
pub mod local;
pub mod parse;
pub mod perm;
pub mod rs;

use num_bigint::BigUint;

pub(crate) fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
