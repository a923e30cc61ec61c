//! Exact workbench for fundamental parallelepiped algebras of lattice simplices.
//!
//! The crate builds, for the simplex family `delta2(m)`, the finite-dimensional
//! graded algebra spanned by the lattice points of the fundamental
//! parallelepiped, resolves the residue field over it by two independent
//! engines (graded exact linear algebra in [`resolution`], and the explicit
//! leading-term construction in [`treebuilder`]), and compares the resulting
//! multigraded Betti data against the rational generating function produced by
//! the transfer-matrix machinery in [`series`].
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals, no
//! floating point anywhere.

pub mod fpa;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod resolution;
pub mod rng;
pub mod series;
pub mod treebuilder;

use std::fmt;

/// Crate-wide error type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A parameter was outside its documented domain.
    InvalidParameter(String),
    /// An index or label was outside its valid range.
    Range(String),
    /// A point is not in the cone; carries the first offending ray coordinate.
    NotInCone { coordinate: usize, detail: String },
    /// Operands belong to different ambient structures.
    Mismatch(String),
    /// An internal structural contract was violated (homogeneity, leading-term
    /// distinctness, lookup misses in the symbolic builder, ...).
    Contract(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::Range(s) => write!(f, "out of range: {s}"),
            Error::NotInCone { coordinate, detail } => {
                write!(f, "point not in cone (ray coordinate {coordinate}): {detail}")
            }
            Error::Mismatch(s) => write!(f, "mismatched operands: {s}"),
            Error::Contract(s) => write!(f, "contract violation: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
