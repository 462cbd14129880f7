//! Exact computational engine for quantum Schubert calculus on adjoint and
//! coadjoint rational homogeneous spaces.
//!
//! Everything is computed in exact integer or rational arithmetic; no floats
//! are used anywhere. The crate is organised bottom-up:
//!
//! - [`lie`] — root systems of types A–G in Bourbaki numbering, weights,
//!   Weyl-group elements acting on weight and root coordinates;
//! - [`schubert`] — minimal coset representatives, Schubert classes of
//!   (co)adjoint spaces and their root labels, Bruhat order, Poincaré
//!   duality, minuscule-element tests;
//! - [`qchev`] — the quantum Chevalley formula on quantum monomials, the
//!   hyperplane multiplication matrix over `Z[q]`, degrees of classes and
//!   products, length identities, affine diagram symmetries, Hasse windows;
//! - [`curves`] — the rational-curve cascade (orthogonal root sequences),
//!   degree bounds, and enumeration of chains of `T`-invariant curves;
//! - [`poly`] — sparse multivariate polynomials over `Q`, exact rational
//!   matrices, and univariate real-root certification by Sturm sequences;
//! - [`presentations`] — a catalog of quantum cohomology ring presentations,
//!   graded-dimension verification, multiplication operators, Schubert bases,
//!   semisimplicity certificates;
//! - [`localization`] — equivariant restriction of Schubert classes,
//!   cup-product structure constants, and degree-one curve corrections.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in companion crates.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod curves;
pub mod lie;
pub mod localization;
pub mod poly;
pub mod presentations;
pub mod qchev;
pub mod schubert;

use alloc::string::String;

/// Errors reported by the engine.
///
/// Every operation that can be asked a malformed or out-of-scope question
/// fails loudly with one of these variants instead of guessing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A rank or node index outside the chosen series.
    InvalidRank { series: &'static str, rank: usize },
    /// A simple-root index outside `1..=rank`.
    InvalidNode { node: usize, rank: usize },
    /// The requested space is not adjoint or coadjoint, but the operation
    /// only makes sense for those flavors.
    NotCoadjointLike(String),
    /// A word is not a reduced expression, or not a minimal coset
    /// representative, where one is required.
    NotMinimal(String),
    /// A root or weight outside the expected set (e.g. a label that is not
    /// in the orbit defining the space).
    NotALabel(String),
    /// The operation is defined but intentionally unsupported in this
    /// configuration (documented capacity or scope limit).
    Unsupported(String),
    /// An internal cross-check failed; carries a description of the
    /// violated invariant. Any occurrence is a bug or a falsified claim.
    CheckFailed(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::InvalidRank { series, rank } => {
                write!(f, "invalid rank {rank} for series {series}")
            }
            Error::InvalidNode { node, rank } => {
                write!(f, "invalid simple-root index {node} (rank {rank})")
            }
            Error::NotCoadjointLike(s) => write!(f, "not an adjoint/coadjoint operation: {s}"),
            Error::NotMinimal(s) => write!(f, "not reduced/minimal: {s}"),
            Error::NotALabel(s) => write!(f, "not a valid label: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported configuration: {s}"),
            Error::CheckFailed(s) => write!(f, "internal check failed: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
