//! Exact computational homological algebra for a two-parameter family of
//! graded algebras and the finite categories they generate.
//!
//! The library constructs, over the rationals or a prime field:
//!
//! * the free DG Hopf algebra `R` on odd generators and its truncation
//!   quotient `Q` with a central even generator ([`dga`]),
//! * the A-infinity algebras `A` and `B` carried by their homology, their
//!   two-generator modules, Stasheff-identity checking, and homotopy
//!   transfer ([`ainfty`]),
//! * bigraded Ext tables over `H(B)` via 2-periodic matrix-factorization
//!   resolutions, with localization at the periodicity operator and
//!   endomorphism-ring reports ([`extcalc`]),
//! * the finite stable translation quiver with its mesh category, plus an
//!   independent orbit-category oracle built from interval representations
//!   of a linear quiver ([`arquiver`]),
//! * parameter derivations for group-theoretic, Brauer-tree, and Hecke
//!   families ([`apps`]).
//!
//! Everything is exact: scalars are rationals or prime-field elements, and
//! all dimension counts come from integer Gaussian elimination ([`matrix`]).

pub mod ainfty;
pub mod apps;
pub mod arquiver;
pub mod dga;
pub mod extcalc;
pub mod field;
pub mod matrix;
pub mod params;

pub use field::{FieldSpec, Scalar};
pub use matrix::SparseMatrix;
pub use params::{BiDegree, ParamSet};

use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("maps do not compose to zero: {0}")]
    NotAComplex(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("no translation-quiver isomorphism found: {0}")]
    QuiverMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
