//! Geometric satisfiability toolkit for k-QSAT.
//!
//! The crate is organized around three layers:
//!
//! * [`subspace`] implements an exact-rational "relative dimension" algebra on
//!   subspaces of a finite-dimensional complex space. Relative dimension plays
//!   the role of a probability measure: conditioning, independence, chain and
//!   inclusion/exclusion rules all have subspace analogues, and every rank
//!   decision is made once (by thresholding a Hermitian spectrum) so the
//!   reported ratios are exact integer fractions.
//! * [`qsat`] models k-local projector instances on qubit registers together
//!   with a desk-scale brute-force oracle: the satisfying subspace is the
//!   kernel of the projector sum, so its dimension and explicit satisfying
//!   states can be computed exactly for small registers.
//! * [`lll`], [`ensembles`], and [`decompose`] provide satisfiability
//!   certificates that scale beyond brute force: Lovasz-style degree
//!   criteria, random hypergraph ensembles, and the matching-plus-decomposition
//!   pipeline for dense random instances. The certificate checkers are exposed
//!   behind the [`registry::StrategyRegistry`] so callers select them by name.
//!
//! Everything downstream of a random seed is deterministic: sampling goes
//! through a counter-based generator ([`rng`]), and serialized artifacts
//! round-trip bit-exactly.

pub mod bits;
pub mod certificate;
pub mod decompose;
pub mod ensembles;
pub mod lll;
pub mod qsat;
pub mod registry;
pub mod rng;
pub mod subspace;
pub mod tolerance;

mod rational;

pub use certificate::{CertKind, Certificate, Verdict, Witness};
pub use rational::{rational_approx, rational_from_f64, rational_to_string, Rational};
pub use tolerance::ToleranceConfig;

/// Crate-wide error type; each module contributes its own variant group.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Subspace(#[from] subspace::SubspaceError),
    #[error(transparent)]
    Qsat(#[from] qsat::QsatError),
    #[error(transparent)]
    Cnf(#[from] lll::CnfError),
    #[error(transparent)]
    Lll(#[from] lll::LllError),
    #[error(transparent)]
    Ensemble(#[from] ensembles::EnsembleError),
    #[error(transparent)]
    Decompose(#[from] decompose::DecomposeError),
    #[error("unknown certificate mode `{0}`")]
    UnknownMode(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
