//! Galois-module invariants of `J(K) = K^×/K^×²` for a biquadratic `K/Q`.
//!
//! Every question is reduced to local Hilbert symbols and `F_2` linear algebra
//! on Brauer classes. Subspaces of `[Q^×] ⊆ J(K)` are computed inside a finite
//! support: the classes generated by `-1`, a user prime set `P` and the primes
//! of `a₁a₂`, taken modulo `⟨[a₁], [a₂]⟩`.

mod brauer;
mod norms;
mod report;
mod support;

pub use brauer::{
    classify_x, compute_s, diagram_solvable, embedding_solvable, phi, t_image,
    vanishing_conditions, CoefficientMatrix, EmbeddingOutcome, Epsilon, SSpace, TImage, Triple,
    XType, S_GENERATOR_NAMES,
};
pub use norms::{
    box_elements, certify_a, certify_a_with, epsilon_certificate, epsilon_certificate_with,
    verify_epsilon_witness, AMembership, EpsilonCertificate, EpsilonWitness, LocalObstruction,
    NormWitness,
};
pub use report::{
    ranks_theorem1, AnalyzeOptions, DecompositionReport, EpsilonStatus, Rank, Ranks,
    SGeneratorReport, SubspaceDims, Witnesses,
};
pub use support::{build_profile, Generator, SubspaceProfile, SupportSpace};

use thiserror::Error;

use crate::arith::ArithError;
use crate::f2::F2Error;
use crate::local::LocalError;
use crate::tower::TowerError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("generators are not independent modulo squares")]
    DependentGenerators,
    #[error("every extension coefficient is zero, so the extension splits")]
    SplitExtension,
    #[error("{0}")]
    BadInput(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
}

pub type DResult<T> = Result<T, DecompError>;
