//! Transition-amplitude assignments, path amplitudes and probabilities,
//! sum-rule validation and seeded sampling.

mod assignment;
mod eval;
mod sample;
mod validate;

use alloc::string::String;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraKind};
use crate::model::ModelError;

pub use assignment::{Assignment, Matrix};
pub use eval::{
    amplitude_of, check_certain_insertion, check_markov, path_probabilities, probability_of,
    thread_sum, total_probability, CertainInsertion, ProbabilityResult,
};
pub use sample::{
    random_row_normalized, sample, FrequencyRow, FrequencyTable, PathDistribution,
    DISTRIBUTION_TOLERANCE, SAMPLE_CHUNK,
};
pub use validate::{validate_assignment, BlockSum, Issue, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProbError {
    #[error("{0} is not associative")]
    NonAssociativeAlgebra(AlgebraKind),
    #[error("{0} is not positive definite")]
    NotPositiveDefinite(AlgebraKind),
    #[error("expected a {}x{} matrix, got {}x{}", expected.0, expected.1, found.0, found.1)]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} amplitudes, got {found}")]
    AlgebraMismatch {
        expected: AlgebraKind,
        found: AlgebraKind,
    },
    #[error("transitions within ground set `{0}` are fixed to the identity")]
    RepeatabilityForced(String),
    #[error("no transition amplitudes from `{from}` to `{to}`")]
    MissingTransition { from: String, to: String },
    #[error("inserted measurement is not fully coarse")]
    NotFullyCoarse,
    #[error("source element is not in the source ground set")]
    UnknownSource,
    #[error("not a distribution: {0}")]
    NotADistribution(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
