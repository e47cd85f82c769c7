//! Measurements as partitions, measurement sequences, paths and their
//! partial algebra: chaining, coarsening, unchaining, refinement, reversal,
//! insertion, factorization, impossibility analysis and normal forms.

mod enumerate;
mod ground;
mod measurement;
mod normal;
mod path;

use alloc::string::String;
use thiserror::Error;

pub use enumerate::{
    enumerate_partitions, enumerate_partitions_bounded, enumerate_paths, enumerate_paths_bounded,
    enumerate_sequences, DEFAULT_MAX_GROUND, DEFAULT_MAX_PATHS,
};
pub use ground::{ElementSet, GroundSet, MAX_GROUND_SIZE};
pub use measurement::Measurement;
pub use normal::{PathClass, Run};
pub use path::{MeasurementSequence, Path};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("ground set is empty")]
    EmptyGroundSet,
    #[error("element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("ground set has {size} elements, limit is {max}")]
    GroundSetTooLarge { size: usize, max: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("a sequence needs at least two measurements, got {0}")]
    SequenceTooShort(usize),
    #[error("step {0} is a source or target and must be atomic")]
    NonAtomicEndpoint(usize),
    #[error("{results} results for {steps} steps")]
    LengthMismatch { steps: usize, results: usize },
    #[error("result at step {0} is not a block of that step's measurement")]
    ResultNotABlock(usize),
    #[error("chain mismatch: {0}")]
    ChainMismatch(String),
    #[error("coarsen mismatch: {0}")]
    CoarsenMismatch(String),
    #[error("not a factor: {0}")]
    NotAFactor(String),
    #[error("not refinable: {0}")]
    NotRefinable(String),
    #[error("insert mismatch: {0}")]
    InsertMismatch(String),
    #[error("impossible path has no normal form")]
    ImpossiblePathHasNoNormalForm,
    #[error("{count} paths exceed the limit of {max}")]
    TooManyPaths { count: u128, max: u128 },
}
