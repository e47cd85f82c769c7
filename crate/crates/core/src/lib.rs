//! Composition algebras, the measurement-path calculus and amplitude evaluation.
//!
//! * [`algebra`]: the seven real Cayley-Dickson algebras and their forms.
//! * [`axioms`]: exact axiom verification with witnesses.
//! * [`model`]: ground sets, measurements, paths and their partial operations.
//! * [`prob`]: transition-amplitude assignments, path amplitudes, probabilities, sampling.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod axioms;
pub mod model;
pub mod prob;
pub mod scalar;

pub use algebra::{Algebra, AlgebraError, AlgebraKind, Amplitude};
pub use axioms::{verify_axioms, Axiom, AxiomCheck, AxiomReport};
pub use scalar::{Rational, Scalar};
