use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::Amplitude;
use crate::model::MeasurementSequence;
use crate::scalar::{Scalar, PROBABILITY_TOLERANCE};

use super::{Assignment, ProbError};

#[derive(Clone, Debug, PartialEq)]
pub enum Issue<S> {
    /// No matrix for the pair `(step, step + 1)`, in either direction.
    MissingTransition {
        step: usize,
        from: String,
        to: String,
    },
    /// `sum_n Q(M(row, n)) != 1`.
    RowNotNormalized { step: usize, row: usize, sum: S },
    /// Both directions stored and not conjugate transposes of each other.
    AdjointInconsistent { from: String, to: String },
    /// Block sum over an atomic target measurement differs from 1.
    SumRuleViolated { step: usize, row: usize, sum: S },
    /// `sum_n M(row, n) M'(n, row)` has a non-real part.
    SymmetricNotScalar { step: usize, row: usize },
}

/// `sum_B Q(sum_{n in B} M(row, n))` over the blocks of step `step + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSum<S> {
    pub step: usize,
    pub row: usize,
    pub sum: S,
    /// Asserted to be 1 (atomic target measurement) or only reported.
    pub asserted: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<S> {
    pub issues: Vec<Issue<S>>,
    pub block_sums: Vec<BlockSum<S>>,
}

impl<S> ValidationReport<S> {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks `asg` along `s`: coverage, row normalization, adjoint consistency,
/// scalar return trips and block sums. Pairs on one ground set are the
/// identity by construction.
pub fn validate_assignment<S: Scalar>(
    s: &MeasurementSequence,
    asg: &Assignment<S>,
) -> Result<ValidationReport<S>, ProbError> {
    let alg = asg.algebra();
    let tol = if S::EXACT { 0.0 } else { PROBABILITY_TOLERANCE };
    let one = S::one();
    let mut issues = Vec::new();
    let mut block_sums = Vec::new();

    for (f, t, m) in asg.explicit_pairs() {
        if f < t {
            if let Some(back) = asg.explicit(t, f) {
                if !back.close_to(&m.conj_transpose(), tol) {
                    issues.push(Issue::AdjointInconsistent {
                        from: f.name().to_string(),
                        to: t.name().to_string(),
                    });
                }
            }
        }
    }

    for (j, pair) in s.steps().windows(2).enumerate() {
        let (from, to) = (pair[0].ground(), pair[1].ground());
        if from == to {
            continue;
        }
        let (Some(m), Some(back)) = (asg.transition(from, to), asg.transition(to, from)) else {
            issues.push(Issue::MissingTransition {
                step: j,
                from: from.name().to_string(),
                to: to.name().to_string(),
            });
            continue;
        };
        for row in 0..m.rows() {
            let sum = m.row_norm(alg, row)?;
            if !sum.close_to(&one, tol) {
                issues.push(Issue::RowNotNormalized { step: j, row, sum });
            }
            let mut blocks = S::zero();
            for b in pair[1].blocks() {
                let amp = b
                    .iter()
                    .try_fold(Amplitude::zero(asg.kind()), |acc, n| acc.add(m.get(row, n)))?;
                blocks = blocks + alg.quadratic_form(&amp)?;
            }
            let asserted = pair[1].is_atomic();
            if asserted && !blocks.close_to(&one, tol) {
                issues.push(Issue::SumRuleViolated {
                    step: j,
                    row,
                    sum: blocks.clone(),
                });
            }
            block_sums.push(BlockSum {
                step: j,
                row,
                sum: blocks,
                asserted,
            });
            let mut trip = Amplitude::zero(asg.kind());
            for n in 0..m.cols() {
                trip = trip.add(&alg.mul(m.get(row, n), back.get(n, row))?)?;
            }
            if !trip.is_scalar() {
                issues.push(Issue::SymmetricNotScalar { step: j, row });
            }
        }
    }
    Ok(ValidationReport { issues, block_sums })
}
