use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Amplitude;
use crate::model::{Measurement, MeasurementSequence, Path};
use crate::scalar::Scalar;

use super::{Assignment, ProbError};

#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityResult<S> {
    pub amplitude: Amplitude<S>,
    /// `Q(amplitude)`; may leave `[0, 1]` for split algebras.
    pub probability: S,
}

/// Sum over threads (one element per step, drawn from that step's result)
/// of the left-to-right product of transition entries, on the normal form.
/// Impossible paths give 0.
pub fn amplitude_of<S: Scalar>(a: &Path, asg: &Assignment<S>) -> Result<Amplitude<S>, ProbError> {
    if !a.is_possible() {
        return Ok(Amplitude::zero(asg.kind()));
    }
    thread_sum(&a.normal_form()?, asg)
}

/// Thread sum on the path as given.
pub fn thread_sum<S: Scalar>(a: &Path, asg: &Assignment<S>) -> Result<Amplitude<S>, ProbError> {
    let alg = asg.algebra();
    let mut cur: Vec<Option<Amplitude<S>>> = vec![None; a.step(0).ground().len()];
    cur[a.source_element()] = Some(Amplitude::one(asg.kind()));
    for j in 0..a.len() - 1 {
        let (from, to) = (a.step(j).ground(), a.step(j + 1).ground());
        let m = asg
            .transition(from, to)
            .ok_or_else(|| ProbError::MissingTransition {
                from: from.name().to_string(),
                to: to.name().to_string(),
            })?;
        let mut next: Vec<Option<Amplitude<S>>> = vec![None; to.len()];
        if from == to {
            for y in a.results()[j + 1].iter() {
                next[y] = cur[y].take();
            }
        } else {
            for y in a.results()[j + 1].iter() {
                let mut acc: Option<Amplitude<S>> = None;
                for x in a.results()[j].iter() {
                    if let Some(v) = &cur[x] {
                        let term = alg.mul(v, m.get(x, y))?;
                        acc = Some(match acc {
                            Some(s) => s.add(&term)?,
                            None => term,
                        });
                    }
                }
                next[y] = acc;
            }
        }
        cur = next;
    }
    Ok(cur[a.target_element()]
        .take()
        .unwrap_or_else(|| Amplitude::zero(asg.kind())))
}

pub fn probability_of<S: Scalar>(
    a: &Path,
    asg: &Assignment<S>,
) -> Result<ProbabilityResult<S>, ProbError> {
    let amplitude = amplitude_of(a, asg)?;
    let probability = asg.algebra().quadratic_form(&amplitude)?;
    Ok(ProbabilityResult {
        amplitude,
        probability,
    })
}

fn tolerance<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        crate::scalar::PROBABILITY_TOLERANCE
    }
}

/// `P(a)` equals the product of the probabilities of its factors.
pub fn check_markov<S: Scalar>(a: &Path, asg: &Assignment<S>) -> Result<bool, ProbError> {
    let whole = probability_of(a, asg)?.probability;
    let product = a.factorize().iter().try_fold(S::one(), |acc, f| {
        Ok::<_, ProbError>(acc * probability_of(f, asg)?.probability)
    })?;
    Ok(whole.close_to(&product, tolerance::<S>()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertainInsertion<S> {
    pub original: ProbabilityResult<S>,
    pub extended: ProbabilityResult<S>,
    pub probabilities_equal: bool,
    pub amplitudes_equal: bool,
}

/// Compares `a` under `asg` with `a` plus the fully coarse `m` inserted at `j`
/// under `asg_extended`.
pub fn check_certain_insertion<S: Scalar>(
    a: &Path,
    j: usize,
    m: &Measurement,
    asg: &Assignment<S>,
    asg_extended: &Assignment<S>,
) -> Result<CertainInsertion<S>, ProbError> {
    if !m.is_fully_coarse() {
        return Err(ProbError::NotFullyCoarse);
    }
    let b = a.insert_measurement(j, m.clone(), m.ground().all())?;
    let original = probability_of(a, asg)?;
    let extended = probability_of(&b, asg_extended)?;
    let tol = tolerance::<S>();
    Ok(CertainInsertion {
        probabilities_equal: original.probability.close_to(&extended.probability, tol),
        amplitudes_equal: original.amplitude.close_to(&extended.amplitude, tol),
        original,
        extended,
    })
}

/// Paths over `s` starting at `source`, with their probabilities.
pub fn path_probabilities<S: Scalar>(
    s: &MeasurementSequence,
    source: usize,
    asg: &Assignment<S>,
) -> Result<Vec<(Path, S)>, ProbError> {
    if source >= s.source().ground().len() {
        return Err(ProbError::UnknownSource);
    }
    crate::model::enumerate_paths(s)?
        .into_iter()
        .filter(|p| p.source_element() == source)
        .map(|p| {
            let q = probability_of(&p, asg)?.probability;
            Ok((p, q))
        })
        .collect()
}

/// Sum of path probabilities over `s` from `source`.
pub fn total_probability<S: Scalar>(
    s: &MeasurementSequence,
    source: usize,
    asg: &Assignment<S>,
) -> Result<S, ProbError> {
    Ok(path_probabilities(s, source, asg)?
        .into_iter()
        .fold(S::zero(), |acc, (_, q)| acc + q))
}
