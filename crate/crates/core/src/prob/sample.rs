use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraKind, Amplitude};
use crate::model::{MeasurementSequence, Path};
use crate::scalar::Scalar;

use super::{eval, Assignment, Matrix, ProbError};

/// Draws per independently seeded chunk.
pub const SAMPLE_CHUNK: u64 = 1 << 14;

/// Allowed deviation of the total probability from 1.
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-6;

/// Exact distribution over the paths of a sequence from one source element.
#[derive(Clone, Debug)]
pub struct PathDistribution<S> {
    paths: Vec<Path>,
    probabilities: Vec<S>,
    index: WeightedIndex<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyRow<S> {
    pub path: Path,
    pub count: u64,
    pub probability: S,
}

/// Observed counts, one row per path in enumeration order.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable<S> {
    pub draws: u64,
    pub rows: Vec<FrequencyRow<S>>,
}

impl<S: Scalar> PathDistribution<S> {
    pub fn new(
        s: &MeasurementSequence,
        source: usize,
        asg: &Assignment<S>,
    ) -> Result<Self, ProbError> {
        let (paths, probabilities): (Vec<_>, Vec<_>) = eval::path_probabilities(s, source, asg)?
            .into_iter()
            .unzip();
        let neg_tol = if S::EXACT {
            0.0
        } else {
            crate::scalar::PROBABILITY_TOLERANCE
        };
        if let Some((p, q)) = paths
            .iter()
            .zip(&probabilities)
            .find(|(_, q)| q.to_f64() < -neg_tol)
        {
            return Err(ProbError::NotADistribution(format!(
                "path {p} has probability {q}"
            )));
        }
        let total = probabilities.iter().fold(S::zero(), |a, q| a + q.clone());
        if libm::fabs(total.to_f64() - 1.0) > DISTRIBUTION_TOLERANCE {
            return Err(ProbError::NotADistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        let weights: Vec<f64> = probabilities.iter().map(|q| q.to_f64().max(0.0)).collect();
        let index = WeightedIndex::new(&weights)
            .map_err(|e| ProbError::NotADistribution(format!("{e}")))?;
        Ok(PathDistribution {
            paths,
            probabilities,
            index,
        })
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn probabilities(&self) -> &[S] {
        &self.probabilities
    }

    /// Number of chunks covering `n` draws.
    pub fn chunks(n: u64) -> u64 {
        n.div_ceil(SAMPLE_CHUNK)
    }

    /// Counts per path for chunk `chunk` of an `n`-draw run.
    pub fn draw_chunk(&self, n: u64, seed: u64, chunk: u64) -> Vec<u64> {
        let start = chunk * SAMPLE_CHUNK;
        let len = SAMPLE_CHUNK.min(n.saturating_sub(start));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let mut counts = vec![0u64; self.paths.len()];
        for _ in 0..len {
            counts[self.index.sample(&mut rng)] += 1;
        }
        counts
    }

    /// Table from per-path counts.
    pub fn table(&self, counts: &[u64]) -> FrequencyTable<S> {
        FrequencyTable {
            draws: counts.iter().sum(),
            rows: self
                .paths
                .iter()
                .zip(&self.probabilities)
                .zip(counts)
                .map(|((path, p), count)| FrequencyRow {
                    path: path.clone(),
                    count: *count,
                    probability: p.clone(),
                })
                .collect(),
        }
    }

    /// `n` draws, reproducible from `(n, seed)`.
    pub fn sample(&self, n: u64, seed: u64) -> FrequencyTable<S> {
        let mut counts = vec![0u64; self.paths.len()];
        for chunk in 0..Self::chunks(n) {
            for (c, d) in counts.iter_mut().zip(self.draw_chunk(n, seed, chunk)) {
                *c += d;
            }
        }
        self.table(&counts)
    }
}

/// `n` draws from the path distribution of `s` starting at element `source`.
pub fn sample<S: Scalar>(
    s: &MeasurementSequence,
    source: usize,
    asg: &Assignment<S>,
    n: u64,
    seed: u64,
) -> Result<FrequencyTable<S>, ProbError> {
    Ok(PathDistribution::new(s, source, asg)?.sample(n, seed))
}

/// Matrix whose rows are uniform on the unit Q-sphere.
pub fn random_row_normalized(
    kind: AlgebraKind,
    rows: usize,
    cols: usize,
    seed: u64,
) -> Result<Matrix<f64>, ProbError> {
    if !kind.is_positive_definite() {
        return Err(ProbError::NotPositiveDefinite(kind));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = kind.dim();
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let raw: Vec<f64> = (0..cols * dim)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        let norm = libm::sqrt(raw.iter().map(|x| x * x).sum::<f64>());
        for c in 0..cols {
            let coeffs = raw[c * dim..(c + 1) * dim]
                .iter()
                .map(|x| x / norm)
                .collect();
            entries.push(Amplitude::new(kind, coeffs)?);
        }
    }
    Matrix::new(kind, rows, cols, entries)
}
