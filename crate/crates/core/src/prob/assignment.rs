use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{Algebra, AlgebraKind, Amplitude};
use crate::model::GroundSet;
use crate::scalar::Scalar;

use super::ProbError;

/// Dense matrix of amplitudes indexed by (source element, target element).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    kind: AlgebraKind,
    rows: usize,
    cols: usize,
    entries: Vec<Amplitude<S>>,
}

impl<S: Scalar> Matrix<S> {
    /// Row-major entries.
    pub fn new(
        kind: AlgebraKind,
        rows: usize,
        cols: usize,
        entries: Vec<Amplitude<S>>,
    ) -> Result<Self, ProbError> {
        if entries.len() != rows * cols {
            return Err(ProbError::ShapeMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        if let Some(e) = entries.iter().find(|e| e.kind() != kind) {
            return Err(ProbError::AlgebraMismatch {
                expected: kind,
                found: e.kind(),
            });
        }
        Ok(Matrix {
            kind,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(kind: AlgebraKind, rows: Vec<Vec<Amplitude<S>>>) -> Result<Self, ProbError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(ProbError::ShapeMismatch {
                expected: (r, c),
                found: (r, bad.len()),
            });
        }
        Matrix::new(kind, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(kind: AlgebraKind, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Amplitude::one(kind)
                } else {
                    Amplitude::zero(kind)
                }
            })
            .collect();
        Matrix {
            kind,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Amplitude<S> {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Amplitude<S>] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn conj_transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        Matrix {
            kind: self.kind,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scale(&self, nu: &S) -> Self {
        Matrix {
            entries: self.entries.iter().map(|e| e.scale(nu)).collect(),
            ..*self
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let want = if r == c {
                        Amplitude::one(self.kind)
                    } else {
                        Amplitude::zero(self.kind)
                    };
                    self.get(r, c).close_to(&want, tol)
                })
            })
    }

    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.close_to(b, tol))
    }

    /// `sum_c Q(M(r, c))`.
    pub fn row_norm(&self, alg: &Algebra, r: usize) -> Result<S, ProbError> {
        self.row(r)
            .iter()
            .try_fold(S::zero(), |acc, e| Ok(acc + alg.quadratic_form(e)?))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.map(&f)).collect(),
        }
    }
}

type Key = (Arc<GroundSet>, Arc<GroundSet>);

/// Transition amplitudes between ground sets over an associative algebra.
///
/// Pairs on one ground set are the identity and cannot be overridden; a
/// missing pair falls back to the conjugate transpose of its reverse.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<S> {
    algebra: Algebra,
    transitions: BTreeMap<Key, Matrix<S>>,
}

impl<S: Scalar> Assignment<S> {
    pub fn new(kind: AlgebraKind) -> Result<Self, ProbError> {
        if !kind.is_associative() {
            return Err(ProbError::NonAssociativeAlgebra(kind));
        }
        Ok(Assignment {
            algebra: Algebra::new(kind),
            transitions: BTreeMap::new(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn kind(&self) -> AlgebraKind {
        self.algebra.kind()
    }

    /// Stores the matrix for `from -> to`, replacing any previous one.
    pub fn set(
        &mut self,
        from: &Arc<GroundSet>,
        to: &Arc<GroundSet>,
        matrix: Matrix<S>,
    ) -> Result<(), ProbError> {
        if matrix.kind() != self.kind() {
            return Err(ProbError::AlgebraMismatch {
                expected: self.kind(),
                found: matrix.kind(),
            });
        }
        if (matrix.rows(), matrix.cols()) != (from.len(), to.len()) {
            return Err(ProbError::ShapeMismatch {
                expected: (from.len(), to.len()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        if from == to {
            let tol = if S::EXACT {
                0.0
            } else {
                crate::scalar::PROBABILITY_TOLERANCE
            };
            if !matrix.is_identity(tol) {
                return Err(ProbError::RepeatabilityForced(from.name().to_string()));
            }
            return Ok(());
        }
        self.transitions.insert((from.clone(), to.clone()), matrix);
        Ok(())
    }

    pub fn with(
        mut self,
        from: &Arc<GroundSet>,
        to: &Arc<GroundSet>,
        matrix: Matrix<S>,
    ) -> Result<Self, ProbError> {
        self.set(from, to, matrix)?;
        Ok(self)
    }

    /// Explicitly stored matrix.
    pub fn explicit(&self, from: &GroundSet, to: &GroundSet) -> Option<&Matrix<S>> {
        self.transitions
            .iter()
            .find(|((f, t), _)| **f == *from && **t == *to)
            .map(|(_, m)| m)
    }

    pub fn explicit_pairs(
        &self,
    ) -> impl Iterator<Item = (&Arc<GroundSet>, &Arc<GroundSet>, &Matrix<S>)> {
        self.transitions.iter().map(|((f, t), m)| (f, t, m))
    }

    /// Effective matrix for `from -> to`.
    pub fn transition(&self, from: &GroundSet, to: &GroundSet) -> Option<Cow<'_, Matrix<S>>> {
        if from == to {
            return Some(Cow::Owned(Matrix::identity(self.kind(), from.len())));
        }
        if let Some(m) = self.explicit(from, to) {
            return Some(Cow::Borrowed(m));
        }
        self.explicit(to, from)
            .map(|m| Cow::Owned(m.conj_transpose()))
    }

    /// Copy with the `from -> to` matrix scaled by `nu`.
    pub fn scaled(&self, from: &GroundSet, to: &GroundSet, nu: &S) -> Option<Self> {
        let key = self
            .transitions
            .keys()
            .find(|(f, t)| **f == *from && **t == *to)?
            .clone();
        let mut out = self.clone();
        let m = out.transitions.get(&key)?.scale(nu);
        out.transitions.insert(key, m);
        Some(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Assignment<T> {
        Assignment {
            algebra: self.algebra.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|(k, m)| (k.clone(), m.map(&f)))
                .collect(),
        }
    }
}
