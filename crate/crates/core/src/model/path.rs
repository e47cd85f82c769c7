use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{ElementSet, Measurement, ModelError};

/// At least two measurements with atomic source and target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurementSequence {
    steps: Vec<Measurement>,
}

impl MeasurementSequence {
    pub fn new(steps: Vec<Measurement>) -> Result<Self, ModelError> {
        if steps.len() < 2 {
            return Err(ModelError::SequenceTooShort(steps.len()));
        }
        if !steps[0].is_atomic() {
            return Err(ModelError::NonAtomicEndpoint(0));
        }
        if !steps[steps.len() - 1].is_atomic() {
            return Err(ModelError::NonAtomicEndpoint(steps.len() - 1));
        }
        Ok(MeasurementSequence { steps })
    }

    pub fn steps(&self) -> &[Measurement] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> &Measurement {
        &self.steps[0]
    }

    pub fn target(&self) -> &Measurement {
        &self.steps[self.steps.len() - 1]
    }

    pub fn reverse(&self) -> Self {
        MeasurementSequence {
            steps: self.steps.iter().rev().cloned().collect(),
        }
    }
}

/// One result (block) per step of a measurement sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    sequence: MeasurementSequence,
    results: Vec<ElementSet>,
}

impl Path {
    pub fn new(
        sequence: MeasurementSequence,
        results: Vec<ElementSet>,
    ) -> Result<Self, ModelError> {
        if results.len() != sequence.len() {
            return Err(ModelError::LengthMismatch {
                steps: sequence.len(),
                results: results.len(),
            });
        }
        if let Some(j) = (0..results.len()).find(|&j| !sequence.steps[j].has_block(results[j])) {
            return Err(ModelError::ResultNotABlock(j));
        }
        Ok(Path { sequence, results })
    }

    /// From parallel step and result lists.
    pub fn from_steps(
        steps: Vec<Measurement>,
        results: Vec<ElementSet>,
    ) -> Result<Self, ModelError> {
        Path::new(MeasurementSequence::new(steps)?, results)
    }

    /// Steps and results already known to be valid.
    pub(crate) fn raw(steps: Vec<Measurement>, results: Vec<ElementSet>) -> Self {
        debug_assert!(Path::from_steps(steps.clone(), results.clone()).is_ok());
        Path {
            sequence: MeasurementSequence { steps },
            results,
        }
    }

    pub fn sequence(&self) -> &MeasurementSequence {
        &self.sequence
    }

    pub fn steps(&self) -> &[Measurement] {
        &self.sequence.steps
    }

    pub fn step(&self, j: usize) -> &Measurement {
        &self.sequence.steps[j]
    }

    pub fn results(&self) -> &[ElementSet] {
        &self.results
    }

    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Source element index.
    pub fn source_element(&self) -> usize {
        self.results[0].first().expect("atomic source")
    }

    /// Target element index.
    pub fn target_element(&self) -> usize {
        self.results[self.len() - 1].first().expect("atomic target")
    }

    /// Step `j` of `self` and step `k` of `other` agree in measurement and result.
    pub(crate) fn same_step(&self, j: usize, other: &Path, k: usize) -> bool {
        self.results[j] == other.results[k] && self.step(j) == other.step(k)
    }

    fn interior(&self, j: usize) -> bool {
        j >= 1 && j + 1 < self.len()
    }

    /// `a . b`: shares the junction step once.
    pub fn chain(&self, b: &Path) -> Result<Path, ModelError> {
        if self.step(self.len() - 1) != b.step(0) {
            return Err(ModelError::ChainMismatch(
                "target measurement differs from source measurement".into(),
            ));
        }
        if self.results[self.len() - 1] != b.results[0] {
            return Err(ModelError::ChainMismatch(
                "target result differs from source result".into(),
            ));
        }
        let steps = self
            .steps()
            .iter()
            .chain(&b.steps()[1..])
            .cloned()
            .collect();
        let results = self
            .results
            .iter()
            .chain(&b.results[1..])
            .copied()
            .collect();
        Ok(Path::raw(steps, results))
    }

    /// `a v b` over one shared sequence, without normal-form alignment.
    pub fn coarsen_direct(&self, b: &Path) -> Result<Path, ModelError> {
        if self.sequence != b.sequence {
            return Err(ModelError::CoarsenMismatch(
                "operands are over different measurement sequences".into(),
            ));
        }
        let diff: Vec<usize> = (0..self.len())
            .filter(|&j| self.results[j] != b.results[j])
            .collect();
        let [j] = diff[..] else {
            return Err(ModelError::CoarsenMismatch(format!(
                "results differ at {} positions, need exactly 1",
                diff.len()
            )));
        };
        if !self.interior(j) {
            return Err(ModelError::CoarsenMismatch(format!(
                "results differ at endpoint step {j}"
            )));
        }
        let (x, y) = (self.results[j], b.results[j]);
        let merged = x.union(y);
        let mut steps = self.steps().to_vec();
        steps[j] = steps[j].merge_blocks(x, y);
        let mut results = self.results.clone();
        results[j] = merged;
        Ok(Path::raw(steps, results))
    }

    /// `c / b`: the prefix `a` with `a . b = c`.
    pub fn unchain_right(&self, b: &Path) -> Result<Path, ModelError> {
        if b.len() >= self.len() {
            return Err(ModelError::NotAFactor(
                "factor is not shorter than the path".into(),
            ));
        }
        let off = self.len() - b.len();
        if !(0..b.len()).all(|k| self.same_step(off + k, b, k)) {
            return Err(ModelError::NotAFactor(
                "path does not end with the given factor".into(),
            ));
        }
        Ok(Path::raw(
            self.steps()[..=off].to_vec(),
            self.results[..=off].to_vec(),
        ))
    }

    /// `a \ c`: the suffix `b` with `a . b = c`.
    pub fn unchain_left(&self, c: &Path) -> Result<Path, ModelError> {
        if self.len() >= c.len() {
            return Err(ModelError::NotAFactor(
                "factor is not shorter than the path".into(),
            ));
        }
        if !(0..self.len()).all(|k| c.same_step(k, self, k)) {
            return Err(ModelError::NotAFactor(
                "path does not start with the given factor".into(),
            ));
        }
        let off = self.len() - 1;
        Ok(Path::raw(
            c.steps()[off..].to_vec(),
            c.results[off..].to_vec(),
        ))
    }

    /// `c ^ b`: the path `a` with `a v b = c`.
    ///
    /// `b` must agree with `c` except at one interior step `j`, where its
    /// measurement is `c`'s with the result block split into `c_j \ b_j` and `b_j`.
    pub fn refine(&self, b: &Path) -> Result<Path, ModelError> {
        if self.len() != b.len() {
            return Err(ModelError::NotRefinable(
                "paths have different lengths".into(),
            ));
        }
        let diff: Vec<usize> = (0..self.len())
            .filter(|&j| !self.same_step(j, b, j))
            .collect();
        let [j] = diff[..] else {
            return Err(ModelError::NotRefinable(format!(
                "paths differ at {} steps, need exactly 1",
                diff.len()
            )));
        };
        if !self.interior(j) {
            return Err(ModelError::NotRefinable(format!(
                "paths differ at endpoint step {j}"
            )));
        }
        let (c, r) = (self.results[j], b.results[j]);
        if !(r.is_subset(c) && r != c) {
            return Err(ModelError::NotRefinable(
                "result is not a proper subset of the coarse result".into(),
            ));
        }
        let rest = c.difference(r);
        if *b.step(j) != self.step(j).replace_block(c, &[rest, r]) {
            return Err(ModelError::NotRefinable(
                "measurement does not split the coarse block".into(),
            ));
        }
        let mut results = self.results.clone();
        results[j] = rest;
        Ok(Path::raw(b.steps().to_vec(), results))
    }

    pub fn reverse(&self) -> Path {
        Path {
            sequence: self.sequence.reverse(),
            results: self.results.iter().rev().copied().collect(),
        }
    }

    /// Inserts measurement `m` with result `result` so that it becomes step `j`,
    /// `1 <= j <= len - 1`.
    pub fn insert_measurement(
        &self,
        j: usize,
        m: Measurement,
        result: ElementSet,
    ) -> Result<Path, ModelError> {
        if !(1..self.len()).contains(&j) {
            return Err(ModelError::InsertMismatch(format!(
                "position {j} is not interior (1..={})",
                self.len() - 1
            )));
        }
        if !m.has_block(result) {
            return Err(ModelError::InsertMismatch(
                "result is not a block of the inserted measurement".into(),
            ));
        }
        let mut steps = self.steps().to_vec();
        let mut results = self.results.clone();
        steps.insert(j, m);
        results.insert(j, result);
        Ok(Path::raw(steps, results))
    }

    /// Replaces step `j` by the cyclic path `x`, which starts and ends there.
    pub fn insert_path(&self, j: usize, x: &Path) -> Result<Path, ModelError> {
        if j >= self.len() {
            return Err(ModelError::InsertMismatch(format!(
                "position {j} is past the last step"
            )));
        }
        if !x.same_step(0, x, x.len() - 1) {
            return Err(ModelError::InsertMismatch(
                "inserted path is not cyclic".into(),
            ));
        }
        if !self.same_step(j, x, 0) {
            return Err(ModelError::InsertMismatch(format!(
                "inserted path does not start at step {j}"
            )));
        }
        let steps = self.steps()[..j]
            .iter()
            .chain(x.steps())
            .chain(&self.steps()[j + 1..])
            .cloned()
            .collect();
        let results = self.results[..j]
            .iter()
            .chain(&x.results)
            .chain(&self.results[j + 1..])
            .copied()
            .collect();
        Ok(Path::raw(steps, results))
    }

    /// Splits at every interior atomic step.
    pub fn factorize(&self) -> Vec<Path> {
        let mut cuts: Vec<usize> = (1..self.len() - 1)
            .filter(|&j| self.step(j).is_atomic())
            .collect();
        cuts.insert(0, 0);
        cuts.push(self.len() - 1);
        cuts.windows(2)
            .map(|w| {
                Path::raw(
                    self.steps()[w[0]..=w[1]].to_vec(),
                    self.results[w[0]..=w[1]].to_vec(),
                )
            })
            .collect()
    }

    /// `[M{a}, N{b,c}, ...]`.
    pub fn notation(&self) -> String {
        let mut s = String::from("[");
        for j in 0..self.len() {
            if j > 0 {
                s.push_str(", ");
            }
            let m = self.step(j);
            s.push_str(m.id());
            s.push_str(&m.ground().format_set(self.results[j]));
        }
        s.push(']');
        s
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}
