//! Impossibility analysis, redundancy reduction and classification.

use alloc::vec::Vec;

use super::{ElementSet, ModelError, Path};

/// Maximal stretch of consecutive weakly equivalent steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    /// Inclusive.
    pub end: usize,
    /// Intersection of the run's results.
    pub common: ElementSet,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, j: usize) -> bool {
        (self.start..=self.end).contains(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClass {
    pub cyclic: bool,
    pub symmetric: bool,
    pub trivial: bool,
    pub possible: bool,
    /// Impossibility-generating pairs `(j, j + 1)`, zero-based.
    pub igps: Vec<(usize, usize)>,
}

impl Path {
    pub fn runs(&self) -> Vec<Run> {
        let mut runs = Vec::new();
        let mut start = 0;
        let mut common = self.results()[0];
        for j in 1..=self.len() {
            if j < self.len() && self.step(j).weakly_equivalent(self.step(j - 1)) {
                common = common.intersection(self.results()[j]);
                continue;
            }
            runs.push(Run {
                start,
                end: j - 1,
                common,
            });
            if j < self.len() {
                start = j;
                common = self.results()[j];
            }
        }
        runs
    }

    /// Pairs `(j, j + 1)` of weakly equivalent steps where no element survives
    /// from the start of the run (or the last reported pair) through step `j + 1`.
    ///
    /// Contains every weakly equivalent pair with disjoint results.
    pub fn find_igps(&self) -> Vec<(usize, usize)> {
        let r = self.results();
        let mut out = Vec::new();
        let mut carried = r[0];
        for k in 0..self.len() - 1 {
            if self.step(k).weakly_equivalent(self.step(k + 1)) {
                let next = carried.intersection(r[k + 1]);
                if next.is_empty() {
                    out.push((k, k + 1));
                    carried = r[k + 1];
                } else {
                    carried = next;
                }
            } else {
                carried = r[k + 1];
            }
        }
        out
    }

    pub fn is_possible(&self) -> bool {
        self.runs().iter().all(|run| !run.common.is_empty())
    }

    /// All single rewrites towards the normal form: splitting one
    /// element off an interior result that no run neighbour shares, or
    /// dropping a repeated step.
    pub fn reductions(&self) -> Vec<Path> {
        let mut out = Vec::new();
        for run in self.runs().iter().filter(|r| r.len() >= 2) {
            for j in run.start.max(1)..=run.end.min(self.len() - 2) {
                let rj = self.results()[j];
                for e in rj.difference(run.common).iter() {
                    let e = ElementSet::singleton(e);
                    let kept = rj.difference(e);
                    if kept.is_empty() {
                        continue;
                    }
                    let mut steps = self.steps().to_vec();
                    let mut results = self.results().to_vec();
                    steps[j] = steps[j].replace_block(rj, &[kept, e]);
                    results[j] = kept;
                    out.push(Path::raw(steps, results));
                }
            }
        }
        if self.len() > 2 {
            for j in 0..self.len() - 1 {
                if self.same_step(j, self, j + 1) {
                    out.push(self.without_step(if j + 1 == self.len() - 1 { j } else { j + 1 }));
                }
            }
        }
        out
    }

    fn without_step(&self, j: usize) -> Path {
        let mut steps = self.steps().to_vec();
        let mut results = self.results().to_vec();
        steps.remove(j);
        results.remove(j);
        Path::raw(steps, results)
    }

    /// Unique nonredundant representative: every interior result in a run of
    /// two or more steps is cut down to the run intersection (removed elements
    /// become singleton blocks), then repeated steps are dropped.
    pub fn normal_form(&self) -> Result<Path, ModelError> {
        let runs = self.runs();
        if runs.iter().any(|r| r.common.is_empty()) {
            return Err(ModelError::ImpossiblePathHasNoNormalForm);
        }
        let mut steps = self.steps().to_vec();
        let mut results = self.results().to_vec();
        for run in runs.iter().filter(|r| r.len() >= 2) {
            for j in run.start.max(1)..=run.end.min(self.len() - 2) {
                let rj = results[j];
                if rj == run.common {
                    continue;
                }
                let mut parts: Vec<ElementSet> = rj
                    .difference(run.common)
                    .iter()
                    .map(ElementSet::singleton)
                    .collect();
                parts.push(run.common);
                steps[j] = steps[j].replace_block(rj, &parts);
                results[j] = run.common;
            }
        }
        let mut keep_steps = Vec::with_capacity(steps.len());
        let mut keep_results: Vec<ElementSet> = Vec::with_capacity(steps.len());
        for (m, r) in steps.into_iter().zip(results) {
            let dup =
                keep_steps.last().is_some_and(|last| *last == m) && keep_results.last() == Some(&r);
            if !dup {
                keep_steps.push(m);
                keep_results.push(r);
            }
        }
        if keep_steps.len() == 1 {
            keep_steps.push(keep_steps[0].clone());
            keep_results.push(keep_results[0]);
        }
        Ok(Path::raw(keep_steps, keep_results))
    }

    /// Same normal form; both paths must be possible.
    pub fn equivalent(&self, other: &Path) -> Result<bool, ModelError> {
        Ok(self.normal_form()? == other.normal_form()?)
    }

    /// Coarsening, aligning the operands through equivalent members when
    /// they are not directly compatible: first their normal forms, then
    /// normal forms padded with up to `max(len)` repeated steps.
    pub fn coarsen(&self, b: &Path) -> Result<Path, ModelError> {
        let direct = self.coarsen_direct(b);
        if direct.is_ok() || !self.is_possible() || !b.is_possible() {
            return direct;
        }
        let (na, nb) = (self.normal_form()?, b.normal_form()?);
        if let Ok(c) = na.coarsen_direct(&nb) {
            return Ok(c);
        }
        let longest = na.len().max(nb.len());
        for target in longest..=2 * longest {
            let pa = na.paddings(target);
            let pb = nb.paddings(target);
            for x in &pa {
                for y in &pb {
                    if let Ok(c) = x.coarsen_direct(y) {
                        return Ok(c);
                    }
                }
            }
        }
        direct
    }

    /// Every way to repeat steps so the path reaches length `target`.
    fn paddings(&self, target: usize) -> Vec<Path> {
        fn go(p: &Path, from: usize, left: usize, out: &mut Vec<Path>) {
            if left == 0 {
                out.push(p.clone());
                return;
            }
            for j in from..p.len() {
                let mut steps = p.steps().to_vec();
                let mut results = p.results().to_vec();
                steps.insert(j, steps[j].clone());
                results.insert(j, results[j]);
                go(&Path::raw(steps, results), j, left - 1, out);
            }
        }
        let mut out = Vec::new();
        if target >= self.len() {
            go(self, 0, target - self.len(), &mut out);
        }
        out
    }

    pub fn classify(&self) -> PathClass {
        let igps = self.find_igps();
        let possible = igps.is_empty();
        let cyclic = self.same_step(0, self, self.len() - 1);
        let (symmetric, trivial) = match self.normal_form() {
            Ok(nf) => (
                nf == nf.reverse(),
                (1..nf.len()).all(|j| nf.same_step(0, &nf, j)),
            ),
            Err(_) => (*self == self.reverse(), false),
        };
        PathClass {
            cyclic,
            symmetric,
            trivial,
            possible,
            igps,
        }
    }
}
