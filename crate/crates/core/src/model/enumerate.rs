use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{ElementSet, GroundSet, Measurement, MeasurementSequence, ModelError, Path};

pub const DEFAULT_MAX_GROUND: usize = 10;
pub const DEFAULT_MAX_PATHS: u128 = 1_000_000;

/// All set partitions of `g`, in restricted-growth-string order.
pub fn enumerate_partitions(g: &Arc<GroundSet>) -> Result<Vec<Measurement>, ModelError> {
    enumerate_partitions_bounded(g, DEFAULT_MAX_GROUND)
}

pub fn enumerate_partitions_bounded(
    g: &Arc<GroundSet>,
    max: usize,
) -> Result<Vec<Measurement>, ModelError> {
    let n = g.len();
    if n > max {
        return Err(ModelError::GroundSetTooLarge { size: n, max });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(i: usize, top: usize, rgs: &mut [usize], g: &Arc<GroundSet>, out: &mut Vec<Measurement>) {
        if i == rgs.len() {
            let mut blocks = vec![ElementSet::EMPTY; top];
            for (e, b) in rgs.iter().enumerate() {
                blocks[*b] = blocks[*b].union(ElementSet::singleton(e));
            }
            out.push(
                Measurement::derived(g.clone(), blocks).expect("growth string is a partition"),
            );
            return;
        }
        for b in 0..=top {
            rgs[i] = b;
            go(i + 1, top.max(b + 1), rgs, g, out);
        }
    }
    go(0, 0, &mut rgs, g, &mut out);
    Ok(out)
}

/// All result combinations over `s`, first step varying slowest.
pub fn enumerate_paths(s: &MeasurementSequence) -> Result<Vec<Path>, ModelError> {
    enumerate_paths_bounded(s, DEFAULT_MAX_PATHS)
}

pub fn enumerate_paths_bounded(
    s: &MeasurementSequence,
    max: u128,
) -> Result<Vec<Path>, ModelError> {
    let count = s
        .steps()
        .iter()
        .try_fold(1u128, |acc, m| acc.checked_mul(m.block_count() as u128))
        .unwrap_or(u128::MAX);
    if count > max {
        return Err(ModelError::TooManyPaths { count, max });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; s.len()];
    loop {
        let results = s
            .steps()
            .iter()
            .zip(&idx)
            .map(|(m, i)| m.blocks()[*i])
            .collect();
        out.push(Path::new(s.clone(), results).expect("blocks of each step"));
        let mut k = s.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < s.steps()[k].block_count() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Every sequence of length `2..=max_len` over `measurements` with atomic endpoints.
pub fn enumerate_sequences(
    measurements: &[Measurement],
    max_len: usize,
) -> Vec<MeasurementSequence> {
    let atomic: Vec<&Measurement> = measurements.iter().filter(|m| m.is_atomic()).collect();
    let mut out = Vec::new();
    for len in 2..=max_len {
        let mut interior = vec![0usize; len - 2];
        loop {
            for s in &atomic {
                for t in &atomic {
                    let mut steps = Vec::with_capacity(len);
                    steps.push((*s).clone());
                    steps.extend(interior.iter().map(|i| measurements[*i].clone()));
                    steps.push((*t).clone());
                    out.push(MeasurementSequence::new(steps).expect("atomic endpoints"));
                }
            }
            let mut k = interior.len();
            let done = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                interior[k] += 1;
                if interior[k] < measurements.len() {
                    break false;
                }
                interior[k] = 0;
            };
            if done {
                break;
            }
        }
    }
    out
}
