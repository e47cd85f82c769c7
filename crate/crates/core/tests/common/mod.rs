#![allow(dead_code)]

use std::sync::Arc;

use compalg_core::model::{ElementSet, GroundSet, Measurement, MeasurementSequence, Path};

pub fn g3() -> Arc<GroundSet> {
    GroundSet::new("G3", ["m", "m'", "m''"]).unwrap()
}

pub fn ground(name: &str, elements: &[&str]) -> Arc<GroundSet> {
    GroundSet::new(name, elements.iter().copied()).unwrap()
}

pub fn meas(id: &str, g: &Arc<GroundSet>, blocks: &[&[&str]]) -> Measurement {
    Measurement::from_names(id, g.clone(), blocks).unwrap()
}

pub fn set(g: &Arc<GroundSet>, names: &[&str]) -> ElementSet {
    g.set_of(names.iter()).unwrap()
}

/// `steps[j]` with result named by `results[j]`.
pub fn path(steps: &[&Measurement], results: &[&[&str]]) -> Path {
    let sets = steps
        .iter()
        .zip(results)
        .map(|(m, r)| set(m.ground(), r))
        .collect();
    Path::from_steps(steps.iter().map(|m| (*m).clone()).collect(), sets).unwrap()
}

pub struct Five {
    pub alpha: Measurement,
    pub beta: Measurement,
    pub gamma: Measurement,
    pub delta: Measurement,
    pub cup: Measurement,
}

pub fn five() -> Five {
    let g = g3();
    Five {
        alpha: meas("alpha", &g, &[&["m"], &["m'"], &["m''"]]),
        beta: meas("beta", &g, &[&["m", "m'"], &["m''"]]),
        gamma: meas("gamma", &g, &[&["m"], &["m'", "m''"]]),
        delta: meas("delta", &g, &[&["m", "m''"], &["m'"]]),
        cup: meas("cup", &g, &[&["m", "m'", "m''"]]),
    }
}

/// Ground sets of sizes 1, 2, 3 and every partition of each.
pub fn universe_measurements() -> Vec<Measurement> {
    let grounds = [ground("G1", &["x"]), ground("G2", &["p", "q"]), g3()];
    grounds
        .iter()
        .flat_map(|g| compalg_core::model::enumerate_partitions(g).unwrap())
        .collect()
}

pub fn universe_sequences(max_len: usize) -> Vec<MeasurementSequence> {
    compalg_core::model::enumerate_sequences(&universe_measurements(), max_len)
}

pub fn universe_paths(max_len: usize) -> Vec<Path> {
    universe_sequences(max_len)
        .iter()
        .flat_map(|s| compalg_core::model::enumerate_paths(s).unwrap())
        .collect()
}
