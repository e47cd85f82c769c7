use std::thread;

use compalg_core::prob::{FrequencyTable, PathDistribution};
use compalg_core::scalar::Scalar;

/// `PathDistribution::sample` spread over `workers` threads.
///
/// Chunk `c` always uses stream `c` of `seed`, so counts do not depend on
/// the number of workers.
pub fn sample_parallel<S: Scalar + Send + Sync>(
    dist: &PathDistribution<S>,
    n: u64,
    seed: u64,
    workers: usize,
) -> FrequencyTable<S> {
    let chunks = PathDistribution::<S>::chunks(n);
    let workers = (workers.max(1) as u64).min(chunks.max(1));
    let partials: Vec<Vec<u64>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut counts = vec![0u64; dist.paths().len()];
                    for chunk in (w..chunks).step_by(workers as usize) {
                        for (c, d) in counts.iter_mut().zip(dist.draw_chunk(n, seed, chunk)) {
                            *c += d;
                        }
                    }
                    counts
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    });
    let mut counts = vec![0u64; dist.paths().len()];
    for p in partials {
        for (c, d) in counts.iter_mut().zip(p) {
            *c += d;
        }
    }
    dist.table(&counts)
}
