//! Shared fixtures for the benchmarks.

use kriz::exterior::RawExpression;
use kriz::qnum::qi;
use kriz::ring::{preset_ring, GradedRing};

pub fn line() -> GradedRing {
    preset_ring("cp", 1).expect("preset")
}

pub fn plane() -> GradedRing {
    preset_ring("cp", 2).expect("preset")
}

pub fn genus_two() -> GradedRing {
    preset_ring("curve", 2).expect("preset")
}

/// A deterministic batch of messy expressions on `n` points: every pair
/// of generators in both orders with shifted marks.
pub fn rewriting_batch(ring: &GradedRing, n: usize) -> Vec<RawExpression> {
    let mut batch = Vec::new();
    let b = ring.dim();
    let mut tick = 0usize;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for l in 1..=n {
                for m in 1..=n {
                    if l == m {
                        continue;
                    }
                    let marks: Vec<usize> = (0..n).map(|v| (v + tick) % b).collect();
                    tick += 1;
                    batch.push(
                        RawExpression::new(n)
                            .term(qi(1), marks.clone(), vec![(i, j), (l, m)])
                            .term(qi(-2), marks, vec![(l, m), (i, j), (i, j)]),
                    );
                }
            }
        }
    }
    batch
}
