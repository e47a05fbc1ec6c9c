//! Fixtures shared by the benchmarks.

use reeb_ruling::oracle::random_simple_polygon_retrying;
use reeb_ruling::{lower_bound_polygon, FamilyParams, Polygon};

/// Spike counts for the scaling runs: 2n vertices each.
pub const SPIKES: [usize; 3] = [1_000, 10_000, 50_000];

pub fn lower_bound(n: usize) -> Polygon {
    lower_bound_polygon(FamilyParams::new(n)).expect("valid family parameters")
}

pub fn random(n: usize, seed: u64) -> Polygon {
    random_simple_polygon_retrying(n, seed).expect("random polygon")
}
