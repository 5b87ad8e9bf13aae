//! Shared inputs for the criterion benchmarks.

use spindex_core::blocks::{self, SixColors};
use spindex_core::Triangulation;

pub fn fig8(tets: usize) -> Triangulation {
    let name = if tets == 2 { "fig8-2tet" } else { "fig8-3tet" };
    Triangulation::fixture(name).expect("embedded fixture")
}

/// Admissible six-tuples with colors `<= max`, every `step`-th one.
pub fn sample_six(max: u64, step: usize) -> Vec<SixColors> {
    blocks::admissible_six(max).into_iter().step_by(step).collect()
}
