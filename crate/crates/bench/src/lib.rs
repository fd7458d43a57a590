//! Criterion benchmarks for matrix assembly and eigensolvers; see `benches/`.

use kernstab_core::{equispaced, KernelFamily, KernelSpec, PointSet};

/// Equispaced points on `[0, 1]` with endpoints and a 1-D kernel of the given family.
pub fn fixture_1d(family: KernelFamily, n: usize) -> (KernelSpec, PointSet) {
    let spec = KernelSpec::new(family, 1).expect("valid kernel");
    let points = equispaced(n, 0.0, 1.0, true).expect("valid layout");
    (spec, points)
}
