//! Shared inputs for the benchmarks.

use std::f64::consts::PI;

use blaschke_core::{Angle, Complex64, InterpolationProblem, Partition};

/// Six arcs starting at `−π/10` with lengths `π/5, 3π/5, 3π/5, 3π/10, π/10, π/5`.
pub fn six_arc_partition() -> Partition {
    let lengths = [
        PI / 5.0,
        3.0 * PI / 5.0,
        3.0 * PI / 5.0,
        3.0 * PI / 10.0,
        PI / 10.0,
        PI / 5.0,
    ];
    Partition::from_lengths(Angle::new(-PI / 10.0), &lengths).expect("valid lengths")
}

/// Nodes at `0, π/2, π`, extra point at `3π/2` with value `i`.
pub fn three_node_target() -> InterpolationProblem {
    let nodes = [0.0, 0.5 * PI, PI, 1.5 * PI].map(Angle::new).to_vec();
    InterpolationProblem::new(nodes, Complex64::new(0.0, 1.0), 0.5)
}
