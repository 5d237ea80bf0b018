//! Finite Blaschke products that map prescribed boundary arcs once onto the
//! unit circle, built by a radial iteration on harmonic measure, together with
//! boundary interpolation on top of that construction.
//!
//! Angles are in radians, indices are 0-based.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod interpolation;
pub mod measure;
pub mod oracles;
pub mod product;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{pseudo_hyperbolic_distance, Angle, Arc, DiskPoint, Partition};
pub use interpolation::{
    check_near_one, check_radial_rays, check_zero_localization, solve_fip, solve_with_target,
    CheckOutcome, FipProblem, FipSolution, InterpolationProblem, NearOne, TargetOptions,
    TargetSolution,
};
pub use measure::{
    arc_harmonic_measure, min_radius_for_monotonicity, mu, mu_vector, MeasureVector,
};
pub use num_complex::Complex64;
pub use product::{separation_constant, BlaschkeProduct};
pub use solver::{
    convergence_ratio, solve, verify_solution, Outcome, Solution, SolverConfig, SolverTrace,
    TraceStep, VerificationReport,
};
