//! Harmonic measure of boundary arcs and the summed measure `μ` of a zero set.
//!
//! `ω(z, γ)` is evaluated in closed form from the antiderivative of the
//! Poisson kernel,
//!
//! ```text
//! ∫_0^x P_ρ(t) dt/2π = (1/π) arctan( (1+ρ)/(1−ρ) · tan(x/2) ),   |x| < π,
//! ```
//!
//! with the difference of two arctangents folded into a single `atan2`. The
//! arguments are scaled by `(1 − ρ)² cos(u/2) cos(v/2)` so nothing overflows
//! and both small and near-one measures keep full accuracy when `z` is close
//! to the circle. [`poisson_quadrature_oracle`] integrates the kernel directly
//! and serves as the independent check.

use std::f64::consts::{PI, TAU};

use crate::error::{invalid, Error, Result};
use crate::geometry::{Arc, DiskPoint, Partition};

/// Sum-to-`N` check applied by [`mu_vector`].
pub const MEASURE_SUM_TOLERANCE: f64 = 1e-8;

/// `ω(z, arc; 𝔻)`, the Poisson integral of the arc's indicator at `z`.
pub fn arc_harmonic_measure(z: DiskPoint, arc: &Arc) -> f64 {
    let length = arc.length();
    if length >= TAU {
        return 1.0;
    }
    let rho = z.radius();
    let t = z.angle().radians();
    // offsets of the arc endpoints seen from the ray through z, u ∈ [−π, π)
    let mut u = (arc.start().radians() - t).rem_euclid(TAU);
    if u >= PI {
        u -= TAU;
    }
    let v = u + length;
    if v <= PI {
        kernel_mass(rho, u, v)
    } else {
        // the arc passes through the antipode of z; split there
        kernel_mass(rho, u, PI) + kernel_mass(rho, -PI, v - TAU)
    }
}

/// Poisson mass of the offset interval `[u, v] ⊂ [−π, π]` at radius `rho`.
fn kernel_mass(rho: f64, u: f64, v: f64) -> f64 {
    let a = 1.0 - rho;
    let b = 1.0 + rho;
    let (su, cu) = (0.5 * u).sin_cos();
    let (sv, cv) = (0.5 * v).sin_cos();
    let y = a * b * (0.5 * (v - u)).sin();
    let x = a * a * cu * cv + b * b * su * sv;
    y.atan2(x) / PI
}

/// Composite midpoint rule for the Poisson integral over the arc.
pub fn poisson_quadrature_oracle(z: DiskPoint, arc: &Arc, n_points: usize) -> Result<f64> {
    if n_points < 16 {
        return Err(invalid("n_points", format!("{n_points} < 16")));
    }
    let length = arc.length();
    let h = length / n_points as f64;
    let start = arc.start().radians();
    let gap = z.boundary_gap();
    let zv = z.value();
    let sum: f64 = (0..n_points)
        .map(|i| {
            let theta = start + (i as f64 + 0.5) * h;
            let w = num_complex::Complex64::from_polar(1.0, theta);
            gap / (w - zv).norm_sqr()
        })
        .sum();
    Ok(sum * h / TAU)
}

/// `μ(arc) = Σ_n ω(z_n, arc)`.
pub fn mu(zeros: &[DiskPoint], arc: &Arc) -> f64 {
    zeros.iter().map(|&z| arc_harmonic_measure(z, arc)).sum()
}

/// Per-arc values of `μ`, in partition order.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureVector {
    values: Vec<f64>,
}

impl MeasureVector {
    /// Wraps raw values without checking the sum.
    pub fn from_values(values: Vec<f64>) -> Self {
        MeasureVector { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `E = Σ |1 − μ(γ_n)|`.
    pub fn error(&self) -> f64 {
        self.values.iter().map(|v| (1.0 - v).abs()).sum()
    }

    pub fn max_deviation(&self) -> f64 {
        self.values
            .iter()
            .map(|v| (1.0 - v).abs())
            .fold(0.0, f64::max)
    }

    /// Index of the smallest measure; ties go to the smallest index.
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate().skip(1) {
            if v < self.values[best] {
                best = i;
            }
        }
        best
    }
}

/// `μ(γ_n)` for every arc of the partition.
///
/// The values must sum to the number of zeros; a larger discrepancy than
/// [`MEASURE_SUM_TOLERANCE`] means the arcs or angles are inconsistent.
pub fn mu_vector(zeros: &[DiskPoint], partition: &Partition) -> Result<MeasureVector> {
    let values: Vec<f64> = partition.arcs().iter().map(|a| mu(zeros, a)).collect();
    let mv = MeasureVector { values };
    let expected = zeros.len() as f64;
    let sum = mv.sum();
    if !((sum - expected).abs() <= MEASURE_SUM_TOLERANCE) {
        return Err(Error::MeasureInvariant { sum, expected });
    }
    Ok(mv)
}

/// Smallest radius at which moving a zero outward along its arc's mid-ray
/// lowers the harmonic measure of every other arc:
/// `max(0, (1 − sin(L/2)) / cos(L/2))` with `L` the shortest arc length.
pub fn min_radius_for_monotonicity(partition: &Partition) -> f64 {
    monotonicity_radius(partition.shortest_length())
}

pub(crate) fn monotonicity_radius(shortest: f64) -> f64 {
    // (1 − sin a)/cos a = tan(π/4 − a/2), finite at a = π/2
    (0.25 * PI - 0.25 * shortest).tan().max(0.0)
}
