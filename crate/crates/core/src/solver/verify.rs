use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Partition;
use crate::measure::mu;
use crate::product::BlaschkeProduct;

use super::SolverTrace;

const SAMPLES_PER_ARC: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct ArcCheck {
    /// `μ(γ_n)`, which is also the winding of `B` over the arc.
    pub measure: f64,
    pub deviation: f64,
    /// Winding reconstructed from sampled values of `B` on the arc.
    pub sampled_winding: f64,
    /// Every sampled increment of `arg B` was positive.
    pub argument_increasing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub arcs: Vec<ArcCheck>,
    pub separation: f64,
    /// `B` at the start of the first arc.
    pub endpoint_value: Complex64,
    /// Largest angular spread of `B` over the arc endpoints, in turns.
    pub endpoint_deviation: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks that `product` maps every arc of `partition` once onto the circle.
///
/// Passes iff every `|1 − μ(γ_n)|` and the endpoint spread (measured in turns,
/// i.e. angle / 2π) are below `tol` and the zeros are simple.
pub fn verify_solution(
    product: &BlaschkeProduct,
    partition: &Partition,
    tol: f64,
) -> Result<VerificationReport> {
    if product.degree() != partition.len() {
        return Err(Error::CountMismatch {
            what: "zeros",
            expected: partition.len(),
            got: product.degree(),
        });
    }
    let zeros = product.zeros();
    let arcs: Vec<ArcCheck> = partition
        .arcs()
        .iter()
        .map(|arc| {
            let measure = mu(zeros, arc);
            let h = arc.length() / SAMPLES_PER_ARC as f64;
            let start = arc.start();
            let mut prev = product.evaluate_boundary(start);
            let mut total = 0.0;
            let mut increasing = true;
            for i in 1..=SAMPLES_PER_ARC {
                let next = product.evaluate_boundary(start.rotated(i as f64 * h));
                let step = (next * prev.conj()).arg();
                increasing &= step > 0.0;
                total += step;
                prev = next;
            }
            ArcCheck {
                measure,
                deviation: (1.0 - measure).abs(),
                sampled_winding: total / TAU,
                argument_increasing: increasing,
            }
        })
        .collect();

    let endpoint_value = product.evaluate_boundary(partition.arcs()[0].start());
    let endpoint_deviation = partition
        .arcs()
        .iter()
        .map(|a| {
            (product.evaluate_boundary(a.start()) * endpoint_value.conj())
                .arg()
                .abs()
                / TAU
        })
        .fold(0.0, f64::max);
    let max_deviation = arcs.iter().map(|a| a.deviation).fold(0.0, f64::max);
    let separation = product.separation_constant();
    let passed = max_deviation < tol && endpoint_deviation < tol && separation > 0.0;
    Ok(VerificationReport {
        arcs,
        separation,
        endpoint_value,
        endpoint_deviation,
        max_deviation,
        tolerance: tol,
        passed,
    })
}

/// `max_k E_{k+1} / E_k` over the trace; below 1 means geometric decay.
pub fn convergence_ratio(trace: &SolverTrace) -> Result<f64> {
    if trace.steps.len() < 2 {
        return Err(Error::TraceTooShort {
            steps: trace.steps.len(),
        });
    }
    Ok(trace
        .steps
        .windows(2)
        .filter(|w| w[0].error > 0.0)
        .map(|w| w[1].error / w[0].error)
        .fold(0.0, f64::max))
}
