//! Iterative construction of a Blaschke product that maps every arc of a
//! partition once onto the circle.
//!
//! One zero sits on a fixed ray (its *anchor*) inside each arc, all starting at
//! a common radius `R`. Each iteration takes the arc with the smallest measure
//! `μ(γ_m)` and pushes its zero outward along the anchor ray until
//! `μ(γ_m) = 1`. Zeros only ever move outward, so the separation constant never
//! drops below its initial value, and the error `Σ |1 − μ(γ_n)|` decays
//! geometrically.

mod verify;

pub use verify::{convergence_ratio, verify_solution, ArcCheck, VerificationReport};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Angle, DiskPoint, Partition};
use crate::measure::{arc_harmonic_measure, min_radius_for_monotonicity, mu_vector, MeasureVector};
use crate::product::{separation_constant, BlaschkeProduct};

pub const DEFAULT_EPSILON: f64 = 1e-6;
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

/// Largest radius the initial-radius search will try.
pub const RADIUS_CAP: f64 = 1.0 - 1e-9;

/// Outer end of the bisection bracket in [`radial_update`].
pub const BRACKET_OUTER: f64 = 1.0 - 1e-13;

const BISECTION_STEPS: usize = 60;
const INITIAL_RADIUS_FLOOR: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Required lower bound `C < 1` on the separation constant.
    pub separation_bound: f64,
    /// Stop once `Σ |1 − μ(γ_n)| < epsilon`.
    pub epsilon: f64,
    /// `0` evaluates the initial product only.
    pub max_iterations: usize,
    /// One ray angle per arc, strictly inside it. Defaults to the mid-points.
    pub anchors: Option<Vec<Angle>>,
    /// Initial radius to try first; rejected if it breaks the separation bound
    /// or lies below the monotonicity radius.
    pub radius_override: Option<f64>,
}

impl SolverConfig {
    pub fn new(separation_bound: f64) -> Self {
        SolverConfig {
            separation_bound,
            epsilon: DEFAULT_EPSILON,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            anchors: None,
            radius_override: None,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_anchors(mut self, anchors: Vec<Angle>) -> Self {
        self.anchors = Some(anchors);
        self
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius_override = Some(radius);
        self
    }

    /// Checks the scalar parameters and returns the anchors to use.
    pub fn resolve_anchors(&self, partition: &Partition) -> Result<Vec<Angle>> {
        check_separation_bound(self.separation_bound)?;
        if !(self.epsilon > 0.0) {
            return Err(invalid(
                "epsilon",
                format!("{} is not positive", self.epsilon),
            ));
        }
        if let Some(r) = self.radius_override {
            check_radius(r)?;
        }
        match &self.anchors {
            Some(anchors) => {
                check_anchors(partition, anchors)?;
                Ok(anchors.clone())
            }
            None => Ok(partition.midpoints()),
        }
    }
}

pub(crate) fn check_separation_bound(c: f64) -> Result<()> {
    if !(0.0..1.0).contains(&c) {
        return Err(invalid("C", format!("{c} is not in [0, 1)")));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(invalid("R_override", format!("{r} is not in [0, 1)")));
    }
    Ok(())
}

pub fn check_anchors(partition: &Partition, anchors: &[Angle]) -> Result<()> {
    if anchors.len() != partition.len() {
        return Err(Error::CountMismatch {
            what: "anchors",
            expected: partition.len(),
            got: anchors.len(),
        });
    }
    for (index, (arc, &anchor)) in partition.arcs().iter().zip(anchors).enumerate() {
        if !arc.contains_interior(anchor) {
            return Err(Error::AnchorOutsideArc {
                index,
                angle: anchor.radians(),
            });
        }
    }
    Ok(())
}

/// One iteration of the solver.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub iteration: usize,
    /// Arc whose zero moved to produce this step; `None` for the initial
    /// product.
    pub moved_index: Option<usize>,
    pub new_radius: Option<f64>,
    pub radii: Vec<f64>,
    pub measures: MeasureVector,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverTrace {
    pub initial_radius: f64,
    pub anchors: Vec<Angle>,
    pub steps: Vec<TraceStep>,
}

impl SolverTrace {
    pub fn errors(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.error)
    }

    pub fn last(&self) -> Option<&TraceStep> {
        self.steps.last()
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub product: BlaschkeProduct,
    pub trace: SolverTrace,
}

/// Result of a run that may or may not have converged.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// Rotation-normalized so the start of arc 0 maps to 1.
    pub product: BlaschkeProduct,
    pub initial_radius: f64,
    pub anchors: Vec<Angle>,
    /// Number of zero moves performed.
    pub iterations: usize,
    pub measures: MeasureVector,
    pub error: f64,
    pub converged: bool,
}

/// Zeros at `radius` on each anchor ray.
pub fn initial_zeros(anchors: &[Angle], radius: f64) -> Result<Vec<DiskPoint>> {
    anchors
        .iter()
        .map(|&a| DiskPoint::from_polar(radius, a))
        .collect()
}

/// Picks the common starting radius `R`.
///
/// `R` is at least the monotonicity radius of the partition and large enough
/// that the zeros at `R` on the anchor rays are separated by more than `C`.
/// An acceptable override is returned as is; otherwise the search starts at
/// `max(R_min, 0.5)` (or the rejected override) and halves the distance to
/// the circle until the bound holds.
pub fn choose_initial_radius(
    partition: &Partition,
    anchors: &[Angle],
    separation_bound: f64,
    radius_override: Option<f64>,
) -> Result<f64> {
    check_separation_bound(separation_bound)?;
    let r_min = min_radius_for_monotonicity(partition);
    let separation =
        |r: f64| -> Result<f64> { Ok(separation_constant(&initial_zeros(anchors, r)?)) };

    let mut r = match radius_override {
        Some(r) => {
            check_radius(r)?;
            if r >= r_min && separation(r)? > separation_bound {
                return Ok(r);
            }
            r.max(r_min)
        }
        None => r_min.max(INITIAL_RADIUS_FLOOR),
    };
    loop {
        let s = separation(r)?;
        if s > separation_bound {
            return Ok(r);
        }
        if r >= RADIUS_CAP {
            return Err(Error::SeparationUnreachable {
                radius: r,
                separation: s,
            });
        }
        r = (1.0 - 0.5 * (1.0 - r)).min(RADIUS_CAP);
    }
}

/// New radius for zero `m` along `anchor` so that `μ(γ_m) = 1`, all other
/// zeros fixed.
///
/// Bisection on `[current radius, 1 − 1e-13]`. Returns the current radius when
/// the arc already has measure ≥ 1.
pub fn radial_update(
    zeros: &[DiskPoint],
    partition: &Partition,
    m: usize,
    anchor: Angle,
) -> Result<f64> {
    if zeros.len() != partition.len() {
        return Err(Error::CountMismatch {
            what: "zeros",
            expected: partition.len(),
            got: zeros.len(),
        });
    }
    let arc = partition.arcs()[m];
    let current = zeros[m].radius();
    let others: f64 = zeros
        .iter()
        .enumerate()
        .filter(|&(n, _)| n != m)
        .map(|(_, &z)| arc_harmonic_measure(z, &arc))
        .sum();
    let excess = |r: f64| -> Result<f64> {
        Ok(others + arc_harmonic_measure(DiskPoint::from_polar(r, anchor)?, &arc) - 1.0)
    };
    bisect_radius(excess, current, m)
}

fn bisect_radius(excess: impl Fn(f64) -> Result<f64>, current: f64, m: usize) -> Result<f64> {
    let f_lo = excess(current)?;
    if f_lo >= 0.0 {
        return Ok(current);
    }
    let f_hi = excess(BRACKET_OUTER)?;
    if f_hi < 0.0 {
        return Err(Error::NoBracket {
            index: m,
            measure: 1.0 + f_hi,
        });
    }
    let (mut lo, mut hi) = (current, BRACKET_OUTER);
    let (mut f_lo, mut f_hi) = (f_lo, f_hi);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = excess(mid)?;
        if f < 0.0 {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
            f_hi = f;
        }
        if f == 0.0 {
            break;
        }
    }
    Ok(if -f_lo <= f_hi { lo } else { hi })
}

/// Runs the iteration from a fixed initial radius, reporting every step to
/// `observer`. Does not check the separation bound.
pub fn run_from_radius<F>(
    partition: &Partition,
    anchors: &[Angle],
    radius: f64,
    epsilon: f64,
    max_iterations: usize,
    mut observer: F,
) -> Result<Outcome>
where
    F: FnMut(&TraceStep),
{
    check_anchors(partition, anchors)?;
    let mut radii = vec![radius; partition.len()];
    let mut zeros = initial_zeros(anchors, radius)?;
    let mut moved: Option<(usize, f64)> = None;
    let mut k = 0;
    let (measures, error, converged) = loop {
        let measures = mu_vector(&zeros, partition)?;
        let error = measures.error();
        observer(&TraceStep {
            iteration: k,
            moved_index: moved.map(|(m, _)| m),
            new_radius: moved.map(|(_, r)| r),
            radii: radii.clone(),
            measures: measures.clone(),
            error,
        });
        if error < epsilon {
            break (measures, error, true);
        }
        if k >= max_iterations {
            break (measures, error, false);
        }
        let m = measures.argmin();
        let r = radial_update(&zeros, partition, m, anchors[m])?;
        radii[m] = r;
        zeros[m] = DiskPoint::from_polar(r, anchors[m])?;
        moved = Some((m, r));
        k += 1;
    };
    let product = BlaschkeProduct::from_zeros(zeros)
        .normalize_rotation(partition.arcs()[0].start(), Complex64::new(1.0, 0.0))?;
    Ok(Outcome {
        product,
        initial_radius: radius,
        anchors: anchors.to_vec(),
        iterations: k,
        measures,
        error,
        converged,
    })
}

/// Full run with initial-radius selection, streaming steps to `observer`.
/// Non-convergence is reported through [`Outcome::converged`].
pub fn solve_with<F>(partition: &Partition, config: &SolverConfig, observer: F) -> Result<Outcome>
where
    F: FnMut(&TraceStep),
{
    let anchors = config.resolve_anchors(partition)?;
    let radius = choose_initial_radius(
        partition,
        &anchors,
        config.separation_bound,
        config.radius_override,
    )?;
    run_from_radius(
        partition,
        &anchors,
        radius,
        config.epsilon,
        config.max_iterations,
        observer,
    )
}

/// Builds the product and the full trace. Running out of iterations is an
/// error that carries both.
pub fn solve(partition: &Partition, config: &SolverConfig) -> Result<Solution> {
    let mut steps = Vec::new();
    let outcome = solve_with(partition, config, |s| steps.push(s.clone()))?;
    let trace = SolverTrace {
        initial_radius: outcome.initial_radius,
        anchors: outcome.anchors.clone(),
        steps,
    };
    if !outcome.converged {
        return Err(Error::MaxIterationsExceeded {
            iterations: outcome.iterations,
            error: outcome.error,
            trace: Box::new(trace),
            product: Box::new(outcome.product),
        });
    }
    Ok(Solution {
        product: outcome.product,
        trace,
    })
}
