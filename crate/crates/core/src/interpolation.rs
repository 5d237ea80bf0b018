//! Blaschke products that take the value 1 at `N` prescribed boundary points
//! and a prescribed value `β ≠ 1` at one more point, and the product
//! construction for general boundary interpolation built on top of them.
//!
//! The `N` nodes cut the circle into arcs; the zeros of arcs `1..N−1` sit on
//! fixed rays as in the plain solver. The zero of the arc containing the extra
//! point moves on a ray at a free angle `θ` inside that arc. For each `θ` the
//! plain iteration is run at a fixed starting radius `R`, and the winding of
//! `B_θ` from the arc start to the extra point is compared with `arg β / 2π`.
//! The winding decreases as `θ` moves counterclockwise, so bisection on `θ`
//! hits the target. When no `θ` brackets it, or the finished product is not
//! close enough to 1 where required, `R` moves halfway to the circle and the
//! search repeats.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Angle, Arc, Partition};
use crate::measure::{min_radius_for_monotonicity, mu, MeasureVector};
use crate::product::BlaschkeProduct;
use crate::solver::{self, check_separation_bound, Outcome, RADIUS_CAP};

const SCAN_POINTS: usize = 32;
const EDGE_PROBES: usize = 40;
const OUTER_BISECTION_STEPS: usize = 100;

/// Requirement that `B` stays within `2^{−m−2}` of 1 on `|z| ≤ s` and within
/// `2^{−m}` of 1 on the rays to the nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NearOne {
    /// Disk radius `s ∈ (0, 1)`.
    pub radius: f64,
    /// Precision level `m`.
    pub level: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationProblem {
    /// `N + 1` distinct points; the last one gets the value `beta`, the others 1.
    pub nodes: Vec<Angle>,
    pub beta: Complex64,
    pub near_one: Option<NearOne>,
    pub separation_bound: f64,
}

impl InterpolationProblem {
    pub fn new(nodes: Vec<Angle>, beta: Complex64, separation_bound: f64) -> Self {
        InterpolationProblem {
            nodes,
            beta,
            near_one: None,
            separation_bound,
        }
    }

    pub fn with_near_one(mut self, radius: f64, level: u32) -> Self {
        self.near_one = Some(NearOne { radius, level });
        self
    }

    pub fn degree(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.len() < 2 {
            return Err(Error::CountMismatch {
                what: "nodes (at least)",
                expected: 2,
                got: self.nodes.len(),
            });
        }
        check_distinct(&self.nodes, |a, b| Error::NodesTooClose {
            first: a,
            second: b,
        })?;
        check_unimodular(self.beta)?;
        if Angle::new(self.beta.arg()).approx_eq(Angle::ZERO) {
            return Err(invalid("beta", "must differ from 1"));
        }
        if let Some(near) = self.near_one {
            if !(near.radius > 0.0 && near.radius < 1.0) {
                return Err(invalid("s", format!("{} is not in (0, 1)", near.radius)));
            }
        }
        check_separation_bound(self.separation_bound)
    }
}

fn check_distinct(nodes: &[Angle], err: impl Fn(f64, f64) -> Error) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            if a.approx_eq(*b) {
                return Err(err(a.radians(), b.radians()));
            }
        }
    }
    Ok(())
}

fn check_unimodular(v: Complex64) -> Result<()> {
    let modulus = v.norm();
    if !((modulus - 1.0).abs() <= 1e-12) {
        return Err(Error::NotUnimodular { modulus });
    }
    Ok(())
}

/// Knobs for [`solve_with_target_using`].
#[derive(Clone, Debug, PartialEq)]
pub struct TargetOptions {
    /// Accuracy of each inner solver run.
    pub epsilon: f64,
    pub max_iterations: usize,
    /// Accepted `|winding − arg β / 2π|` at the end of the angle search.
    pub target_tolerance: f64,
    /// Where the fixed zeros sit inside their arcs, as a fraction of the arc
    /// length. `0.5` is the mid-point.
    pub anchor_fraction: f64,
    /// Lower bound for the first radius tried.
    pub initial_radius: Option<f64>,
    pub sampling: Sampling,
}

impl Default for TargetOptions {
    fn default() -> Self {
        TargetOptions {
            epsilon: 1e-11,
            max_iterations: solver::DEFAULT_MAX_ITERATIONS,
            target_tolerance: 1e-10,
            anchor_fraction: 0.5,
            initial_radius: None,
            sampling: Sampling::default(),
        }
    }
}

/// Grid sizes for the sampled near-one checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sampling {
    pub disk_radii: usize,
    pub disk_angles: usize,
    pub ray_points: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            disk_radii: 64,
            disk_angles: 256,
            ray_points: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TargetSolution {
    pub product: BlaschkeProduct,
    /// Arcs between consecutive nodes, starting at the node that follows the
    /// extra point, so the free zero belongs to the last arc.
    pub partition: Partition,
    /// `partition.arcs()[i]` starts at `problem.nodes[node_order[i]]`.
    pub node_order: Vec<usize>,
    pub anchors: Vec<Angle>,
    pub free_angle: Angle,
    /// Starting radius of the final inner run.
    pub radius: f64,
    pub measures: MeasureVector,
    pub error: f64,
    /// Inner runs performed over the whole search.
    pub inner_runs: usize,
    /// Zero moves in the final inner run.
    pub iterations: usize,
}

/// Degree-`N` product with `B(φ_j) = 1` for the first `N` nodes,
/// `B(φ_{N+1}) = β` and separation above the bound.
pub fn solve_with_target(problem: &InterpolationProblem) -> Result<TargetSolution> {
    solve_with_target_using(problem, &TargetOptions::default())
}

pub fn solve_with_target_using(
    problem: &InterpolationProblem,
    options: &TargetOptions,
) -> Result<TargetSolution> {
    problem.validate()?;
    if !(options.anchor_fraction > 0.0 && options.anchor_fraction < 1.0) {
        return Err(invalid(
            "anchor_fraction",
            format!("{} is not in (0, 1)", options.anchor_fraction),
        ));
    }
    let setup = Setup::new(problem, options.anchor_fraction)?;
    let target = Angle::new(problem.beta.arg()).radians() / TAU;

    let mut radius = options
        .initial_radius
        .unwrap_or(0.5)
        .max(min_radius_for_monotonicity(&setup.partition))
        .min(RADIUS_CAP);
    let mut runs = 0;
    loop {
        if let Some(found) = setup.search(radius, target, options, &mut runs)? {
            if accept(&found.outcome.product, problem, &setup, options) {
                return Ok(setup.finish(found, radius, runs));
            }
        }
        if radius >= RADIUS_CAP {
            return Err(Error::TargetUnreachable { radius });
        }
        radius = (1.0 - 0.5 * (1.0 - radius)).min(RADIUS_CAP);
    }
}

fn accept(
    product: &BlaschkeProduct,
    problem: &InterpolationProblem,
    setup: &Setup,
    options: &TargetOptions,
) -> bool {
    if !(product.separation_constant() > problem.separation_bound) {
        return false;
    }
    match problem.near_one {
        None => true,
        Some(near) => {
            let s = options.sampling;
            check_near_one_with(
                product,
                near.radius,
                near.level,
                s.disk_radii,
                s.disk_angles,
            )
            .passed
                && check_radial_rays_with(product, &setup.base_nodes, near.level, s.ray_points)
                    .passed
        }
    }
}

struct Setup {
    partition: Partition,
    node_order: Vec<usize>,
    base_nodes: Vec<Angle>,
    fixed_anchors: Vec<Angle>,
    free_arc: Arc,
    /// From the start of the free arc to the extra point.
    sub_arc: Arc,
    anchor_fraction: f64,
}

struct Found {
    outcome: Outcome,
    free_angle: Angle,
}

impl Setup {
    fn new(problem: &InterpolationProblem, anchor_fraction: f64) -> Result<Self> {
        let n = problem.degree();
        let extra = problem.nodes[n];
        let mut node_order: Vec<usize> = (0..n).collect();
        node_order.sort_by(|&a, &b| {
            extra
                .ccw_to(problem.nodes[a])
                .total_cmp(&extra.ccw_to(problem.nodes[b]))
        });
        let sorted: Vec<Angle> = node_order.iter().map(|&i| problem.nodes[i]).collect();
        let partition = if n == 1 {
            Partition::new(vec![Arc::full_circle(sorted[0])])?
        } else {
            let arcs = (0..n)
                .map(|i| Arc::new(sorted[i], sorted[(i + 1) % n]))
                .collect();
            Partition::new(arcs)?
        };
        let free_arc = partition.arcs()[n - 1];
        let fixed_anchors = partition.arcs()[..n - 1]
            .iter()
            .map(|a| a.point_at(anchor_fraction))
            .collect();
        Ok(Setup {
            sub_arc: Arc::new(free_arc.start(), extra),
            free_arc,
            fixed_anchors,
            base_nodes: problem.nodes[..n].to_vec(),
            partition,
            node_order,
            anchor_fraction,
        })
    }

    fn anchors(&self, free: Angle) -> Vec<Angle> {
        let mut a = self.fixed_anchors.clone();
        a.push(free);
        a
    }

    /// Inner run with the free zero at fraction `f` of the free arc; returns
    /// the outcome and `winding − target`.
    fn probe(
        &self,
        f: f64,
        radius: f64,
        target: f64,
        options: &TargetOptions,
        runs: &mut usize,
    ) -> Option<(Found, f64)> {
        let free_angle = self.free_arc.point_at(f);
        if !self.free_arc.contains_interior(free_angle) {
            return None;
        }
        *runs += 1;
        let outcome = solver::run_from_radius(
            &self.partition,
            &self.anchors(free_angle),
            radius,
            options.epsilon,
            options.max_iterations,
            |_| {},
        )
        .ok()
        .filter(|o| o.converged)?;
        let winding = mu(outcome.product.zeros(), &self.sub_arc);
        Some((
            Found {
                outcome,
                free_angle,
            },
            winding - target,
        ))
    }

    /// Angle search at a fixed radius. `None` when no angle brackets the
    /// target.
    fn search(
        &self,
        radius: f64,
        target: f64,
        options: &TargetOptions,
        runs: &mut usize,
    ) -> Result<Option<Found>> {
        let tol = options.target_tolerance;
        let probe = |f: f64, runs: &mut usize| self.probe(f, radius, target, options, runs);

        // the default anchor may already hit the target
        if let Some((found, d)) = probe(self.anchor_fraction, runs) {
            if d.abs() <= tol {
                return Ok(Some(found));
            }
        }

        // the discrepancy decreases in f: find f_lo with d > 0 and f_hi with d < 0
        let mut samples: Vec<(f64, f64)> = Vec::with_capacity(SCAN_POINTS + 2);
        for i in 1..=SCAN_POINTS {
            let f = i as f64 / (SCAN_POINTS + 1) as f64;
            if let Some((found, d)) = probe(f, runs) {
                if d.abs() <= tol {
                    return Ok(Some(found));
                }
                samples.push((f, d));
            }
        }
        let Some(&(first_f, first_d)) = samples.first() else {
            return Ok(None);
        };
        let &(last_f, last_d) = samples.last().expect("non-empty");
        if first_d < 0.0 {
            // even the smallest angle winds too little: creep toward the start
            for k in 1..=EDGE_PROBES {
                let f = first_f * 0.5f64.powi(k as i32);
                match probe(f, runs) {
                    Some((found, d)) if d.abs() <= tol => return Ok(Some(found)),
                    Some((_, d)) if d > 0.0 => {
                        samples.insert(0, (f, d));
                        break;
                    }
                    Some(_) => {}
                    None => break,
                }
            }
        } else if last_d > 0.0 {
            for k in 1..=EDGE_PROBES {
                let f = 1.0 - (1.0 - last_f) * 0.5f64.powi(k as i32);
                match probe(f, runs) {
                    Some((found, d)) if d.abs() <= tol => return Ok(Some(found)),
                    Some((_, d)) if d < 0.0 => {
                        samples.push((f, d));
                        break;
                    }
                    Some(_) => {}
                    None => break,
                }
            }
        }
        let Some(window) = samples.windows(2).find(|w| w[0].1 > 0.0 && w[1].1 < 0.0) else {
            return Ok(None);
        };
        let (mut lo, mut hi) = (window[0].0, window[1].0);
        let mut best: Option<(Found, f64)> = None;
        for _ in 0..OUTER_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let Some((found, d)) = probe(mid, runs) else {
                break;
            };
            if best.as_ref().map_or(true, |(_, bd)| d.abs() < bd.abs()) {
                best = Some((found, d));
            }
            if d.abs() <= tol {
                break;
            }
            if d > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            debug_assert!(lo < hi, "angle bracket collapsed");
        }
        // a jump in the discrepancy leaves the bracket without a root; that
        // radius is unusable
        Ok(best.filter(|(_, d)| d.abs() <= 100.0 * tol).map(|(f, _)| f))
    }

    fn finish(self, found: Found, radius: f64, runs: usize) -> TargetSolution {
        let Found {
            outcome,
            free_angle,
        } = found;
        TargetSolution {
            anchors: outcome.anchors,
            product: outcome.product,
            partition: self.partition,
            node_order: self.node_order,
            free_angle,
            radius,
            measures: outcome.measures,
            error: outcome.error,
            inner_runs: runs,
            iterations: outcome.iterations,
        }
    }
}

/// Outcome of a sampled check: the largest deviation seen against the
/// threshold it had to stay under.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub worst: f64,
    pub threshold: f64,
}

/// `|1 − B(z)| < 2^{−m−2}` on a polar grid over `|z| ≤ s`.
pub fn check_near_one(product: &BlaschkeProduct, s: f64, m: u32) -> CheckOutcome {
    let d = Sampling::default();
    check_near_one_with(product, s, m, d.disk_radii, d.disk_angles)
}

pub fn check_near_one_with(
    product: &BlaschkeProduct,
    s: f64,
    m: u32,
    radii: usize,
    angles: usize,
) -> CheckOutcome {
    let threshold = 0.5f64.powi(m as i32 + 2);
    let one = Complex64::new(1.0, 0.0);
    let mut worst = (one - product.evaluate(Complex64::new(0.0, 0.0))).norm();
    for i in 1..radii.max(2) {
        let r = s * i as f64 / (radii.max(2) - 1) as f64;
        for j in 0..angles.max(1) {
            let z = Complex64::from_polar(r, TAU * j as f64 / angles.max(1) as f64);
            worst = worst.max((one - product.evaluate(z)).norm());
        }
    }
    CheckOutcome {
        passed: worst < threshold,
        worst,
        threshold,
    }
}

/// `|1 − B(r e^{iφ_j})| < 2^{−m}` for `0 < r ≤ 1` along every node ray.
pub fn check_radial_rays(product: &BlaschkeProduct, nodes: &[Angle], m: u32) -> CheckOutcome {
    check_radial_rays_with(product, nodes, m, Sampling::default().ray_points)
}

pub fn check_radial_rays_with(
    product: &BlaschkeProduct,
    nodes: &[Angle],
    m: u32,
    points: usize,
) -> CheckOutcome {
    let threshold = 0.5f64.powi(m as i32);
    let one = Complex64::new(1.0, 0.0);
    let points = points.max(1);
    let worst = nodes
        .iter()
        .flat_map(|node| {
            (1..=points).map(move |i| {
                let r = i as f64 / points as f64;
                (one - product.evaluate(Complex64::from_polar(r, node.radians()))).norm()
            })
        })
        .fold(0.0, f64::max);
    CheckOutcome {
        passed: worst < threshold,
        worst,
        threshold,
    }
}

/// `(1 − |z_j|) / |z_j − e^{iφ_k}| ≤ 2^{−m}` for every zero except the one
/// nearest the extra point `nodes[N]`, against all `N + 1` nodes.
pub fn check_zero_localization(
    product: &BlaschkeProduct,
    nodes: &[Angle],
    m: u32,
) -> Result<CheckOutcome> {
    if product.degree() < 2 {
        return Err(invalid("degree", "zero localization needs degree >= 2"));
    }
    let extra = nodes
        .last()
        .ok_or_else(|| invalid("nodes", "empty node list"))?
        .unit_point();
    let zeros = product.zeros();
    let skip = zeros
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1.value() - extra)
                .norm()
                .total_cmp(&(b.1.value() - extra).norm())
        })
        .map(|(i, _)| i)
        .expect("degree >= 2");
    let threshold = 0.5f64.powi(m as i32);
    let worst = zeros
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .flat_map(|(_, z)| {
            nodes
                .iter()
                .map(move |node| (1.0 - z.radius()) / (z.value() - node.unit_point()).norm())
        })
        .fold(0.0, f64::max);
    Ok(CheckOutcome {
        passed: worst <= threshold,
        worst,
        threshold,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FipProblem {
    pub nodes: Vec<Angle>,
    /// Unimodular values `ψ_n`, one per node.
    pub targets: Vec<Complex64>,
}

impl FipProblem {
    pub fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(invalid("nodes", "need at least one node"));
        }
        if self.targets.len() != self.nodes.len() {
            return Err(Error::CountMismatch {
                what: "targets",
                expected: self.nodes.len(),
                got: self.targets.len(),
            });
        }
        check_distinct(&self.nodes, |a, b| Error::DuplicateNodes {
            first: a,
            second: b,
        })?;
        self.targets.iter().try_for_each(|&t| check_unimodular(t))
    }
}

#[derive(Clone, Debug)]
pub struct FipSolution {
    pub product: BlaschkeProduct,
    /// One factor per node whose target is not 1, in node order.
    pub factors: Vec<(usize, BlaschkeProduct)>,
    /// Common lower bound on the factors' starting radius.
    pub radius: f64,
}

/// `B(φ_n) = ψ_n` for every node, as a product of one factor per node.
///
/// Factor `k` has degree `N − 1`, equals 1 at the other nodes and `ψ_k` at
/// `φ_k`. Nodes with `ψ_k = 1` need no factor. If every target is 1 the
/// result is the degree-`N` product that maps each arc between nodes onto the
/// circle. Factors place their fixed zeros at different fractions of each arc
/// so zeros of different factors do not share rays, and the common starting
/// radius is pushed outward until the product is separated by more than `C`.
pub fn solve_fip(problem: &FipProblem, separation_bound: f64) -> Result<FipSolution> {
    problem.validate()?;
    check_separation_bound(separation_bound)?;
    let n = problem.nodes.len();
    let one = Complex64::new(1.0, 0.0);

    if n == 1 {
        let node = problem.nodes[0];
        let rotation = problem.targets[0] * node.unit_point().conj();
        let product = BlaschkeProduct::new(rotation, vec![crate::geometry::DiskPoint::ORIGIN])?;
        return Ok(FipSolution {
            factors: vec![(0, product.clone())],
            product,
            radius: 0.0,
        });
    }

    let active: Vec<usize> = (0..n)
        .filter(|&k| !Angle::new(problem.targets[k].arg()).approx_eq(Angle::ZERO))
        .collect();

    if active.is_empty() {
        let partition = Partition::from_points(&problem.nodes)?;
        let config = solver::SolverConfig::new(separation_bound).with_epsilon(1e-11);
        let solved = solver::solve(&partition, &config)?;
        return Ok(FipSolution {
            factors: vec![(0, solved.product.clone())],
            product: solved.product,
            radius: solved.trace.initial_radius,
        });
    }

    let mut radius = 0.5;
    loop {
        let mut product = BlaschkeProduct::new(one, vec![])?;
        let mut factors = Vec::with_capacity(active.len());
        for &k in &active {
            let mut nodes: Vec<Angle> = (0..n)
                .filter(|&j| j != k)
                .map(|j| problem.nodes[j])
                .collect();
            nodes.push(problem.nodes[k]);
            let sub = InterpolationProblem::new(nodes, problem.targets[k], 0.0);
            let options = TargetOptions {
                anchor_fraction: (k + 1) as f64 / (n + 1) as f64,
                initial_radius: Some(radius),
                ..TargetOptions::default()
            };
            let factor = solve_with_target_using(&sub, &options)?.product;
            product = product.multiply(&factor);
            factors.push((k, factor));
        }
        let separation = product.separation_constant();
        if separation > separation_bound {
            return Ok(FipSolution {
                product,
                factors,
                radius,
            });
        }
        if radius >= RADIUS_CAP {
            return Err(Error::SeparationUnreachable { radius, separation });
        }
        radius = (1.0 - 0.5 * (1.0 - radius)).min(RADIUS_CAP);
    }
}
