//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each. Exits nonzero if any
//! criterion fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use blaschke_core::interpolation::{check_near_one, check_radial_rays};
use blaschke_core::measure::poisson_quadrature_oracle;
use blaschke_core::oracles::{equal_arcs_delta, two_arcs_delta, two_arcs_r1};
use blaschke_core::solver::{initial_zeros, run_from_radius};
use blaschke_core::{
    arc_harmonic_measure, min_radius_for_monotonicity, mu, mu_vector, separation_constant, solve,
    solve_fip, solve_with_target, verify_solution, Angle, Arc, BlaschkeProduct, Complex64,
    DiskPoint, FipProblem, InterpolationProblem, Partition, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn six_arcs() -> Partition {
    let lengths = [
        PI / 5.0,
        3.0 * PI / 5.0,
        3.0 * PI / 5.0,
        3.0 * PI / 10.0,
        PI / 10.0,
        PI / 5.0,
    ];
    Partition::from_lengths(Angle::new(-PI / 10.0), &lengths).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close_all(got: &[f64], want: &[f64], tol: f64, what: &str) -> Result<(), String> {
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        ensure((g - w).abs() <= tol, || {
            format!("{what}[{i}] = {g:.6}, want {w} ± {tol}")
        })?;
    }
    Ok(())
}

#[allow(clippy::approx_constant)]
fn ac1() -> Check {
    let start = Instant::now();
    let p = six_arcs();
    let zeros = initial_zeros(&p.midpoints(), 0.86).map_err(|e| e.to_string())?;
    let mv = mu_vector(&zeros, &p).map_err(|e| e.to_string())?;
    let delta = separation_constant(&zeros);
    let zeros_855 = initial_zeros(&p.midpoints(), 0.855).map_err(|e| e.to_string())?;
    let delta_855 = separation_constant(&zeros_855);
    let elapsed = start.elapsed();

    let want = [0.8850, 1.1759, 1.1254, 1.1207, 0.6459, 1.0471];
    close_all(mv.values(), &want, 5e-4, "mu")?;
    ensure((mv.error() - 0.9383).abs() <= 1e-3, || {
        format!("E0 = {:.6}", mv.error())
    })?;
    ensure((delta - 0.7025).abs() <= 5e-4, || {
        format!("delta(0.86) = {delta:.6}")
    })?;
    ensure((delta_855 - 0.6854).abs() <= 5e-4, || {
        format!("delta(0.855) = {delta_855:.6}")
    })?;
    ensure(elapsed.as_millis() < 100, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "E0 = {:.5}, delta = {delta:.5} / {delta_855:.5}, {elapsed:?}",
        mv.error()
    ))
}

fn ac2() -> Check {
    let p = six_arcs();
    let mut steps = Vec::new();
    run_from_radius(&p, &p.midpoints(), 0.86, 1e-6, 1, |s| steps.push(s.clone()))
        .map_err(|e| e.to_string())?;
    let step = steps.get(1).ok_or("no first step")?;
    let moved = step.moved_index.ok_or("nothing moved")?;
    let r = step.new_radius.unwrap_or(f64::NAN);
    ensure(moved == 4, || {
        format!("moved index {moved} (0-based), want 4")
    })?;
    ensure((r - 0.9675).abs() <= 5e-4, || format!("new radius {r:.6}"))?;
    let want = [0.8623, 1.1526, 1.0966, 0.9739, 1.0000, 0.9146];
    close_all(step.measures.values(), &want, 5e-4, "mu")?;
    ensure((step.error - 0.4983).abs() <= 1e-3, || {
        format!("E1 = {:.6}", step.error)
    })?;
    Ok(format!(
        "moved arc 4 (0-based) to {r:.5}, E1 = {:.5}",
        step.error
    ))
}

fn ac3() -> Check {
    let start = Instant::now();
    let p = six_arcs();
    let mut steps = Vec::new();
    run_from_radius(&p, &p.midpoints(), 0.86, 0.0, 75, |s| steps.push(s.clone()))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let last = steps.last().ok_or("empty trace")?;
    ensure(last.iteration == 75, || {
        format!("stopped at {}", last.iteration)
    })?;
    let want = [0.9692, 0.8600, 0.8616, 0.9431, 0.9884, 0.9646];
    close_all(&last.radii, &want, 1e-3, "radius")?;
    ensure(last.error <= 1e-4, || format!("E75 = {:.3e}", last.error))?;
    ensure(elapsed.as_millis() < 1000, || format!("took {elapsed:?}"))?;
    Ok(format!("E75 = {:.3e}, {elapsed:?}", last.error))
}

fn ac4() -> Check {
    let p = Partition::from_lengths(Angle::ZERO, &[PI / 10.0, TAU - PI / 10.0])
        .map_err(|e| e.to_string())?;
    let r = min_radius_for_monotonicity(&p);
    ensure((r - 0.8541).abs() <= 5e-4, || format!("R = {r:.6}"))?;
    Ok(format!("R = {r:.5}"))
}

fn ac5(rng: &mut ChaCha8Rng) -> Check {
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        // θ ∈ (0, π]
        let theta = PI * (1.0 - rng.gen::<f64>());
        let start = Angle::new(TAU * rng.gen::<f64>());
        let p = Partition::from_lengths(start, &[theta, TAU - theta]).map_err(|e| e.to_string())?;
        let sol = solve(&p, &SolverConfig::new(0.0).with_epsilon(1e-12))
            .map_err(|e| format!("case {case}: {e}"))?;
        let r2 = sol.trace.initial_radius;
        let radii: Vec<f64> = sol.product.zeros().iter().map(|z| z.radius()).collect();
        let r1 = two_arcs_r1(theta, r2);
        let dr = (radii[0] - r1).abs().max((radii[1] - r2).abs());
        let dd = (sol.product.separation_constant() - two_arcs_delta(r1, r2)).abs();
        ensure(dr <= 1e-6 && dd <= 1e-6, || {
            format!("case {case}: theta = {theta}, radius off by {dr:.2e}, delta off by {dd:.2e}")
        })?;
        worst = worst.max(dr).max(dd);
    }
    Ok(format!("50 cases, worst deviation {worst:.2e}"))
}

fn ac6() -> Check {
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let p = Partition::equal(n, Angle::new(0.37 * n as f64)).map_err(|e| e.to_string())?;
        let sol = solve(&p, &SolverConfig::new(0.0)).map_err(|e| e.to_string())?;
        let first = &sol.trace.steps[0];
        ensure(sol.trace.steps.len() == 1, || {
            format!("N = {n}: {} steps", sol.trace.steps.len())
        })?;
        ensure(first.error < 1e-10, || {
            format!("N = {n}: E0 = {:.2e}", first.error)
        })?;
        let r = sol.trace.initial_radius;
        let dd = (sol.product.separation_constant() - equal_arcs_delta(n, r)).abs();
        ensure(dd <= 1e-9, || format!("N = {n}: delta off by {dd:.2e}"))?;
        worst = worst.max(dd);
    }
    Ok(format!(
        "N = 2..8 stop at step 0, worst delta deviation {worst:.2e}"
    ))
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize, min_len: f64) -> Partition {
    let free = TAU - n as f64 * min_len;
    let mut weights: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    weights
        .iter_mut()
        .for_each(|w| *w = min_len + free * *w / total);
    Partition::from_lengths(Angle::new(TAU * rng.gen::<f64>()), &weights).unwrap()
}

fn ac7(rng: &mut ChaCha8Rng) -> Check {
    // (a)
    let mut worst_sum: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let p = random_partition(rng, n, 0.0);
        let k = rng.gen_range(1..=10);
        let zeros: Vec<DiskPoint> = (0..k)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt() * 0.9999;
                DiskPoint::from_polar(r, Angle::new(TAU * rng.gen::<f64>())).unwrap()
            })
            .collect();
        let sum: f64 = p.arcs().iter().map(|a| mu(&zeros, a)).sum();
        worst_sum = worst_sum.max((sum - k as f64).abs());
    }
    ensure(worst_sum <= 1e-10, || {
        format!("(a) sum off by {worst_sum:.2e}")
    })?;

    // (c), (d) on the 0.01 radius grid
    let grid: Vec<f64> = (0..100).map(|i| i as f64 * 0.01).collect();
    for case in 0..50 {
        let n = rng.gen_range(2..=8);
        let p = random_partition(rng, n, PI / 32.0);
        let r_min = min_radius_for_monotonicity(&p);
        for (i, own) in p.arcs().iter().enumerate() {
            let at = |r: f64, arc: &Arc| {
                arc_harmonic_measure(DiskPoint::from_polar(r, own.midpoint()).unwrap(), arc)
            };
            for w in grid.windows(2) {
                ensure(at(w[1], own) > at(w[0], own), || {
                    format!("(c) case {case} arc {i}: not increasing at r = {}", w[1])
                })?;
            }
            for (j, other) in p.arcs().iter().enumerate().filter(|&(j, _)| j != i) {
                for w in grid.windows(2).filter(|w| w[0] >= r_min) {
                    ensure(at(w[1], other) <= at(w[0], other) + 1e-15, || {
                        format!("(d) case {case} arc {i} vs {j}: increasing at r = {}", w[1])
                    })?;
                }
            }
        }
    }

    // (e)
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let p = random_partition(rng, n, PI / 10.0);
        for (i, own) in p.arcs().iter().enumerate() {
            let z = DiskPoint::from_polar(0.9999, own.midpoint()).unwrap();
            let w = arc_harmonic_measure(z, own);
            ensure(w > 0.95, || format!("(e) own arc {i}: {w}"))?;
            for other in p.arcs().iter().filter(|a| *a != own) {
                let w = arc_harmonic_measure(z, other);
                ensure(w < 0.05, || format!("(e) other arc: {w}"))?;
            }
        }
    }

    // closed form against quadrature
    let mut worst_q: f64 = 0.0;
    for _ in 0..500 {
        let r = 0.999 * rng.gen::<f64>().sqrt();
        let z = DiskPoint::from_polar(r, Angle::new(TAU * rng.gen::<f64>())).unwrap();
        let arc = Arc::from_start_length(
            Angle::new(TAU * rng.gen::<f64>()),
            TAU * rng.gen_range(0.001..0.999),
        );
        let q = poisson_quadrature_oracle(z, &arc, 100_000).map_err(|e| e.to_string())?;
        worst_q = worst_q.max((arc_harmonic_measure(z, &arc) - q).abs());
    }
    ensure(worst_q < 1e-7, || {
        format!("quadrature off by {worst_q:.2e}")
    })?;
    Ok(format!(
        "sum off by {worst_sum:.1e}, quadrature off by {worst_q:.1e}, monotonicity and limits hold"
    ))
}

fn ac8(rng: &mut ChaCha8Rng) -> Check {
    let mut max_iters = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=12);
        let p = random_partition(rng, n, PI / 64.0);
        let config = SolverConfig::new(0.5);
        let sol = solve(&p, &config).map_err(|e| format!("case {case}: {e}"))?;
        let steps = &sol.trace.steps;
        let r0 = sol.trace.initial_radius;
        for w in steps.windows(2) {
            ensure(w[1].error <= w[0].error + 1e-12, || {
                format!("case {case}: error rose at step {}", w[1].iteration)
            })?;
            for (a, b) in w[0].radii.iter().zip(&w[1].radii) {
                ensure(b >= a, || {
                    format!("case {case}: radius shrank at step {}", w[1].iteration)
                })?;
            }
        }
        for s in steps {
            ensure(s.radii.iter().any(|r| (r - r0).abs() <= 1e-12), || {
                format!("case {case}: no zero at R in step {}", s.iteration)
            })?;
        }
        let first = initial_zeros(&sol.trace.anchors, r0).map_err(|e| e.to_string())?;
        let d0 = separation_constant(&first);
        let d1 = sol.product.separation_constant();
        ensure(d1 >= d0 - 1e-10, || {
            format!("case {case}: delta fell {d0} -> {d1}")
        })?;
        let last = steps.last().unwrap();
        ensure(last.error < 1e-6 && last.iteration <= 100_000, || {
            format!(
                "case {case}: E = {:.2e} after {}",
                last.error, last.iteration
            )
        })?;
        let report = verify_solution(&sol.product, &p, 1e-5).map_err(|e| e.to_string())?;
        ensure(report.passed, || {
            format!("case {case}: verification failed")
        })?;
        max_iters = max_iters.max(last.iteration);
    }
    Ok(format!("100 traces, at most {max_iters} iterations"))
}

fn distinct_angles(rng: &mut ChaCha8Rng, k: usize, min_gap: f64) -> Vec<Angle> {
    loop {
        let pts: Vec<Angle> = (0..k).map(|_| Angle::new(TAU * rng.gen::<f64>())).collect();
        let ok = pts.iter().enumerate().all(|(i, a)| {
            pts[i + 1..]
                .iter()
                .all(|b| a.circular_distance(*b) >= min_gap)
        });
        if ok {
            return pts;
        }
    }
}

fn unimodular_not_one(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.05..TAU - 0.05))
}

fn ac9(rng: &mut ChaCha8Rng) -> Check {
    let one = Complex64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    let mut max_radius: f64 = 0.0;
    for case in 0..20 {
        let n = rng.gen_range(1..=6);
        let nodes = distinct_angles(rng, n + 1, PI / 32.0);
        let beta = unimodular_not_one(rng);
        let problem = InterpolationProblem::new(nodes.clone(), beta, 0.5).with_near_one(0.3, 3);
        let sol = solve_with_target(&problem).map_err(|e| format!("case {case}: {e}"))?;
        let b = &sol.product;
        ensure(b.degree() == n, || {
            format!("case {case}: degree {}", b.degree())
        })?;
        for (j, node) in nodes[..n].iter().enumerate() {
            let d = (b.evaluate_boundary(*node) - one).norm();
            ensure(d <= 1e-6, || {
                format!("case {case}: |B(phi_{j}) - 1| = {d:.2e}")
            })?;
            worst = worst.max(d);
        }
        let d = (b.evaluate_boundary(nodes[n]) - beta).norm();
        ensure(d <= 1e-6, || {
            format!("case {case}: |B(phi_extra) - beta| = {d:.2e}")
        })?;
        worst = worst.max(d);
        let delta = b.separation_constant();
        ensure(delta > 0.5, || format!("case {case}: delta = {delta}"))?;
        ensure(check_near_one(b, 0.3, 3).passed, || {
            format!("case {case}: near-one disk check")
        })?;
        ensure(check_radial_rays(b, &nodes[..n], 3).passed, || {
            format!("case {case}: radial ray check")
        })?;
        max_radius = max_radius.max(sol.radius);
    }
    Ok(format!(
        "20 problems, worst node error {worst:.1e}, largest R {max_radius:.6}"
    ))
}

fn ac10(rng: &mut ChaCha8Rng) -> Check {
    let mut worst: f64 = 0.0;
    for case in 0..20 {
        let n = rng.gen_range(1..=5);
        let nodes = distinct_angles(rng, n, PI / 32.0);
        let targets: Vec<Complex64> = (0..n).map(|_| unimodular_not_one(rng)).collect();
        let problem = FipProblem {
            nodes: nodes.clone(),
            targets: targets.clone(),
        };
        let sol = solve_fip(&problem, 0.5).map_err(|e| format!("case {case}: {e}"))?;
        let b: &BlaschkeProduct = &sol.product;
        let bound = if n == 1 { 1 } else { n * (n - 1) };
        ensure(b.degree() <= bound, || {
            format!("case {case}: degree {}", b.degree())
        })?;
        for (node, t) in nodes.iter().zip(&targets) {
            worst = worst.max((b.evaluate_boundary(*node) - t).norm());
        }
        ensure(worst < 1e-5, || {
            format!("case {case}: node error {worst:.2e}")
        })?;
    }
    Ok(format!("20 problems, worst node error {worst:.1e}"))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_B1A5);
    let results: Vec<(&str, &str, Check)> = vec![
        ("AC-1", "six-arc initial state", ac1()),
        ("AC-2", "six-arc first iteration", ac2()),
        ("AC-3", "six-arc after 75 iterations", ac3()),
        ("AC-4", "monotonicity radius for pi/10", ac4()),
        ("AC-5", "two-arc closed form", ac5(&mut rng)),
        ("AC-6", "equal arcs", ac6()),
        ("AC-7", "harmonic measure properties", ac7(&mut rng)),
        (
            "AC-8",
            "solver invariants on random partitions",
            ac8(&mut rng),
        ),
        (
            "AC-9",
            "interpolation with a prescribed value",
            ac9(&mut rng),
        ),
        ("AC-10", "finite interpolation product", ac10(&mut rng)),
    ];
    let mut failed = 0;
    for (id, name, result) in &results {
        match result {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
