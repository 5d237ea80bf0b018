//! `blaschke`: solve, interpolate, verify and plot from JSON problem files.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;
mod plot;
mod problem;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blaschke_core::interpolation::{
    check_near_one, check_radial_rays, check_zero_localization, solve_with_target_using,
    TargetOptions,
};
use blaschke_core::solver::{choose_initial_radius, run_from_radius};
use blaschke_core::{
    separation_constant, solve_fip, verify_solution, Angle, BlaschkeProduct, Complex64, DiskPoint,
    Error, Partition, SolverConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{to_json_line, to_pretty_json, CheckValue, Checks, ResultFile, TraceRecord};
use problem::{Overrides, Problem, ProblemFile};

const NODE_TOLERANCE: f64 = 1e-6;
const FIP_TOLERANCE: f64 = 1e-5;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    NotConverged,
    Unreachable(String),
    VerificationFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::TargetUnreachable { .. } | Error::SeparationUnreachable { .. } => {
                CliError::Unreachable(e.to_string())
            }
            Error::MaxIterationsExceeded { .. } => CliError::NotConverged,
            other => CliError::Input(other.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::NotConverged => 2,
            CliError::Unreachable(_) => 3,
            CliError::VerificationFailed => 4,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "blaschke",
    version,
    about = "Blaschke products with prescribed boundary behaviour"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SolverFlags {
    /// Stop once the summed measure error drops below this.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Cap on zero moves.
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Starting radius to try first (overrides `R_override`).
    #[arg(long = "seed-radius")]
    seed_radius: Option<f64>,
}

impl From<SolverFlags> for Overrides {
    fn from(f: SolverFlags) -> Self {
        Overrides {
            epsilon: f.epsilon,
            max_iterations: f.max_iter,
            seed_radius: f.seed_radius,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Map every arc of a partition once onto the circle.
    Solve {
        problem: PathBuf,
        /// Result file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Line-delimited trace, one record per iteration.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Interpolation and finite interpolation problems.
    Interpolate {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Check a result file against its problem.
    Verify {
        result: PathBuf,
        problem: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Draw a result as SVG.
    Plot {
        result: PathBuf,
        problem: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Shade `|z| ≥ R`, with `R` the smallest zero radius.
        #[arg(long)]
        annulus: bool,
    },
    /// Run the partition solver and stream only the trace.
    Trace {
        problem: PathBuf,
        /// Trace file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(m) => eprintln!("error: {m}"),
                CliError::Unreachable(m) => eprintln!("error: {m}"),
                CliError::NotConverged => eprintln!("error: did not converge"),
                CliError::VerificationFailed => eprintln!("verification failed"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve {
            problem,
            out,
            trace,
            solver,
        } => cmd_solve(&problem, out.as_deref(), trace.as_deref(), solver.into()),
        Command::Interpolate {
            problem,
            out,
            solver,
        } => cmd_interpolate(&problem, out.as_deref(), solver.into()),
        Command::Verify {
            result,
            problem,
            tol,
            format,
        } => cmd_verify(&result, &problem, tol, format),
        Command::Plot {
            result,
            problem,
            out,
            annulus,
        } => cmd_plot(&result, &problem, &out, annulus),
        Command::Trace {
            problem,
            out,
            solver,
        } => cmd_trace(&problem, out.as_deref(), solver.into()),
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Input(format!("cannot write {}: {e}", path.display()))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_error(p, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}"))),
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn partition_problem(
    path: &Path,
    overrides: Overrides,
) -> Result<(Partition, SolverConfig), CliError> {
    match ProblemFile::read(path)?.into_problem(overrides)? {
        Problem::Partition { partition, config } => Ok((partition, config)),
        _ => Err(CliError::Input(
            "expected a partition-mode problem; use `interpolate` for the other modes".into(),
        )),
    }
}

/// Runs the partition solver, streaming trace records to `trace`. Everything
/// that can be rejected up front is checked before `trace` is opened.
fn run_partition(
    partition: &Partition,
    config: &SolverConfig,
    trace: impl FnOnce() -> Result<Option<Box<dyn Write>>, CliError>,
) -> Result<ResultFile, CliError> {
    let anchors = config.resolve_anchors(partition)?;
    let radius = choose_initial_radius(
        partition,
        &anchors,
        config.separation_bound,
        config.radius_override,
    )?;
    let mut trace = trace()?;
    let mut write_failure = None;
    let outcome = run_from_radius(
        partition,
        &anchors,
        radius,
        config.epsilon,
        config.max_iterations,
        |step| {
            if let Some(w) = trace.as_mut() {
                let zeros: Vec<DiskPoint> = step
                    .radii
                    .iter()
                    .zip(&anchors)
                    .filter_map(|(&r, &a)| DiskPoint::from_polar(r, a).ok())
                    .collect();
                let delta = separation_constant(&zeros);
                let line = to_json_line(&TraceRecord::new(step, delta));
                if let Err(e) = w.write_all(line.as_bytes()) {
                    write_failure.get_or_insert(e);
                }
            }
        },
    )?;
    if let Some(mut w) = trace {
        if let Some(e) = write_failure.take().or_else(|| w.flush().err()) {
            return Err(CliError::Input(format!("cannot write trace: {e}")));
        }
    }
    let mut result = ResultFile::from_product(&outcome.product);
    result.measures = outcome.measures.values().to_vec();
    result.error = outcome.error;
    result.iterations = outcome.iterations;
    result.converged = outcome.converged;
    result.initial_radius = Some(outcome.initial_radius);
    Ok(result)
}

fn cmd_solve(
    problem: &Path,
    out: Option<&Path>,
    trace: Option<&Path>,
    overrides: Overrides,
) -> Result<(), CliError> {
    let (partition, config) = partition_problem(problem, overrides)?;
    let result = run_partition(&partition, &config, || {
        trace.map(|p| sink(Some(p))).transpose()
    })?;
    write_text(out, &to_pretty_json(&result))?;
    if result.converged {
        Ok(())
    } else {
        Err(CliError::NotConverged)
    }
}

fn cmd_trace(problem: &Path, out: Option<&Path>, overrides: Overrides) -> Result<(), CliError> {
    let (partition, config) = partition_problem(problem, overrides)?;
    let result = run_partition(&partition, &config, || sink(out).map(Some))?;
    if result.converged {
        Ok(())
    } else {
        Err(CliError::NotConverged)
    }
}

fn check(passed: bool, worst: f64, threshold: f64) -> CheckValue {
    CheckValue {
        passed,
        worst,
        threshold,
    }
}

fn cmd_interpolate(path: &Path, out: Option<&Path>, overrides: Overrides) -> Result<(), CliError> {
    let one = Complex64::new(1.0, 0.0);
    let result = match ProblemFile::read(path)?.into_problem(overrides)? {
        Problem::Partition { .. } => {
            return Err(CliError::Input(
                "expected an interpolation or fip problem; use `solve` for partitions".into(),
            ))
        }
        Problem::Interpolation {
            problem,
            initial_radius,
            epsilon,
            max_iterations,
        } => {
            let defaults = TargetOptions::default();
            let options = TargetOptions {
                epsilon: epsilon.unwrap_or(defaults.epsilon),
                max_iterations: max_iterations.unwrap_or(defaults.max_iterations),
                initial_radius,
                ..defaults
            };
            let sol = solve_with_target_using(&problem, &options)?;
            let b = &sol.product;
            let n = problem.degree();
            let node_error = problem.nodes[..n]
                .iter()
                .map(|&p| (b.evaluate_boundary(p) - one).norm())
                .fold(0.0, f64::max);
            let beta_error = (b.evaluate_boundary(problem.nodes[n]) - problem.beta).norm();
            let delta = b.separation_constant();
            let mut checks = Checks {
                nodes: Some(check(
                    node_error < NODE_TOLERANCE,
                    node_error,
                    NODE_TOLERANCE,
                )),
                beta: Some(check(
                    beta_error < NODE_TOLERANCE,
                    beta_error,
                    NODE_TOLERANCE,
                )),
                separation: check(
                    delta > problem.separation_bound,
                    delta,
                    problem.separation_bound,
                ),
                ..Checks::default()
            };
            if let Some(near) = problem.near_one {
                checks.near_one = Some(check_near_one(b, near.radius, near.level).into());
                checks.radial_rays =
                    Some(check_radial_rays(b, &problem.nodes[..n], near.level).into());
                if n >= 2 {
                    checks.zero_localization =
                        Some(check_zero_localization(b, &problem.nodes, near.level)?.into());
                }
            }
            let mut result = ResultFile::from_product(b);
            result.measures = sol.measures.values().to_vec();
            result.error = sol.error;
            result.iterations = sol.iterations;
            result.initial_radius = Some(sol.radius);
            result.degree = Some(b.degree());
            result.checks = Some(checks);
            result
        }
        Problem::Fip {
            problem,
            separation_bound,
        } => {
            let sol = solve_fip(&problem, separation_bound)?;
            let b = &sol.product;
            let worst = fip_error(b, &problem.nodes, &problem.targets);
            let delta = b.separation_constant();
            let mut result = ResultFile::from_product(b);
            result.error = worst;
            result.degree = Some(b.degree());
            result.checks = Some(Checks {
                targets: Some(check(worst < FIP_TOLERANCE, worst, FIP_TOLERANCE)),
                separation: check(delta > separation_bound, delta, separation_bound),
                ..Checks::default()
            });
            result
        }
    };
    write_text(out, &to_pretty_json(&result))
}

fn fip_error(b: &BlaschkeProduct, nodes: &[Angle], targets: &[Complex64]) -> f64 {
    nodes
        .iter()
        .zip(targets)
        .map(|(&p, t)| (b.evaluate_boundary(p) - t).norm())
        .fold(0.0, f64::max)
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    tolerance: f64,
    separation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    endpoint_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    measures: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_error: Option<f64>,
}

impl VerifyReport {
    fn text(&self) -> String {
        let mut s = format!(
            "{}\ntolerance: {:e}\nseparation: {:.12}\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.tolerance,
            self.separation
        );
        if let Some(d) = self.max_deviation {
            s += &format!("max |1 - mu|: {d:.3e}\n");
        }
        if let Some(d) = self.endpoint_deviation {
            s += &format!("endpoint spread (turns): {d:.3e}\n");
        }
        for (i, m) in self.measures.iter().enumerate() {
            s += &format!("arc {i}: mu = {m:.12}\n");
        }
        if let Some(d) = self.value_error {
            s += &format!("max value error: {d:.3e}\n");
        }
        s
    }
}

fn cmd_verify(result: &Path, problem: &Path, tol: f64, format: Format) -> Result<(), CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Input(format!("--tol {tol} is not positive")));
    }
    let result = ResultFile::read(result)?;
    let b = result.product()?;
    let one = Complex64::new(1.0, 0.0);
    let report = match ProblemFile::read(problem)?.into_problem(Overrides::default())? {
        Problem::Partition { partition, .. } => {
            let r = verify_solution(&b, &partition, tol)?;
            VerifyReport {
                passed: r.passed,
                tolerance: tol,
                separation: r.separation,
                max_deviation: Some(r.max_deviation),
                endpoint_deviation: Some(r.endpoint_deviation),
                measures: r.arcs.iter().map(|a| a.measure).collect(),
                value_error: None,
            }
        }
        Problem::Interpolation { problem, .. } => {
            let n = problem.degree();
            let partition = Partition::from_points(&problem.nodes[..n])?;
            let r = verify_solution(&b, &partition, tol)?;
            let value_error = problem.nodes[..n]
                .iter()
                .map(|&p| (b.evaluate_boundary(p) - one).norm())
                .chain([(b.evaluate_boundary(problem.nodes[n]) - problem.beta).norm()])
                .fold(0.0, f64::max);
            VerifyReport {
                passed: r.passed && value_error < tol,
                tolerance: tol,
                separation: r.separation,
                max_deviation: Some(r.max_deviation),
                endpoint_deviation: Some(r.endpoint_deviation),
                measures: r.arcs.iter().map(|a| a.measure).collect(),
                value_error: Some(value_error),
            }
        }
        Problem::Fip { problem, .. } => {
            let value_error = fip_error(&b, &problem.nodes, &problem.targets);
            let separation = b.separation_constant();
            VerifyReport {
                passed: value_error < tol && separation > 0.0,
                tolerance: tol,
                separation,
                max_deviation: None,
                endpoint_deviation: None,
                measures: vec![],
                value_error: Some(value_error),
            }
        }
    };
    let text = match format {
        Format::Text => report.text(),
        Format::Json => to_pretty_json(&report),
    };
    write_text(None, &text)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_plot(result: &Path, problem: &Path, out: &Path, annulus: bool) -> Result<(), CliError> {
    let result = ResultFile::read(result)?;
    result.product()?;
    let boundaries: Vec<Angle> =
        match ProblemFile::read(problem)?.into_problem(Overrides::default())? {
            Problem::Partition { partition, .. } if partition.len() > 1 => {
                partition.arcs().iter().map(|a| a.start()).collect()
            }
            Problem::Partition { .. } => vec![],
            Problem::Interpolation { problem, .. } => problem.nodes,
            Problem::Fip { problem, .. } => problem.nodes,
        };
    let radius = annulus.then(|| {
        result
            .zeros
            .iter()
            .map(|z| z.radius)
            .fold(f64::INFINITY, f64::min)
            .min(1.0)
    });
    let svg = plot::render(&result, &boundaries, radius.filter(|r| r.is_finite()));
    std::fs::write(out, svg).map_err(|e| io_error(out, e))
}
