use std::f64::consts::PI;
use std::path::Path;

use blaschke_core::{
    Angle, Arc, Complex64, FipProblem, InterpolationProblem, Partition, SolverConfig,
};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Partition,
    Interpolation,
    Fip,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Partition => "partition",
            Mode::Interpolation => "interpolation",
            Mode::Fip => "fip",
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    pub start: f64,
    pub end: f64,
}

/// A unimodular value, written either as `{"re": .., "im": ..}` or as its
/// argument.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum UnitValue {
    Angle(f64),
    Complex { re: f64, im: f64 },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub mode: Mode,
    /// Angles are given as multiples of π.
    #[serde(default)]
    pub pi: bool,
    pub arcs: Option<Vec<ArcSpec>>,
    pub nodes: Option<Vec<f64>>,
    pub targets: Option<Vec<UnitValue>>,
    pub beta: Option<UnitValue>,
    pub s: Option<f64>,
    pub m: Option<u32>,
    #[serde(rename = "C")]
    pub c: f64,
    pub epsilon: Option<f64>,
    pub anchors: Option<Vec<f64>>,
    #[serde(rename = "R_override")]
    pub r_override: Option<f64>,
    pub max_iterations: Option<usize>,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub epsilon: Option<f64>,
    pub max_iterations: Option<usize>,
    pub seed_radius: Option<f64>,
}

pub enum Problem {
    Partition {
        partition: Partition,
        config: SolverConfig,
    },
    Interpolation {
        problem: InterpolationProblem,
        initial_radius: Option<f64>,
        epsilon: Option<f64>,
        max_iterations: Option<usize>,
    },
    Fip {
        problem: FipProblem,
        separation_bound: f64,
    },
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn angle(&self, x: f64) -> Angle {
        Angle::new(if self.pi { x * PI } else { x })
    }

    fn unit(&self, v: UnitValue) -> Complex64 {
        match v {
            UnitValue::Angle(a) => self.angle(a).unit_point(),
            UnitValue::Complex { re, im } => Complex64::new(re, im),
        }
    }

    fn nodes(&self) -> Result<Vec<Angle>, CliError> {
        let nodes = self
            .nodes
            .as_ref()
            .ok_or_else(|| missing("nodes", self.mode))?;
        Ok(nodes.iter().map(|&x| self.angle(x)).collect())
    }

    /// Fields that are set but mean nothing in this mode.
    fn reject_foreign(&self) -> Result<(), CliError> {
        let set = [
            ("arcs", self.arcs.is_some()),
            ("nodes", self.nodes.is_some()),
            ("targets", self.targets.is_some()),
            ("beta", self.beta.is_some()),
            ("s", self.s.is_some()),
            ("m", self.m.is_some()),
            ("epsilon", self.epsilon.is_some()),
            ("anchors", self.anchors.is_some()),
            ("R_override", self.r_override.is_some()),
            ("max_iterations", self.max_iterations.is_some()),
        ];
        let allowed: &[&str] = match self.mode {
            Mode::Partition => &["arcs", "epsilon", "anchors", "R_override", "max_iterations"],
            Mode::Interpolation => &[
                "nodes",
                "beta",
                "s",
                "m",
                "epsilon",
                "R_override",
                "max_iterations",
            ],
            Mode::Fip => &["nodes", "targets"],
        };
        match set
            .iter()
            .find(|(name, present)| *present && !allowed.contains(name))
        {
            Some((name, _)) => Err(CliError::Input(format!(
                "field `{name}` is not used in {} mode",
                self.mode.name()
            ))),
            None => Ok(()),
        }
    }

    pub fn into_problem(self, overrides: Overrides) -> Result<Problem, CliError> {
        self.reject_foreign()?;
        match self.mode {
            Mode::Partition => {
                let arcs = self
                    .arcs
                    .as_ref()
                    .ok_or_else(|| missing("arcs", self.mode))?;
                let arcs: Vec<Arc> = arcs
                    .iter()
                    .map(|a| {
                        let start = self.angle(a.start);
                        let end = self.angle(a.end);
                        if arcs.len() == 1 && start.approx_eq(end) {
                            Arc::full_circle(start)
                        } else {
                            Arc::new(start, end)
                        }
                    })
                    .collect();
                let partition = Partition::new(arcs)?;
                let mut config = SolverConfig::new(self.c);
                if let Some(e) = overrides.epsilon.or(self.epsilon) {
                    config = config.with_epsilon(e);
                }
                if let Some(k) = overrides.max_iterations.or(self.max_iterations) {
                    config = config.with_max_iterations(k);
                }
                if let Some(r) = overrides.seed_radius.or(self.r_override) {
                    config = config.with_radius(r);
                }
                if let Some(anchors) = &self.anchors {
                    config = config.with_anchors(anchors.iter().map(|&x| self.angle(x)).collect());
                }
                Ok(Problem::Partition { partition, config })
            }
            Mode::Interpolation => {
                let nodes = self.nodes()?;
                let beta = self.unit(self.beta.ok_or_else(|| missing("beta", self.mode))?);
                let mut problem = InterpolationProblem::new(nodes, beta, self.c);
                match (self.s, self.m) {
                    (Some(s), Some(m)) => problem = problem.with_near_one(s, m),
                    (None, None) => {}
                    (Some(_), None) => return Err(missing("m", self.mode)),
                    (None, Some(_)) => return Err(missing("s", self.mode)),
                }
                problem.validate()?;
                Ok(Problem::Interpolation {
                    problem,
                    initial_radius: overrides.seed_radius.or(self.r_override),
                    epsilon: overrides.epsilon.or(self.epsilon),
                    max_iterations: overrides.max_iterations.or(self.max_iterations),
                })
            }
            Mode::Fip => {
                let nodes = self.nodes()?;
                let targets = self
                    .targets
                    .as_ref()
                    .ok_or_else(|| missing("targets", self.mode))?;
                let targets = targets.iter().map(|&t| self.unit(t)).collect();
                let problem = FipProblem { nodes, targets };
                problem.validate()?;
                Ok(Problem::Fip {
                    problem,
                    separation_bound: self.c,
                })
            }
        }
    }
}

fn missing(field: &str, mode: Mode) -> CliError {
    CliError::Input(format!(
        "field `{field}` is required in {} mode",
        mode.name()
    ))
}
