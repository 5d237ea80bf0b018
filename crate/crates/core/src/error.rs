use thiserror::Error;

use crate::product::BlaschkeProduct;
use crate::solver::SolverTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {re} + {im}i is not inside the unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("rotation must be unimodular, got modulus {modulus}")]
    NotUnimodular { modulus: f64 },

    #[error("a partition needs at least one arc")]
    EmptyPartition,

    #[error("arcs overlap at angle {angle}")]
    ArcsOverlap { angle: f64 },

    #[error("gap between arcs at angle {angle}")]
    ArcGap { angle: f64 },

    #[error("arc lengths sum to {total}, expected 2π")]
    PartitionLength { total: f64 },

    #[error("expected {expected} {what}, got {got}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("anchor {index} at angle {angle} is not strictly inside its arc")]
    AnchorOutsideArc { index: usize, angle: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("measure invariant violated: sum {sum}, expected {expected}")]
    MeasureInvariant { sum: f64, expected: f64 },

    #[error("separation bound unreachable: radius reached {radius} with separation {separation}")]
    SeparationUnreachable { radius: f64, separation: f64 },

    #[error("no bracket for arc {index}: measure {measure} at the outer radius is still below 1")]
    NoBracket { index: usize, measure: f64 },

    #[error("max iterations exceeded ({iterations}), error still {error}")]
    MaxIterationsExceeded {
        iterations: usize,
        error: f64,
        trace: Box<SolverTrace>,
        product: Box<BlaschkeProduct>,
    },

    #[error("trace too short: need at least 2 steps, got {steps}")]
    TraceTooShort { steps: usize },

    #[error("nodes too close: {first} and {second}")]
    NodesTooClose { first: f64, second: f64 },

    #[error("duplicate nodes: {first} and {second}")]
    DuplicateNodes { first: f64, second: f64 },

    #[error("target unreachable at radius cap {radius}")]
    TargetUnreachable { radius: f64 },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
