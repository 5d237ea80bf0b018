//! Points on the unit circle, arcs, partitions of the circle, and points in the
//! open unit disk.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Two angles closer than this (on the circle) are the same point.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// Tolerance on `Σ length = 2π` and on consecutive arc endpoints matching.
pub const PARTITION_TOLERANCE: f64 = 1e-10;

/// Disk points this close to the boundary are rejected.
pub const BOUNDARY_MARGIN: f64 = 1e-15;

/// A position on the unit circle, stored as its canonical angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Self {
        Angle(canonical(theta))
    }

    pub const ZERO: Angle = Angle(0.0);

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `e^{iθ}`.
    pub fn unit_point(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: Angle) -> f64 {
        canonical(other.0 - self.0)
    }

    /// Shortest distance along the circle, in `[0, π]`.
    pub fn circular_distance(self, other: Angle) -> f64 {
        let d = self.ccw_to(other);
        d.min(TAU - d)
    }

    pub fn approx_eq(self, other: Angle) -> bool {
        self.circular_distance(other) <= ANGLE_TOLERANCE
    }

    pub fn rotated(self, by: f64) -> Angle {
        Angle::new(self.0 + by)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn canonical(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Half-open counterclockwise arc `[start, end)`. `start == end` is the full
/// circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    start: Angle,
    end: Angle,
}

impl Arc {
    pub fn new(start: Angle, end: Angle) -> Self {
        Arc { start, end }
    }

    pub fn full_circle(start: Angle) -> Self {
        Arc { start, end: start }
    }

    /// Arc starting at `start` with the given counterclockwise length.
    pub fn from_start_length(start: Angle, length: f64) -> Self {
        Arc {
            start,
            end: start.rotated(length),
        }
    }

    pub fn start(&self) -> Angle {
        self.start
    }

    pub fn end(&self) -> Angle {
        self.end
    }

    pub fn length(&self) -> f64 {
        let d = self.start.ccw_to(self.end);
        if d <= ANGLE_TOLERANCE || TAU - d <= ANGLE_TOLERANCE {
            TAU
        } else {
            d
        }
    }

    pub fn is_full_circle(&self) -> bool {
        self.length() == TAU
    }

    pub fn midpoint(&self) -> Angle {
        self.start.rotated(0.5 * self.length())
    }

    /// The point a fraction `t ∈ [0, 1]` of the way along the arc.
    pub fn point_at(&self, t: f64) -> Angle {
        self.start.rotated(t * self.length())
    }

    /// Half-open membership.
    pub fn contains(&self, theta: Angle) -> bool {
        self.start.ccw_to(theta) < self.length()
    }

    /// Open-arc membership: strictly between the endpoints.
    pub fn contains_interior(&self, theta: Angle) -> bool {
        let off = self.start.ccw_to(theta);
        off > ANGLE_TOLERANCE && off < self.length() - ANGLE_TOLERANCE
    }

    pub fn rotated(&self, by: f64) -> Arc {
        Arc {
            start: self.start.rotated(by),
            end: self.end.rotated(by),
        }
    }
}

/// Counterclockwise sequence of arcs covering the circle exactly once.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    arcs: Vec<Arc>,
}

impl Partition {
    pub fn new(arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let n = arcs.len();
        if n > 1 {
            for i in 0..n {
                let end = arcs[i].end();
                let next = arcs[(i + 1) % n].start();
                let gap = signed_difference(next.radians(), end.radians());
                if gap < -PARTITION_TOLERANCE {
                    return Err(Error::ArcsOverlap {
                        angle: next.radians(),
                    });
                }
                if gap > PARTITION_TOLERANCE {
                    return Err(Error::ArcGap {
                        angle: end.radians(),
                    });
                }
            }
        }
        let total: f64 = arcs.iter().map(Arc::length).sum();
        if (total - TAU).abs() > PARTITION_TOLERANCE {
            // endpoints chain up but wind around more than once
            if total > TAU {
                return Err(Error::ArcsOverlap {
                    angle: arcs[0].start().radians(),
                });
            }
            return Err(Error::PartitionLength { total });
        }
        Ok(Partition { arcs })
    }

    /// Consecutive arcs with the given lengths, the first one starting at
    /// `start`. The last arc is closed exactly onto `start`.
    pub fn from_lengths(start: Angle, lengths: &[f64]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if let Some(&bad) = lengths
            .iter()
            .find(|l| !(**l > 0.0 && **l <= TAU + PARTITION_TOLERANCE))
        {
            return Err(crate::error::invalid(
                "lengths",
                format!("arc length {bad} is not in (0, 2π]"),
            ));
        }
        let mut arcs = Vec::with_capacity(lengths.len());
        let mut offset = 0.0;
        for (i, &len) in lengths.iter().enumerate() {
            let s = start.rotated(offset);
            offset += len;
            let e = if i + 1 == lengths.len() {
                start
            } else {
                start.rotated(offset)
            };
            arcs.push(Arc::new(s, e));
        }
        // `Partition::new` would measure the closing arc from its endpoints,
        // hiding a bad total; check it here.
        if (offset - TAU).abs() > PARTITION_TOLERANCE {
            return Err(Error::PartitionLength { total: offset });
        }
        Partition::new(arcs)
    }

    /// Partition whose arc endpoints are the given points, taken in
    /// counterclockwise order starting from the first one.
    pub fn from_points(points: &[Angle]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if points.len() == 1 {
            return Ok(Partition {
                arcs: vec![Arc::full_circle(points[0])],
            });
        }
        let first = points[0];
        let mut sorted = points.to_vec();
        sorted.sort_by(|a, b| first.ccw_to(*a).total_cmp(&first.ccw_to(*b)));
        for i in 0..sorted.len() {
            let a = sorted[i];
            let b = sorted[(i + 1) % sorted.len()];
            if a.approx_eq(b) {
                return Err(Error::NodesTooClose {
                    first: a.radians(),
                    second: b.radians(),
                });
            }
        }
        let n = sorted.len();
        let arcs = (0..n)
            .map(|i| Arc::new(sorted[i], sorted[(i + 1) % n]))
            .collect();
        Partition::new(arcs)
    }

    /// `n` arcs of length `2π/n`, the first centred on `centre`.
    pub fn equal(n: usize, centre: Angle) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPartition);
        }
        let len = TAU / n as f64;
        Partition::from_lengths(centre.rotated(-0.5 * len), &vec![len; n])
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn shortest_length(&self) -> f64 {
        self.arcs
            .iter()
            .map(Arc::length)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn midpoints(&self) -> Vec<Angle> {
        self.arcs.iter().map(Arc::midpoint).collect()
    }

    /// Index of the arc containing `theta`.
    pub fn locate(&self, theta: Angle) -> usize {
        self.arcs
            .iter()
            .position(|a| a.contains(theta))
            .unwrap_or(self.arcs.len() - 1)
    }

    pub fn rotated(&self, by: f64) -> Partition {
        Partition {
            arcs: self.arcs.iter().map(|a| a.rotated(by)).collect(),
        }
    }
}

/// `a − b` reduced to `(−π, π]`.
fn signed_difference(a: f64, b: f64) -> f64 {
    let d = canonical(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// A point of the open unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        let r = value.norm();
        if !(r < 1.0 - BOUNDARY_MARGIN) {
            return Err(Error::OutsideDisk {
                re: value.re,
                im: value.im,
            });
        }
        Ok(DiskPoint(value))
    }

    pub fn from_polar(radius: f64, angle: Angle) -> Result<Self> {
        if !(0.0..1.0).contains(&radius) {
            return Err(Error::OutsideDisk {
                re: radius * angle.radians().cos(),
                im: radius * angle.radians().sin(),
            });
        }
        DiskPoint::new(Complex64::from_polar(radius, angle.radians()))
    }

    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn radius(self) -> f64 {
        self.0.norm()
    }

    /// Argument of the point; `0` at the origin.
    pub fn angle(self) -> Angle {
        if self.0 == Complex64::new(0.0, 0.0) {
            Angle::ZERO
        } else {
            Angle::new(self.0.arg())
        }
    }

    /// `1 − |z|²`, computed as `(1 − |z|)(1 + |z|)`.
    pub fn boundary_gap(self) -> f64 {
        let r = self.radius();
        (1.0 - r) * (1.0 + r)
    }
}

/// `|a − b| / |1 − b̄a|`.
///
/// Uses `|1 − b̄a|² = |a − b|² + (1 − |a|²)(1 − |b|²)` so the result keeps
/// full relative accuracy when both points are near the boundary.
pub fn pseudo_hyperbolic_distance(a: DiskPoint, b: DiskPoint) -> f64 {
    let d2 = (a.value() - b.value()).norm_sqr();
    if d2 == 0.0 {
        return 0.0;
    }
    (d2 / (d2 + a.boundary_gap() * b.boundary_gap())).sqrt()
}
