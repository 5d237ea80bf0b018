//! Finite Blaschke products `B(z) = λ ∏ (z − z_n)/(1 − z̄_n z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{pseudo_hyperbolic_distance, Angle, DiskPoint};

const ROTATION_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    rotation: Complex64,
    zeros: Vec<DiskPoint>,
}

impl BlaschkeProduct {
    /// Fails unless `|rotation| = 1` within `1e-12`. The stored rotation is
    /// renormalized to modulus one.
    pub fn new(rotation: Complex64, zeros: Vec<DiskPoint>) -> Result<Self> {
        let modulus = rotation.norm();
        if !((modulus - 1.0).abs() <= ROTATION_TOLERANCE) {
            return Err(Error::NotUnimodular { modulus });
        }
        Ok(BlaschkeProduct {
            rotation: rotation / modulus,
            zeros,
        })
    }

    /// Product with `λ = 1`.
    pub fn from_zeros(zeros: Vec<DiskPoint>) -> Self {
        BlaschkeProduct {
            rotation: Complex64::new(1.0, 0.0),
            zeros,
        }
    }

    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    pub fn zeros(&self) -> &[DiskPoint] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// `B(z)` for `|z| ≤ 1`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.rotation * self.unrotated(z)
    }

    /// `B(e^{iθ})`.
    pub fn evaluate_boundary(&self, theta: Angle) -> Complex64 {
        self.evaluate(theta.unit_point())
    }

    fn unrotated(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .map(|a| {
                let a = a.value();
                (z - a) / (1.0 - a.conj() * z)
            })
            .product()
    }

    /// Uniform separation constant `min_k ∏_{j≠k} ρ(z_j, z_k)`.
    ///
    /// A product of degree ≤ 1 has an empty inner product and gets 1;
    /// coincident zeros give 0.
    pub fn separation_constant(&self) -> f64 {
        separation_constant(&self.zeros)
    }

    /// Same zeros, rotation chosen so that `B(e^{iφ}) = target`.
    pub fn normalize_rotation(&self, phi: Angle, target: Complex64) -> Result<Self> {
        let modulus = target.norm();
        if !((modulus - 1.0).abs() <= ROTATION_TOLERANCE) {
            return Err(Error::NotUnimodular { modulus });
        }
        let value = self.unrotated(phi.unit_point());
        let rotation = target / value;
        Ok(BlaschkeProduct {
            rotation: rotation / rotation.norm(),
            zeros: self.zeros.clone(),
        })
    }

    /// Product of two Blaschke products: concatenated zeros, multiplied
    /// rotations.
    pub fn multiply(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        let rotation = self.rotation * other.rotation;
        BlaschkeProduct {
            rotation: rotation / rotation.norm(),
            zeros,
        }
    }

    /// `d/dθ arg B(e^{iθ})`.
    pub fn boundary_arg_derivative(&self, theta: Angle) -> f64 {
        boundary_arg_derivative(&self.zeros, theta)
    }
}

pub fn separation_constant(zeros: &[DiskPoint]) -> f64 {
    let mut best = 1.0_f64;
    for (k, &zk) in zeros.iter().enumerate() {
        let mut prod = 1.0;
        for (j, &zj) in zeros.iter().enumerate() {
            if j != k {
                prod *= pseudo_hyperbolic_distance(zj, zk);
            }
        }
        best = best.min(prod);
    }
    best
}

/// `Σ (1 − |z_n|²)/|e^{iθ} − z_n|²`: the summed Poisson kernel, equal to the
/// derivative of `arg B(e^{iθ})`.
pub fn boundary_arg_derivative(zeros: &[DiskPoint], theta: Angle) -> f64 {
    let w = theta.unit_point();
    zeros
        .iter()
        .map(|z| z.boundary_gap() / (w - z.value()).norm_sqr())
        .sum()
}
