//! Closed-form solutions for two symmetric families, used to check the solver.

/// Separation constant of `n` zeros at radius `r` on `n` equally spaced rays:
/// `n r^{n−1} / (1 + r² + r⁴ + … + r^{2(n−1)})`.
pub fn equal_arcs_delta(n: usize, r: f64) -> f64 {
    assert!(n >= 2, "equal_arcs_delta needs n >= 2");
    let r2 = r * r;
    let denom: f64 = (0..n).map(|k| r2.powi(k as i32)).sum();
    n as f64 * r.powi(n as i32 - 1) / denom
}

/// Radius of the zero on the short arc when the arcs have lengths `θ` and
/// `2π − θ`, sit symmetrically about the real axis, and the other zero has
/// radius `r2`: `(r2 + cos θ/2) / (1 + r2 cos θ/2)`.
pub fn two_arcs_r1(theta: f64, r2: f64) -> f64 {
    let c = (0.5 * theta).cos();
    (r2 + c) / (1.0 + r2 * c)
}

/// `(r1 + r2) / (1 + r1 r2)`, the pseudo-hyperbolic distance between `r1`
/// and `−r2`.
pub fn two_arcs_delta(r1: f64, r2: f64) -> f64 {
    (r1 + r2) / (1.0 + r1 * r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pseudo_hyperbolic_distance, Angle, DiskPoint};
    use crate::product::separation_constant;
    use num_complex::Complex64;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn equal_arcs_values() {
        assert!((equal_arcs_delta(2, 0.5) - 0.8).abs() < 1e-15);
        assert_eq!(equal_arcs_delta(5, 0.0), 0.0);
        assert!((equal_arcs_delta(3, 0.9) - 2.43 / 2.4661).abs() < 1e-12);
    }

    #[test]
    fn equal_arcs_matches_symmetric_configuration() {
        for n in 2..=10 {
            for k in 0..20 {
                let r = 0.05 * k as f64;
                let zeros: Vec<_> = (0..n)
                    .map(|j| {
                        DiskPoint::from_polar(r, Angle::new(TAU * j as f64 / n as f64)).unwrap()
                    })
                    .collect();
                let direct = separation_constant(&zeros);
                assert!(
                    (direct - equal_arcs_delta(n, r)).abs() < 1e-10,
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn two_arcs_values() {
        assert!((two_arcs_r1(1.2, 0.0) - 0.6f64.cos()).abs() < 1e-15);
        assert!((two_arcs_r1(PI, 0.37) - 0.37).abs() < 1e-15);
        let r1 = two_arcs_r1(PI / 2.0, 0.9);
        assert!((r1 - 0.9821).abs() < 5e-5);
        assert_eq!(two_arcs_delta(0.0, 0.0), 0.0);
        assert!((two_arcs_delta(0.9821, 0.9) - 1.8821 / (1.0 + 0.9821 * 0.9)).abs() < 1e-15);
        assert!((two_arcs_delta(0.9821, 0.9) - 0.9991).abs() < 1e-4);
    }

    #[test]
    fn two_arcs_delta_is_pseudo_hyperbolic() {
        for i in 0..100 {
            let r1 = (i as f64 * 0.618_034).fract() * 0.999;
            let r2 = (i as f64 * 0.414_214).fract() * 0.999;
            let a = DiskPoint::new(Complex64::new(r1, 0.0)).unwrap();
            let b = DiskPoint::new(Complex64::new(-r2, 0.0)).unwrap();
            let d = pseudo_hyperbolic_distance(a, b);
            assert!((d - two_arcs_delta(r1, r2)).abs() < 1e-14);
        }
    }
}
