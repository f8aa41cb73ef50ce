//! Quadrature for Hardy and Bergman (quasi-)norms of functions given as closures.

use std::f64::consts::TAU;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::space::Space;

/// Knobs for [`norm_quadrature_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Angular nodes (trapezoid rule); also the number of Gauss-Legendre nodes in `|z|^2`
    /// for the Bergman area integral.
    pub resolution: usize,
    /// Radius of the circle carrying the Hardy integral mean.
    pub hardy_radius: f64,
}

impl QuadratureConfig {
    pub const DEFAULT_HARDY_RADIUS: f64 = 1.0 - 1.0 / (1u64 << 20) as f64;

    pub fn new(resolution: usize) -> Self {
        QuadratureConfig { resolution, hardy_radius: Self::DEFAULT_HARDY_RADIUS }
    }

    pub fn with_hardy_radius(mut self, r: f64) -> Self {
        self.hardy_radius = r;
        self
    }
}

/// `||f||_{H^p}` or `||f||_{A^p}` by quadrature, with the default Hardy radius.
///
/// The Hardy norm is the integral mean over a single circle close to the boundary;
/// for the polynomial and rational test functions used here the means increase with the
/// radius, so this circle approximates the supremum from below.
pub fn norm_quadrature<F>(f: F, space: Space, p: f64, resolution: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    norm_quadrature_with(f, space, p, &QuadratureConfig::new(resolution))
}

pub fn norm_quadrature_with<F>(f: F, space: Space, p: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(p.is_finite() && p > 0.0) {
        return Err(invalid(format!("exponent must be positive, got {p}")));
    }
    if cfg.resolution < 16 {
        return Err(invalid(format!("resolution must be at least 16, got {}", cfg.resolution)));
    }
    let n = cfg.resolution;
    let sample = |z: Complex64| -> Result<f64> {
        let v = f(z).norm().powf(p);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("|f|^p at {z}")))
        }
    };
    // Mean of |f|^p over the circle of radius r (trapezoid rule, spectrally accurate
    // for smooth periodic integrands).
    let circle_mean = |r: f64| -> Result<f64> {
        let mut acc = 0.0;
        for k in 0..n {
            acc += sample(Complex64::from_polar(r, TAU * k as f64 / n as f64))?;
        }
        Ok(acc / n as f64)
    };

    let integral = match space {
        Space::Hardy => {
            let r = cfg.hardy_radius;
            if !(r > 0.0 && r < 1.0) {
                return Err(invalid(format!("Hardy radius must lie in (0, 1), got {r}")));
            }
            circle_mean(r)?
        }
        Space::Bergman => {
            // d sigma = ds dtheta / (2 pi) with s = |z|^2.
            let rule = GaussLegendre::new(n).map_err(|e| invalid(e.to_string()))?;
            let mut acc = 0.0;
            for &(x, w) in rule.as_node_weight_pairs() {
                let s = 0.5 * (x + 1.0);
                acc += 0.5 * w * circle_mean(s.sqrt())?;
            }
            acc
        }
    };
    Ok(integral.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constants_have_unit_norm() {
        for space in [Space::Hardy, Space::Bergman] {
            for p in [0.5, 1.0, 2.0, 3.7] {
                let v = norm_quadrature(|_| Complex64::new(1.0, 0.0), space, p, 32).unwrap();
                assert_relative_eq!(v, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn identity_in_bergman_two() {
        let v = norm_quadrature(|z| z, Space::Bergman, 2.0, 32).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn power_identity_for_one_plus_half_z() {
        let g = |z: Complex64| Complex64::new(1.0, 0.0) + z / 2.0;
        for space in [Space::Hardy, Space::Bergman] {
            let lhs = norm_quadrature(|z| g(z) * g(z), space, 1.5, 64).unwrap();
            let rhs = norm_quadrature(g, space, 3.0, 64).unwrap().powi(2);
            assert!((lhs - rhs).abs() < 1e-8, "{space}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn hardy_mean_grows_with_radius() {
        let f = |z: Complex64| Complex64::new(0.3, 0.0) - z * z + z.powu(5) * 0.7;
        let mut last = 0.0;
        for r in [0.2, 0.5, 0.8, 0.95, 0.999] {
            let cfg = QuadratureConfig::new(64).with_hardy_radius(r);
            let v = norm_quadrature_with(f, Space::Hardy, 1.3, &cfg).unwrap();
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let one = |_| Complex64::new(1.0, 0.0);
        assert!(norm_quadrature(one, Space::Hardy, 2.0, 8).is_err());
        assert!(norm_quadrature(one, Space::Hardy, 0.0, 32).is_err());
        let blowup = |_| Complex64::new(f64::INFINITY, 0.0);
        assert!(matches!(norm_quadrature(blowup, Space::Bergman, 2.0, 16), Err(Error::NonFinite(_))));
    }
}
