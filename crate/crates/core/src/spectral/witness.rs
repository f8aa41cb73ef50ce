use num_complex::Complex64;
use serde::Serialize;

use crate::disk::{one_minus_conj_mul, DiskPoint};
use crate::error::{invalid, Result};
use crate::measures::{GridMeasure, Measure};
use crate::space::Space;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessPoint {
    pub re: f64,
    pub im: f64,
    pub value: f64,
}

/// `|k_w(z)|^2 / ||k_w||^2` for the Hardy or Bergman kernel.
fn normalized_kernel_sq(space: Space, w: DiskPoint, z: DiskPoint) -> f64 {
    let ratio = w.one_minus_modulus_sq() / one_minus_conj_mul(w, z).norm_sqr();
    ratio.powi(space.exponent())
}

/// Integral of `|k_w|^2 / ||k_w||^2` against a grid.
///
/// Over a full circle of radius `r`, with `x = |w|^2 r^2`, the angular mean of
/// `|1 - conj(w) z|^{-2}` is `1 / (1 - x)` and that of `|1 - conj(w) z|^{-4}` is
/// `(1 + x) / (1 - x)^3`. Both integrate in closed form in `s = r^2`, so the only
/// approximation is the grid itself.
fn grid_witness_sq(g: &GridMeasure, space: Space, w: DiskPoint) -> f64 {
    let c = w.modulus().powi(2);
    let t = w.one_minus_modulus_sq();
    // Antiderivatives in s of the angular means.
    let primitive = |s: f64| -> f64 {
        match space {
            Space::Hardy if c == 0.0 => s,
            Space::Hardy => -(-c * s).ln_1p() / c,
            Space::Bergman => {
                // d/ds [s / (1 - c s)^2] = (1 + c s) / (1 - c s)^3
                let u = 1.0 - c * s;
                s / (u * u)
            }
        }
    };
    let mut acc = 0.0;
    for i in 0..g.nr() {
        let (a, b) = g.ring(i);
        let (s1, s2) = (a * a, b * b);
        let ring_mass = g.cell_weight(i) * g.ntheta() as f64;
        acc += ring_mass * (primitive(s2) - primitive(s1)) / (s2 - s1);
    }
    acc * t.powi(space.exponent())
}

/// `||k_w / ||k_w|| ||_{L^2(mu)}` at every point of `path`.
///
/// The normalized kernels have unit norm in the space, so a curve tending to zero along a
/// path to the boundary shows that no lower estimate `||f||_{L^2(mu)} >= c ||f||` can hold
/// for a finite measure.
pub fn reverse_witness(mu: &Measure, path: &[DiskPoint], space: Space) -> Result<Vec<WitnessPoint>> {
    if path.windows(2).any(|p| p[1].modulus() <= p[0].modulus()) {
        return Err(invalid("witness path must move strictly toward the boundary"));
    }
    Ok(path
        .iter()
        .map(|&w| {
            let sq = match mu {
                Measure::Discrete(d) => d.integrate(|z| normalized_kernel_sq(space, w, z)),
                Measure::Grid(g) => grid_witness_sq(g, space, w),
            };
            WitnessPoint { re: w.re(), im: w.im(), value: sq.max(0.0).sqrt() }
        })
        .collect())
}

/// `w_m = -(1 - 2^-m) u` for `m = 1..=steps`, where `u` is the direction of the measure's
/// angular center of mass (`1` when that vanishes).
pub fn default_witness_path(mu: &Measure, steps: u32) -> Result<Vec<DiskPoint>> {
    if steps == 0 || steps > 46 {
        return Err(invalid(format!("witness steps must lie in 1..=46, got {steps}")));
    }
    let center = match mu {
        Measure::Discrete(d) => d
            .atoms()
            .iter()
            .map(|a| {
                let z = a.point;
                let dir = if z == DiskPoint::ORIGIN { Complex64::new(1.0, 0.0) } else { z.to_complex() / z.modulus() };
                dir * a.weight
            })
            .sum::<Complex64>(),
        Measure::Grid(_) => Complex64::new(0.0, 0.0),
    };
    let u = if center.norm() > 0.0 { center / center.norm() } else { Complex64::new(1.0, 0.0) };
    (1..=steps).map(|m| DiskPoint::from_complex(-u * (1.0 - 2f64.powi(-(m as i32))))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{build_mu_z, build_sigma_grid, DiscreteMeasure};
    use crate::sequences::gen_radial;
    use approx::assert_relative_eq;

    #[test]
    fn dirac_at_origin() {
        let mu = Measure::from(DiscreteMeasure::new([(DiskPoint::ORIGIN, 1.0)]).unwrap());
        let path: Vec<_> = (1..=12).map(|m| DiskPoint::real(1.0 - 2f64.powi(-m)).unwrap()).collect();
        let curve = reverse_witness(&mu, &path, Space::Hardy).unwrap();
        for (p, w) in curve.iter().zip(&path) {
            assert_relative_eq!(p.value, w.one_minus_modulus_sq().sqrt(), max_relative = 1e-14);
        }
    }

    #[test]
    fn radial_atoms_seen_from_the_opposite_side() {
        let mu = Measure::from(build_mu_z(&gen_radial(0.5, 20).unwrap()).unwrap());
        let path = default_witness_path(&mu, 12).unwrap();
        assert_eq!(path[0], DiskPoint::real(-0.5).unwrap());
        let curve = reverse_witness(&mu, &path, Space::Hardy).unwrap();
        let mass = mu.total_mass();
        for (p, w) in curve.iter().zip(&path) {
            assert!(p.value <= (w.one_minus_modulus_sq() * mass).sqrt());
        }
        assert!(curve[6].value < 0.1);
    }

    #[test]
    fn grid_closed_form_matches_dense_quadrature() {
        let g = build_sigma_grid(16, 16).unwrap();
        let w = DiskPoint::new(0.3, -0.5).unwrap();
        for space in [Space::Hardy, Space::Bergman] {
            let fast = grid_witness_sq(&g, space, w);
            // Midpoint rule in (s, theta) on a much finer mesh.
            let (ns, nt) = (400, 400);
            let mut slow = 0.0;
            for i in 0..ns {
                let s = (i as f64 + 0.5) / ns as f64;
                for j in 0..nt {
                    let th = std::f64::consts::TAU * (j as f64 + 0.5) / nt as f64;
                    let z = DiskPoint::from_polar(s.sqrt(), th).unwrap();
                    slow += normalized_kernel_sq(space, w, z);
                }
            }
            slow /= (ns * nt) as f64;
            assert_relative_eq!(fast, slow, max_relative = 1e-5);
        }
    }

    #[test]
    fn sigma_closed_form_in_hardy() {
        // integral over sigma of (1-|w|^2)/|1 - conj(w) z|^2 = (1-c) ln(1/(1-c)) / c with c = |w|^2.
        let g = Measure::from(build_sigma_grid(8, 8).unwrap());
        let w = DiskPoint::real(-0.9).unwrap();
        let v = reverse_witness(&g, &[w], Space::Hardy).unwrap()[0].value;
        let c: f64 = 0.81;
        assert_relative_eq!(v * v, (1.0 - c) * (1.0 / (1.0 - c)).ln() / c, max_relative = 1e-13);
    }

    #[test]
    fn path_must_approach_the_boundary() {
        let mu = Measure::from(DiscreteMeasure::new([(DiskPoint::ORIGIN, 1.0)]).unwrap());
        let path = [DiskPoint::real(0.9).unwrap(), DiskPoint::real(0.5).unwrap()];
        assert!(reverse_witness(&mu, &path, Space::Hardy).is_err());
        assert!(default_witness_path(&mu, 0).is_err());
    }
}
