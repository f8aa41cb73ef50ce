//! Values frozen from independent high-precision computations (80-digit arithmetic on the
//! same double-precision inputs), and dual-route checks against plain matrix inversion.

use approx::assert_relative_eq;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use closedrange::measures::{build_mu_z, build_nu_z, DiscreteMeasure};
use closedrange::sequences::{double_sequence, gen_radial, interpolation_constant};
use closedrange::spectral::{least_norm_margin, riesz_bounds, riesz_ladder};
use closedrange::{DiskPoint, PointSequence, Space};

#[test]
fn radial_interpolation_constants() {
    for (n, expected) in [(10, 0.019135243301794246), (20, 0.014829531235271073), (30, 0.014676895346655963)] {
        let d = interpolation_constant(&gen_radial(0.5, n).unwrap()).unwrap().delta;
        assert_relative_eq!(d, expected, max_relative = 1e-12);
    }
}

#[test]
fn doubled_sequence_riesz_floor_far_below_round_off() {
    let twins = double_sequence(&gen_radial(0.5, 15).unwrap(), 2.0).unwrap();
    let r = riesz_ladder(&twins, Space::Hardy, &[10, 30]).unwrap();
    assert_relative_eq!(r.series[0].margin, 1.4949734784988102e-11, max_relative = 1e-6);
    assert_relative_eq!(r.series[1].margin, 2.766_094_078_352_849e-24, max_relative = 1e-4);
}

#[test]
fn bergman_least_norm_constants() {
    let mu = build_nu_z(&gen_radial(0.5, 10).unwrap()).unwrap();
    let r = least_norm_margin(&mu, Space::Bergman, &[3, 5, 10]).unwrap();
    let expected = [8.915_258_866_526_669, 25.295_298_097_180_02, 75.227_062_654_844_67];
    for (s, e) in r.series.iter().zip(expected) {
        assert_relative_eq!(s.margin, e, max_relative = 1e-9);
    }
    let riesz = riesz_bounds(&gen_radial(0.5, 10).unwrap(), Space::Bergman).unwrap();
    assert_relative_eq!(riesz.eig_min, 0.000686643386609288, max_relative = 1e-9);
}

/// `C_n` through an explicit inverse of the unnormalized Hardy Gram matrix.
fn direct_hardy_margin(mu: &DiscreteMeasure) -> f64 {
    let atoms = mu.atoms();
    let n = atoms.len();
    let g = DMatrix::from_fn(n, n, |j, k| {
        let zj = atoms[j].point.to_complex();
        let zk = atoms[k].point.to_complex();
        Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - zk.conj() * zj)
    });
    let gi = g.try_inverse().expect("well-conditioned fixture");
    let m = DMatrix::from_fn(n, n, |i, j| gi[(i, j)] / (atoms[i].weight * atoms[j].weight).sqrt());
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigen().eigenvalues.iter().copied().fold(f64::MIN, f64::max).sqrt()
}

#[test]
fn closed_form_hardy_inverse_agrees_with_explicit_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.random_range(2..9);
        let atoms: Vec<(DiskPoint, f64)> = (0..n)
            .map(|_| {
                let r: f64 = rng.random_range(0.0..0.9);
                let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                (DiskPoint::from_polar(r, t).unwrap(), rng.random_range(0.1..2.0))
            })
            .collect();
        let mu = DiscreteMeasure::new(atoms).unwrap();
        let fast = least_norm_margin(&mu, Space::Hardy, &[mu.len()]).unwrap().margin;
        let slow = direct_hardy_margin(&mu);
        let cond = least_norm_margin(&mu, Space::Hardy, &[mu.len()]).unwrap().condition;
        assert_relative_eq!(fast, slow, max_relative = 1e-13 * cond.max(1.0));
    }
}

#[test]
fn single_point_margin_is_explicit() {
    // C_1^2 = (1 - |z|^2) / a for one atom.
    let z = DiskPoint::new(0.3, -0.4).unwrap();
    for space in [Space::Hardy, Space::Bergman] {
        let mu = DiscreteMeasure::new([(z, 0.7)]).unwrap();
        let c = least_norm_margin(&mu, space, &[1]).unwrap().margin;
        let expected = (z.one_minus_modulus_sq().powi(space.exponent()) / 0.7).sqrt();
        assert_relative_eq!(c, expected, max_relative = 1e-14);
    }
    let mu = build_mu_z(&PointSequence::new(vec![z]).unwrap()).unwrap();
    assert_eq!(mu.atoms()[0].weight, z.one_minus_modulus());
}
