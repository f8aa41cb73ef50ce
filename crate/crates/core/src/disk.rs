//! Geometry of the open unit disk and the analytic building blocks evaluated on it.
//!
//! Everything here stays strictly inside the disk. Points closer than `1e-14` to the
//! unit circle are rejected at construction, because every formula in the toolkit
//! (kernels, Blaschke factors, pseudo-hyperbolic distance) degenerates there.
//!
//! Quantities of the form `1 - conj(z) w` are evaluated as
//! `(1 - |z|^2) + conj(z) (z - w)`, which keeps relative accuracy when both points
//! sit near the same boundary point. That matters for the near-collision sequences
//! used to exhibit non-interpolating behaviour.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Smallest admissible distance `1 - |z|` to the unit circle.
pub const BOUNDARY_GUARD: f64 = 1e-14;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    re: f64,
    im: f64,
}

impl TryFrom<RawPoint> for DiskPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        DiskPoint::new(raw.re, raw.im)
    }
}

impl From<DiskPoint> for RawPoint {
    fn from(p: DiskPoint) -> Self {
        RawPoint { re: p.re, im: p.im }
    }
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::OutsideDisk { re, im });
        }
        // -0.0 and 0.0 describe the same point; keep a single bit pattern.
        let p = DiskPoint { re: re + 0.0, im: im + 0.0 };
        if p.re * p.re + p.im * p.im >= 1.0 || p.one_minus_modulus() < BOUNDARY_GUARD {
            return Err(Error::OutsideDisk { re, im });
        }
        Ok(p)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        DiskPoint::new(z.re, z.im)
    }

    /// `r e^{i theta}`.
    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        if theta == 0.0 {
            return DiskPoint::new(r, 0.0);
        }
        let (s, c) = theta.sin_cos();
        DiskPoint::new(r * c, r * s)
    }

    /// A real point on the diameter.
    pub fn real(x: f64) -> Result<Self> {
        DiskPoint::new(x, 0.0)
    }

    pub fn re(self) -> f64 {
        self.re
    }

    pub fn im(self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `1 - |z|`, exact whenever `|z|` is representable (Sterbenz).
    pub fn one_minus_modulus(self) -> f64 {
        1.0 - self.modulus()
    }

    /// `1 - |z|^2` computed as `(1 - |z|)(1 + |z|)`.
    pub fn one_minus_modulus_sq(self) -> f64 {
        let r = self.modulus();
        (1.0 - r) * (1.0 + r)
    }

    /// Position of `z / |z|` on the circle as a fraction of a full turn, in `[0, 1)`.
    /// The origin is assigned the direction `1`, i.e. position `0`.
    pub fn boundary_turn(self) -> f64 {
        if self.re == 0.0 && self.im == 0.0 {
            return 0.0;
        }
        let mut t = self.im.atan2(self.re) / TAU;
        if t < 0.0 {
            t += 1.0;
        }
        if t >= 1.0 {
            t = 0.0;
        }
        t
    }

    /// `e^{i theta} z`.
    pub fn rotated(self, theta: f64) -> Result<Self> {
        if theta == 0.0 {
            return Ok(self);
        }
        let (s, c) = theta.sin_cos();
        DiskPoint::new(c * self.re - s * self.im, s * self.re + c * self.im)
    }
}

/// `1 - conj(z) w`, accurate when `z` and `w` are close to each other and to the circle.
pub fn one_minus_conj_mul(z: DiskPoint, w: DiskPoint) -> Complex64 {
    let zc = z.to_complex();
    let d = zc - w.to_complex();
    Complex64::new(z.one_minus_modulus_sq(), 0.0) + zc.conj() * d
}

/// Pseudo-hyperbolic distance `|z - w| / |1 - conj(z) w|`.
pub fn pseudo_dist(z: DiskPoint, w: DiskPoint) -> f64 {
    let num = (z.to_complex() - w.to_complex()).norm();
    if num == 0.0 {
        return 0.0;
    }
    num / one_minus_conj_mul(z, w).norm()
}

/// The disk automorphism `phi_a(z) = (a - z) / (1 - conj(a) z)`; it is its own inverse.
pub fn mobius_involution(a: DiskPoint, z: DiskPoint) -> Result<DiskPoint> {
    let v = (a.to_complex() - z.to_complex()) / one_minus_conj_mul(a, z);
    DiskPoint::from_complex(v)
}

/// One normalized Blaschke factor: `(|a|/a) (a - z) / (1 - conj(a) z)`, or `z` when `a = 0`.
pub fn blaschke_factor(a: DiskPoint, z: DiskPoint) -> Complex64 {
    if a == DiskPoint::ORIGIN {
        return z.to_complex();
    }
    let ac = a.to_complex();
    let unimodular = ac.conj() / a.modulus();
    unimodular * (ac - z.to_complex()) / one_minus_conj_mul(a, z)
}

/// Finite Blaschke product, multiplied in the order of `zeros`.
pub fn blaschke_eval(zeros: &[DiskPoint], z: DiskPoint) -> Complex64 {
    zeros.iter().fold(Complex64::new(1.0, 0.0), |acc, &a| acc * blaschke_factor(a, z))
}

/// Parameters of a truncated Horowitz product `prod_{k=1}^{levels} (1 - b z^{2^k})`
/// with `b = 2^{1/p0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorowitzSpec {
    p0: f64,
    b: f64,
    levels: u32,
}

impl HorowitzSpec {
    pub fn new(p0: f64, levels: u32) -> Result<Self> {
        if !(p0.is_finite() && p0 > 0.0) {
            return Err(invalid(format!("p0 must be positive and finite, got {p0}")));
        }
        if levels < 1 {
            return Err(invalid("Horowitz product needs at least one level"));
        }
        let b = 2f64.powf(1.0 / p0);
        if b <= 1.0 {
            return Err(invalid(format!("p0 = {p0} is too large: 2^(1/p0) rounds to 1")));
        }
        Ok(HorowitzSpec { p0, b, levels })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// Same `p0`, different truncation depth.
    pub fn with_levels(&self, levels: u32) -> Result<Self> {
        HorowitzSpec::new(self.p0, levels)
    }
}

/// Value of a truncated infinite product together with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedProductValue {
    pub value: Complex64,
    /// Bound on `|log T|` where `T` is the product of all omitted factors.
    /// Infinite when the omitted factors are not uniformly below one in modulus.
    pub tail_bound: f64,
    pub terms_used: u32,
}

/// Evaluates the Horowitz product truncated at `spec.levels()` factors.
///
/// With `S = b |z|^{2^{K+1}} / (1 - |z|)`, every omitted factor has the form `1 - u_k`
/// with `sum |u_k| <= S` (the exponents `2^k` for `k > K` are distinct integers at least
/// `2^{K+1}`, so the sum is dominated by a geometric series). Since
/// `|log(1 - u)| <= |u| / (1 - |u|)`, the tail satisfies `|log T| <= S / (1 - S)` once `S < 1`.
pub fn horowitz_eval(spec: &HorowitzSpec, z: DiskPoint) -> TruncatedProductValue {
    let zc = z.to_complex();
    let mut power = zc * zc;
    let mut value = Complex64::new(1.0, 0.0);
    for k in 1..=spec.levels {
        value *= Complex64::new(1.0, 0.0) - spec.b * power;
        if k < spec.levels {
            power = power * power;
        }
    }

    let r = z.modulus();
    let tail_bound = if r == 0.0 {
        0.0
    } else {
        let exponent = 2f64.powi(spec.levels as i32 + 1);
        let s = spec.b * r.powf(exponent) / z.one_minus_modulus();
        if s < 1.0 {
            s / (1.0 - s)
        } else {
            f64::INFINITY
        }
    };

    TruncatedProductValue { value, tail_bound, terms_used: spec.levels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    #[test]
    fn rejects_points_on_or_near_the_circle() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.6, 0.8).is_err());
        assert!(DiskPoint::new(1.0 - 1e-15, 0.0).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::new(1.0 - 2f64.powi(-40), 0.0).is_ok());
    }

    #[test]
    fn pseudo_dist_examples() {
        assert_eq!(pseudo_dist(DiskPoint::ORIGIN, pt(0.5, 0.0)), 0.5);
        let z = pt(0.3, -0.2);
        assert_eq!(pseudo_dist(z, z), 0.0);
        assert_abs_diff_eq!(pseudo_dist(pt(0.5, 0.0), pt(-0.5, 0.0)), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn blaschke_examples() {
        let z = pt(0.3, 0.0);
        assert_abs_diff_eq!(blaschke_eval(&[DiskPoint::ORIGIN], z).re, 0.3);
        let a = pt(0.2, 0.4);
        assert_eq!(blaschke_eval(&[a], a).norm(), 0.0);
        let v = blaschke_eval(&[pt(0.5, 0.0), pt(0.0, 0.5)], DiskPoint::ORIGIN);
        assert_abs_diff_eq!(v.re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn blaschke_tends_to_unimodular_near_the_circle() {
        let zeros = [pt(0.5, 0.1), pt(-0.3, 0.6), pt(0.0, -0.9), DiskPoint::ORIGIN];
        for k in 0..16 {
            let theta = 0.37 + k as f64 * TAU / 16.0;
            let z = DiskPoint::from_polar(1.0 - 1e-6, theta).unwrap();
            let m = blaschke_eval(&zeros, z).norm();
            assert!(m < 1.0);
            assert!((1.0 - m) < 1e-3, "|B| = {m}");
        }
    }

    #[test]
    fn horowitz_at_origin_and_first_root() {
        let spec = HorowitzSpec::new(1.0, 6).unwrap();
        assert_eq!(spec.b(), 2.0);
        let v = horowitz_eval(&spec, DiskPoint::ORIGIN);
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        assert_eq!(v.tail_bound, 0.0);

        // 1 - 2 z^2 = 0
        let root = DiskPoint::real(2f64.powf(-0.5)).unwrap();
        let v = horowitz_eval(&spec, root);
        assert!(v.value.norm() < 1e-10, "{}", v.value);
    }

    #[test]
    fn horowitz_refinement_stays_within_tail_bound() {
        let spec = HorowitzSpec::new(1.0, 10).unwrap();
        let z = pt(0.5, 0.0);
        let coarse = horowitz_eval(&spec, z);
        let fine = horowitz_eval(&spec.with_levels(20).unwrap(), z);
        assert!(coarse.tail_bound.is_finite());
        let allowed = (coarse.tail_bound.exp() - 1.0) * coarse.value.norm();
        assert!((coarse.value - fine.value).norm() <= allowed.max(f64::EPSILON));
    }

    #[test]
    fn horowitz_rejects_bad_parameters() {
        assert!(HorowitzSpec::new(1.0, 0).is_err());
        assert!(HorowitzSpec::new(0.0, 3).is_err());
        assert!(HorowitzSpec::new(-1.0, 3).is_err());
        let s = HorowitzSpec::new(3.0, 2).unwrap();
        assert_eq!(s.b(), 2f64.powf(1.0 / 3.0));
        assert!(s.b() > 1.0);
    }

    #[test]
    fn tail_bound_shrinks_with_depth() {
        let z = pt(0.9, 0.3);
        let mut last = f64::INFINITY;
        for k in 1..12 {
            let v = horowitz_eval(&HorowitzSpec::new(2.0, k).unwrap(), z);
            assert!(v.tail_bound <= last);
            last = v.tail_bound;
        }
        assert!(last.is_finite());
    }

    fn arb_point() -> impl Strategy<Value = DiskPoint> {
        (0.0..0.97f64, 0.0..TAU).prop_map(|(r, t)| DiskPoint::from_polar(r, t).unwrap())
    }

    proptest! {
        #[test]
        fn pseudo_dist_is_symmetric_and_bounded(z in arb_point(), w in arb_point()) {
            let d = pseudo_dist(z, w);
            prop_assert!((0.0..1.0).contains(&d));
            prop_assert!((d - pseudo_dist(w, z)).abs() < 1e-15);
        }

        #[test]
        fn pseudo_dist_is_mobius_invariant(a in arb_point(), z in arb_point(), w in arb_point()) {
            let za = mobius_involution(a, z).unwrap();
            let wa = mobius_involution(a, w).unwrap();
            prop_assert!((pseudo_dist(za, wa) - pseudo_dist(z, w)).abs() < 1e-12);
        }

        #[test]
        fn blaschke_modulus_below_one(z in arb_point(), a in arb_point(), b in arb_point()) {
            prop_assert!(blaschke_eval(&[a, b], z).norm() < 1.0);
        }

        #[test]
        fn horowitz_refinement_invariant(r in 0.0..0.95f64, t in 0.0..TAU, k in 2u32..8, extra in 1u32..6) {
            let z = DiskPoint::from_polar(r, t).unwrap();
            let spec = HorowitzSpec::new(1.5, k).unwrap();
            let coarse = horowitz_eval(&spec, z);
            prop_assume!(coarse.tail_bound.is_finite());
            let fine = horowitz_eval(&spec.with_levels(k + extra).unwrap(), z);
            let allowed = (coarse.tail_bound.exp() - 1.0) * coarse.value.norm();
            prop_assert!((coarse.value - fine.value).norm() <= allowed + 1e-14);
        }
    }
}
