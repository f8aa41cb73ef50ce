use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::disk::{blaschke_eval, DiskPoint};
use crate::error::{invalid, Error, Result};
use crate::sequences::PointSequence;

/// Smallest admissible `|B_N(z_n)|` at an interpolation node.
const NEAR_COLLISION: f64 = 1e-12;

/// Radius of the circle on which the sup norm is sampled.
const SUP_RADIUS: f64 = 0.999;
const SUP_SAMPLES: usize = 2048;

/// `h = B_N Q`: the Blaschke product over the unconstrained tail times the Lagrange
/// polynomial through `w_n / B_N(z_n)` at the nodes.
#[derive(Debug, Clone)]
pub struct FiniteInterpolant {
    nodes: Vec<Complex64>,
    /// Barycentric form of `Q`: values and weights at the nodes.
    q_values: Vec<Complex64>,
    bary: Vec<Complex64>,
    tail: Vec<DiskPoint>,
    sup_sample: f64,
    q_sup_sample: f64,
}

impl FiniteInterpolant {
    /// `Q(z)` by the second barycentric formula; exact at the nodes.
    pub fn eval_polynomial(&self, z: Complex64) -> Complex64 {
        if self.nodes.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for ((&x, &y), &l) in self.nodes.iter().zip(&self.q_values).zip(&self.bary) {
            let d = z - x;
            if d == Complex64::new(0.0, 0.0) {
                return y;
            }
            let t = l / d;
            num += t * y;
            den += t;
        }
        num / den
    }

    /// `h(z) = B_N(z) Q(z)`.
    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        blaschke_eval(&self.tail, z) * self.eval_polynomial(z.to_complex())
    }

    /// `max |h|` over equally spaced samples on the circle of radius 0.999.
    pub fn sup_sample(&self) -> f64 {
        self.sup_sample
    }

    /// `max |Q|` on the same samples; bounds [`Self::sup_sample`] because `|B_N| < 1`.
    pub fn polynomial_sup_sample(&self) -> f64 {
        self.q_sup_sample
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// Interpolates `data` at the first `data.len()` points and vanishes at the rest.
///
/// Fails with [`Error::IllConditioned`] when the tail Blaschke product is below `1e-12` in
/// modulus at a node, where dividing by it would amplify the data beyond use.
pub fn finite_interpolant_hardy(points: &PointSequence, data: &[Complex64]) -> Result<FiniteInterpolant> {
    let n = data.len();
    if n > points.len() {
        return Err(invalid(format!("{n} data values for {} points", points.len())));
    }
    if data.iter().any(|w| !w.is_finite()) {
        return Err(Error::NonFinite("interpolation data".into()));
    }
    let head = &points.points()[..n];
    let tail = points.points()[n..].to_vec();

    let mut q_values = Vec::with_capacity(n);
    for (&z, &w) in head.iter().zip(data) {
        let b = blaschke_eval(&tail, z);
        if b.norm() < NEAR_COLLISION {
            return Err(Error::IllConditioned(format!("|B_N| = {:e} at node ({}, {})", b.norm(), z.re(), z.im())));
        }
        q_values.push(w / b);
    }

    let nodes: Vec<Complex64> = head.iter().map(|z| z.to_complex()).collect();
    let bary = barycentric_weights(&nodes);
    let mut out = FiniteInterpolant { nodes, q_values, bary, tail, sup_sample: 0.0, q_sup_sample: 0.0 };
    for k in 0..SUP_SAMPLES {
        let z = DiskPoint::from_polar(SUP_RADIUS, TAU * k as f64 / SUP_SAMPLES as f64)?;
        let q = out.eval_polynomial(z.to_complex());
        out.q_sup_sample = out.q_sup_sample.max(q.norm());
        out.sup_sample = out.sup_sample.max((blaschke_eval(&out.tail, z) * q).norm());
    }
    Ok(out)
}

/// `1 / prod_{m != j} (x_j - x_m)`, rescaled by a common factor; the barycentric formula is
/// invariant under that, and the rescaling keeps long node lists away from under/overflow.
fn barycentric_weights(nodes: &[Complex64]) -> Vec<Complex64> {
    let logs: Vec<(f64, Complex64)> = nodes
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut log_mod = 0.0;
            let mut phase = Complex64::new(1.0, 0.0);
            for (m, &y) in nodes.iter().enumerate() {
                if m != j {
                    let d = x - y;
                    log_mod -= d.norm().ln();
                    phase *= d.conj() / d.norm();
                }
            }
            (log_mod, phase)
        })
        .collect();
    let top = logs.iter().map(|l| l.0).fold(f64::NEG_INFINITY, f64::max);
    logs.into_iter().map(|(l, p)| p * (l - top).exp()).collect()
}
