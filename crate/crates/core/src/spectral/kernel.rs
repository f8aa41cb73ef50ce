use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::disk::{one_minus_conj_mul, DiskPoint};
use crate::error::{Error, Result};
use crate::sequences::PointSequence;
use crate::space::Space;

use super::report::hermitian_extremes;

/// Condition number beyond which a directly factored Gram matrix is reported as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e14;

/// Gram matrix of the normalized reproducing kernels at a point sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<Complex64>,
    space: Space,
    points: PointSequence,
}

impl GramMatrix {
    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn points(&self) -> &PointSequence {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `G_jk = k_{z_k}(z_j) / (||k_{z_j}|| ||k_{z_k}||)` with `k_w(z) = (1 - conj(w) z)^{-alpha}`,
/// `alpha` = 1 (Hardy) or 2 (Bergman).
///
/// Entries are formed as `((1-|z_j|^2)(1-|z_k|^2))^{alpha/2} / (1 - conj(z_k) z_j)^alpha`, so
/// the diagonal is exactly 1.
pub fn kernel_gram(points: &PointSequence, space: Space) -> GramMatrix {
    let pts = points.points();
    let n = pts.len();
    let scale: Vec<f64> = pts.iter().map(|z| z.one_minus_modulus_sq().sqrt()).collect();
    let alpha = space.exponent();
    let entries = DMatrix::from_fn(n, n, |j, k| {
        if j == k {
            return Complex64::new(1.0, 0.0);
        }
        let base = Complex64::new(scale[j] * scale[k], 0.0) / one_minus_conj_mul(pts[k], pts[j]);
        base.powi(alpha)
    });
    GramMatrix { entries, space, points: points.clone() }
}

/// `log |B_(j)(z_j)|` and `B_(j)(z_j) / |B_(j)(z_j)|`, where `B_(j)` is the Blaschke product
/// over every point except `z_j`.
fn punctured_blaschke(pts: &[DiskPoint], j: usize) -> (f64, Complex64) {
    let zj = pts[j];
    let mut log_mod = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);
    for (m, &zm) in pts.iter().enumerate() {
        if m == j {
            continue;
        }
        let f = (zj.to_complex() - zm.to_complex()) / one_minus_conj_mul(zm, zj);
        let r = f.norm();
        log_mod += r.ln();
        phase *= f / r;
    }
    (log_mod, phase / phase.norm())
}

/// `(G^{-1})_{ij} e^{c_i + c_j}` for the unnormalized Hardy Gram `G_jk = 1 / (1 - conj(z_k) z_j)`.
///
/// Uses the closed form
/// `(G^{-1})_{ij} = (1-|z_i|^2)(1-|z_j|^2) / ((1 - conj(z_i) z_j) B_(j)(z_j) conj(B_(i)(z_i)))`,
/// which follows from the dual basis `B_(j) k_{z_j} / (B_(j)(z_j) k_{z_j}(z_j))` of the
/// kernels. No matrix is factored, so the accuracy does not depend on the condition number
/// of `G`; magnitudes are carried in log form until the final entry.
pub(crate) fn hardy_inverse_scaled(pts: &[DiskPoint], log_scale: &[f64]) -> DMatrix<Complex64> {
    let n = pts.len();
    let parts: Vec<(f64, Complex64)> = (0..n)
        .map(|j| {
            let (log_b, phase) = punctured_blaschke(pts, j);
            (pts[j].one_minus_modulus_sq().ln() - log_b + log_scale[j], phase)
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| {
        let (li, ui) = parts[i];
        let (lj, uj) = parts[j];
        let mag = (li + lj).exp();
        Complex64::new(mag, 0.0) / (one_minus_conj_mul(pts[i], pts[j]) * uj * ui.conj())
    })
}

/// Inverse of the normalized Hardy Gram matrix, in closed form.
pub fn hardy_gram_inverse(points: &PointSequence) -> DMatrix<Complex64> {
    let pts = points.points();
    let log_scale: Vec<f64> = pts.iter().map(|z| -0.5 * z.one_minus_modulus_sq().ln()).collect();
    hardy_inverse_scaled(pts, &log_scale)
}

/// Inverse of the normalized Gram matrix by Cholesky factorization, with the extreme
/// eigenvalues of the Gram matrix itself.
///
/// Fails with [`Error::NumericallySingular`] once the condition number passes
/// [`SINGULARITY_THRESHOLD`] or the factorization breaks down.
pub(crate) fn factored_inverse(gram: &GramMatrix) -> Result<(DMatrix<Complex64>, f64, f64)> {
    let n = gram.len();
    let (lo, hi) = hermitian_extremes(gram.entries());
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if condition > SINGULARITY_THRESHOLD {
        return Err(Error::NumericallySingular { n, condition });
    }
    let chol = gram.entries().clone().cholesky().ok_or(Error::NumericallySingular { n, condition })?;
    Ok((chol.inverse(), lo, hi))
}
