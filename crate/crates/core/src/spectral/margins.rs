use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::measures::DiscreteMeasure;
use crate::sequences::PointSequence;
use crate::space::Space;

use super::kernel::{factored_inverse, hardy_gram_inverse, hardy_inverse_scaled, kernel_gram};
use super::report::{hermitian_extremes, validate_ladder, SeriesPoint, SpectralReport};

/// `A^{-1/2} G^{-1} A^{-1/2}` for the unnormalized kernel Gram `G` of the atoms and
/// `A = diag(a_n)`, together with the extreme eigenvalues of the normalized Gram.
fn weighted_inverse(mu: &DiscreteMeasure, space: Space) -> Result<(DMatrix<Complex64>, f64, f64)> {
    let points = mu.points();
    let pts = points.points();
    match space {
        Space::Hardy => {
            let log_scale: Vec<f64> = mu.atoms().iter().map(|a| -0.5 * a.weight.ln()).collect();
            let m = hardy_inverse_scaled(pts, &log_scale);
            // The smallest Gram eigenvalue is read off the closed-form inverse, which stays
            // accurate far past the point where a direct eigensolve bottoms out at round-off.
            let (_, inv_max) = hermitian_extremes(&hardy_gram_inverse(&points));
            let (_, hi) = hermitian_extremes(kernel_gram(&points, space).entries());
            Ok((m, 1.0 / inv_max, hi))
        }
        Space::Bergman => {
            let gram = kernel_gram(&points, space);
            let (inv, lo, hi) = factored_inverse(&gram)?;
            // G^{-1} = N Ghat^{-1} N with N = diag(1 - |z_n|^2) for the Bergman kernel.
            let s: Vec<f64> = mu.atoms().iter().map(|a| a.point.one_minus_modulus_sq() / a.weight.sqrt()).collect();
            let m = DMatrix::from_fn(inv.nrows(), inv.ncols(), |i, j| inv[(i, j)] * (s[i] * s[j]));
            Ok((m, lo, hi))
        }
    }
}

/// Least-norm interpolation constants over a truncation ladder.
///
/// For each `n` in `n_list`, with the first `n` atoms `(z_k, a_k)`,
/// `C_n^2 = lambda_max(A^{-1/2} G^{-1} A^{-1/2})` where `G` is the kernel Gram matrix and
/// `A = diag(a_k)`. `C_n` is the smallest constant such that every data vector `w` has an
/// interpolant `f(z_k) = w_k` with `||f|| <= C_n (sum_k a_k |w_k|^2)^{1/2}`.
///
/// The report's `eig_min`, `eig_max` and `condition` describe the normalized Gram matrix of
/// the largest truncation; `margin` is `C_n` there.
///
/// Hardy Gram inverses are evaluated in closed form and never fail. Bergman Gram matrices
/// are factored, and a condition number above [`super::SINGULARITY_THRESHOLD`] is returned as
/// [`Error::NumericallySingular`].
pub fn least_norm_margin(mu: &DiscreteMeasure, space: Space, n_list: &[usize]) -> Result<SpectralReport> {
    if mu.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    validate_ladder(n_list, mu.len())?;
    let mut series = Vec::with_capacity(n_list.len());
    let mut last = (0.0, 0.0, 0.0);
    for &n in n_list {
        let (m, lo, hi) = weighted_inverse(&mu.prefix(n), space)?;
        let (_, top) = hermitian_extremes(&m);
        let margin = top.max(0.0).sqrt();
        series.push(SeriesPoint { n, margin });
        last = (margin, lo, hi);
    }
    let (margin, eig_min, eig_max) = last;
    Ok(SpectralReport { n: *n_list.last().unwrap(), eig_min, eig_max, margin, condition: eig_max / eig_min, series })
}

/// Norm of the least-norm interpolant of `data` at the atoms: `(w^* G^{-1} w)^{1/2}`.
pub fn min_norm_interpolation_norm(mu: &DiscreteMeasure, space: Space, data: &[Complex64]) -> Result<f64> {
    if data.len() != mu.len() {
        return Err(invalid(format!("{} data values for {} atoms", data.len(), mu.len())));
    }
    let (m, _, _) = weighted_inverse(mu, space)?;
    // m = A^{-1/2} G^{-1} A^{-1/2}, so w^* G^{-1} w = v^* m v with v = A^{1/2} w.
    let v = DVector::from_iterator(data.len(), data.iter().zip(mu.atoms()).map(|(w, a)| w * a.weight.sqrt()));
    let q = (v.adjoint() * &m * &v)[(0, 0)].re;
    Ok(q.max(0.0).sqrt())
}

fn riesz_extremes(points: &PointSequence, space: Space) -> (f64, f64) {
    let gram = kernel_gram(points, space);
    let (lo, hi) = hermitian_extremes(gram.entries());
    match space {
        Space::Hardy => {
            let (_, inv_max) = hermitian_extremes(&hardy_gram_inverse(points));
            (1.0 / inv_max, hi)
        }
        Space::Bergman => (lo, hi),
    }
}

/// Extreme eigenvalues of the normalized kernel Gram matrix; `margin` is the lower Riesz bound.
pub fn riesz_bounds(points: &PointSequence, space: Space) -> Result<SpectralReport> {
    riesz_ladder(points, space, &[points.len()])
}

/// Lower Riesz bounds of the first `n` points for every `n` in the ladder.
pub fn riesz_ladder(points: &PointSequence, space: Space, ladder: &[usize]) -> Result<SpectralReport> {
    if points.is_empty() {
        return Err(invalid("Riesz bounds need at least one point"));
    }
    validate_ladder(ladder, points.len())?;
    let mut series = Vec::with_capacity(ladder.len());
    let mut last = (0.0, 0.0);
    for &n in ladder {
        let (lo, hi) = riesz_extremes(&points.prefix(n), space);
        series.push(SeriesPoint { n, margin: lo });
        last = (lo, hi);
    }
    let (eig_min, eig_max) = last;
    Ok(SpectralReport {
        n: *ladder.last().unwrap(),
        eig_min,
        eig_max,
        margin: eig_min,
        condition: eig_max / eig_min,
        series,
    })
}
