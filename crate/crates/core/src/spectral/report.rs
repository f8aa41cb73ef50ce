use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

/// One point of a truncation ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub n: usize,
    pub margin: f64,
}

/// Spectral summary of the largest truncation together with the margin at every rung.
///
/// What `margin` means depends on the producer: the least-norm interpolation constant,
/// the smallest Riesz bound, or the smallest section eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub eig_min: f64,
    pub eig_max: f64,
    pub margin: f64,
    pub condition: f64,
    pub series: Vec<SeriesPoint>,
}

impl SpectralReport {
    /// `margin` at the last rung divided by `margin` at the first.
    pub fn series_ratio(&self) -> Option<f64> {
        match (self.series.first(), self.series.last()) {
            (Some(a), Some(b)) if a.margin != 0.0 => Some(b.margin / a.margin),
            _ => None,
        }
    }

    /// Margin recorded for truncation `n`, if that rung was computed.
    pub fn margin_at(&self, n: usize) -> Option<f64> {
        self.series.iter().find(|s| s.n == n).map(|s| s.margin)
    }
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
///
/// The input is symmetrized first, so round-off asymmetry in assembled matrices does not
/// leak into the spectrum.
pub fn hermitian_extremes(m: &DMatrix<Complex64>) -> (f64, f64) {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let lo = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

pub(crate) fn validate_ladder(ladder: &[usize], available: usize) -> crate::error::Result<()> {
    use crate::error::invalid;
    if ladder.is_empty() {
        return Err(invalid("truncation ladder is empty"));
    }
    if ladder[0] == 0 {
        return Err(invalid("truncation sizes must be at least 1"));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("truncation ladder must be strictly increasing, got {ladder:?}")));
    }
    let last = *ladder.last().unwrap();
    if last > available {
        return Err(invalid(format!("truncation {last} exceeds the {available} available")));
    }
    Ok(())
}
