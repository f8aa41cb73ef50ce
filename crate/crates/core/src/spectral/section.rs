use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::measures::{angular_mean, GridMeasure, Measure};

use super::report::{hermitian_extremes, validate_ladder, SeriesPoint, SpectralReport};

/// `(M_n)_{jk} = integral of e_j conj(e_k) d mu` for the orthonormal Bergman basis
/// `e_j(z) = sqrt(j + 1) z^j`, `j < n`.
///
/// Atoms are summed exactly in atom order. Grid cells are integrated exactly under the
/// grid's uniform-in-`(|z|^2, arg z)` density, so the normalized-area grid reproduces the
/// identity up to round-off at any resolution.
pub fn section_matrix(mu: &Measure, n: usize) -> DMatrix<Complex64> {
    match mu {
        Measure::Discrete(d) => {
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            for atom in d.atoms() {
                let z = atom.point.to_complex();
                let mut power = Complex64::new(1.0, 0.0);
                for (j, ej) in e.iter_mut().enumerate() {
                    *ej = power * ((j + 1) as f64).sqrt();
                    power *= z;
                }
                for k in 0..n {
                    let ck = e[k].conj() * atom.weight;
                    for j in 0..n {
                        m[(j, k)] += e[j] * ck;
                    }
                }
            }
            m
        }
        Measure::Grid(g) => grid_section(g, n),
    }
}

fn grid_section(g: &GridMeasure, n: usize) -> DMatrix<Complex64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    // e_j conj(e_k) = sqrt((j+1)(k+1)) r^{j+k} e^{i(j-k) theta} separates into a radial
    // moment per ring and an angular moment per cell; every ring shares the same angular
    // partition.
    let width = 1.0 / g.ntheta() as f64;
    let max_d = n as i64 - 1;
    let angular: Vec<Complex64> =
        (-max_d..=max_d).map(|d| (0..g.ntheta()).map(|c| angular_mean(c as f64 * width, width, d)).sum()).collect();
    let mut radial = vec![0.0f64; 2 * n - 1];
    for i in 0..g.nr() {
        let (a, b) = g.ring(i);
        let (s1, s2) = (a * a, b * b);
        let w = g.cell_weight(i);
        for (m, acc) in radial.iter_mut().enumerate() {
            // Mean of s^{m/2} over [s1, s2].
            let q = 0.5 * m as f64 + 1.0;
            *acc += w * (s2.powf(q) - s1.powf(q)) / (q * (s2 - s1));
        }
    }
    DMatrix::from_fn(n, n, |j, k| {
        let d = j as i64 - k as i64;
        let c = (((j + 1) * (k + 1)) as f64).sqrt();
        angular[(d + max_d) as usize] * (c * radial[j + k])
    })
}

/// Spectrum of the degree-`< n` section: `margin = eig_min(M_n)`.
///
/// `eig_min` bounds the squared lower sampling constant from above, so its collapse refutes
/// the sampling inequality; a positive value on sections does not by itself certify it.
/// `eig_max` estimates the squared embedding bound.
pub fn section_matrix_spectrum(mu: &Measure, n: usize) -> Result<SpectralReport> {
    section_ladder(mu, &[n])
}

/// Section spectra for every `n` of the ladder, all read from one assembled matrix.
pub fn section_ladder(mu: &Measure, ladder: &[usize]) -> Result<SpectralReport> {
    validate_ladder(ladder, usize::MAX)?;
    if mu.total_mass() <= 0.0 {
        return Err(invalid("section spectrum of the zero measure"));
    }
    let top = *ladder.last().unwrap();
    let full = section_matrix(mu, top);
    let mut series = Vec::with_capacity(ladder.len());
    let mut last = (0.0, 0.0);
    for &n in ladder {
        let sub = full.view((0, 0), (n, n)).into_owned();
        let (lo, hi) = hermitian_extremes(&sub);
        series.push(SeriesPoint { n, margin: lo });
        last = (lo, hi);
    }
    let (eig_min, eig_max) = last;
    Ok(SpectralReport { n: top, eig_min, eig_max, margin: eig_min, condition: eig_max / eig_min, series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::DiskPoint;
    use crate::measures::{build_sigma_grid, DiscreteMeasure};
    use std::f64::consts::TAU;

    fn max_identity_defect(m: &DMatrix<Complex64>) -> f64 {
        let id = DMatrix::<Complex64>::identity(m.nrows(), m.ncols());
        (m - id).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn sigma_sections_are_the_identity() {
        let sigma = Measure::from(build_sigma_grid(64, 64).unwrap());
        assert!(max_identity_defect(&section_matrix(&sigma, 32)) < 1e-12);
        let r = section_matrix_spectrum(&sigma, 16).unwrap();
        assert!((r.eig_min - 1.0).abs() < 1e-12 && (r.eig_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inner_disk_measures_lose_the_lower_bound() {
        let atoms: Vec<_> = (0..40)
            .map(|k| (DiskPoint::from_polar(0.5 * (k % 4 + 1) as f64 / 4.0, TAU * k as f64 / 40.0).unwrap(), 0.05))
            .collect();
        let mu = Measure::from(DiscreteMeasure::new(atoms).unwrap());
        let r = section_ladder(&mu, &[8, 16, 32]).unwrap();
        assert!(r.series_ratio().unwrap() < 0.1);
    }

    #[test]
    fn sections_are_additive() {
        let a = DiscreteMeasure::new([(DiskPoint::new(0.3, 0.4).unwrap(), 0.7)]).unwrap();
        let b = DiscreteMeasure::new([(DiskPoint::new(-0.8, 0.1).unwrap(), 0.2)]).unwrap();
        let ab = DiscreteMeasure::new(a.atoms().iter().chain(b.atoms()).map(|x| (x.point, x.weight))).unwrap();
        let lhs = section_matrix(&Measure::from(ab), 12);
        let rhs = section_matrix(&Measure::from(a), 12) + section_matrix(&Measure::from(b), 12);
        assert!((lhs - rhs).iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn ladder_reads_leading_blocks() {
        let mu = Measure::from(DiscreteMeasure::new([(DiskPoint::new(0.9, 0.0).unwrap(), 1.0)]).unwrap());
        let r = section_ladder(&mu, &[1, 2, 4]).unwrap();
        assert_eq!(r.series.len(), 3);
        assert!((r.series[0].margin - 1.0).abs() < 1e-15);
        assert!(r.series[1].margin.abs() < 1e-12);
        assert!(section_ladder(&mu, &[4, 2]).is_err());
    }
}
