//! Closed-range verdicts for embeddings of Hardy and Bergman spaces into `L^q(mu)`.
//!
//! Both decision procedures only ever look at finite data, while the properties they decide
//! are asymptotic. Every cutoff is therefore an explicit, configurable [`Thresholds`] field,
//! every number that went into a verdict is attached as [`Evidence`], and
//! [`Status::Inconclusive`] is returned whenever the data does not clearly separate.

use serde::Serialize;

use crate::disk::HorowitzSpec;
use crate::error::{invalid, Error, Result};
use crate::measures::{
    blaschke_sum, build_nu_z, carleson_constant, weight_equivalence_ratio, DiscreteMeasure, Measure,
};
use crate::sequences::{horowitz_zeros, interpolation_constant};
use crate::space::Space;
use crate::spectral::{least_norm_margin, riesz_ladder, section_ladder, SpectralReport};

/// Cutoffs turning measured quantities into verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thresholds {
    /// Smallest interpolation constant accepted as "uniformly separated".
    pub delta_min: f64,
    /// Largest accepted `hi / lo` of the weight equivalence ratios.
    pub equiv_cap: f64,
    /// Largest accepted growth of the least-norm constant across a doubling of `n`.
    pub growth_cap: f64,
    /// Growth of the least-norm constant beyond which it is treated as divergent.
    pub diverge_cap: f64,
    /// Smallest accepted section eigenvalue.
    pub sampling_floor: f64,
    /// Smallest accepted lower Riesz bound.
    pub riesz_min: f64,
    /// A last-to-first ladder ratio below this counts as decay.
    pub decay_cap: f64,
    /// A last-to-first ladder ratio at or above this counts as stable.
    pub stable_ratio: f64,
    /// Largest accepted `sum (1 - |z_n|)` before the support stops looking like a zero set.
    pub blaschke_cap: f64,
    /// Deepest dyadic level of the Carleson screen.
    pub carleson_levels: u32,
    /// Truncation ladder for Bergman sections and Riesz bounds.
    pub ladder: Vec<usize>,
    /// Truncation ladder for least-norm constants; `None` picks `ceil(N/4), ceil(N/2), N`.
    pub hardy_ladder: Option<Vec<usize>>,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            delta_min: 1e-3,
            equiv_cap: 1e3,
            growth_cap: 2.0,
            diverge_cap: 10.0,
            sampling_floor: 1e-3,
            riesz_min: 1e-3,
            decay_cap: 0.2,
            stable_ratio: 0.5,
            blaschke_cap: 50.0,
            carleson_levels: 12,
            ladder: vec![8, 16, 32],
            hardy_ladder: None,
        }
    }
}

impl Thresholds {
    /// Overrides one scalar cutoff by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(invalid(format!("threshold {name} must be finite, got {value}")));
        }
        let slot = match name {
            "delta_min" => &mut self.delta_min,
            "equiv_cap" => &mut self.equiv_cap,
            "growth_cap" => &mut self.growth_cap,
            "diverge_cap" => &mut self.diverge_cap,
            "sampling_floor" => &mut self.sampling_floor,
            "riesz_min" => &mut self.riesz_min,
            "decay_cap" => &mut self.decay_cap,
            "stable_ratio" => &mut self.stable_ratio,
            "blaschke_cap" => &mut self.blaschke_cap,
            "carleson_levels" => {
                if value < 0.0 || value.fract() != 0.0 || value > f64::from(crate::measures::MAX_DYADIC_LEVEL) {
                    return Err(invalid(format!("carleson_levels must be an integer in 0..=60, got {value}")));
                }
                self.carleson_levels = value as u32;
                return Ok(());
            }
            other => return Err(invalid(format!("unknown threshold `{other}`"))),
        };
        *slot = value;
        Ok(())
    }

    fn hardy_rungs(&self, n: usize) -> Vec<usize> {
        match &self.hardy_ladder {
            Some(l) => l.iter().copied().filter(|&k| k <= n).collect(),
            None => {
                let mut l = vec![n.div_ceil(4), n.div_ceil(2), n];
                l.dedup();
                l
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Closed,
    NotClosed,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    InterpolatingForm,
    Sampling,
    PNeqQ,
    NonDiscrete,
    WeightMismatch,
    MarginDivergence,
    InsufficientCertainty,
}

/// One measured quantity and how it compared to its cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub criterion: String,
    pub value: f64,
    /// `None` for screening values that are recorded but not compared against anything.
    pub threshold: Option<f64>,
    pub pass: bool,
}

impl Evidence {
    fn at_least(criterion: &str, value: f64, threshold: f64) -> Self {
        Evidence { criterion: criterion.into(), value, threshold: Some(threshold), pass: value >= threshold }
    }

    fn at_most(criterion: &str, value: f64, threshold: f64) -> Self {
        Evidence { criterion: criterion.into(), value, threshold: Some(threshold), pass: value <= threshold }
    }

    fn recorded(criterion: &str, value: f64) -> Self {
        Evidence { criterion: criterion.into(), value, threshold: None, pass: value.is_finite() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub route: Route,
    pub space: Space,
    pub p: f64,
    pub q: f64,
    pub evidence: Vec<Evidence>,
}

fn check_exponents(p: f64, q: f64) -> Result<()> {
    for (name, v) in [("p", p), ("q", q)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(invalid(format!("exponent {name} must be positive and finite, got {v}")));
        }
    }
    Ok(())
}

fn ratio(report: &SpectralReport) -> f64 {
    report.series_ratio().unwrap_or(f64::NAN)
}

/// Decides whether `H^p -> L^q(mu)` has closed range.
///
/// The ladder: unequal exponents are never closed; a grid, or atoms whose Blaschke sum
/// exceeds the cap, cannot have the required atomic form. Otherwise the atoms must be
/// uniformly separated (`delta >= delta_min`), the weights comparable to `1 - |z_n|`
/// (`hi / lo <= equiv_cap`) and the least-norm interpolation constant flat across the last
/// doubling of `n` (`growth <= growth_cap`) for a `Closed` verdict. `NotClosed` needs a
/// failed form together with either a least-norm constant growing past `diverge_cap` or a
/// separation constant that keeps shrinking (`delta_N / delta_{N/2} < decay_cap`).
pub fn diagnose_hardy(mu: &Measure, p: f64, q: f64, cfg: &Thresholds) -> Result<Verdict> {
    check_exponents(p, q)?;
    let space = Space::Hardy;
    let screen = carleson_constant(mu, space, cfg.carleson_levels)?;
    let mut evidence = vec![Evidence::recorded("carleson-alpha1", screen.value)];
    let verdict = |status, route, evidence| Ok(Verdict { status, route, space, p, q, evidence });

    if p != q {
        evidence.push(Evidence::at_most("p-minus-q", (p - q).abs(), 0.0));
        return verdict(Status::NotClosed, Route::PNeqQ, evidence);
    }
    let d = match mu {
        Measure::Grid(_) => {
            evidence.push(Evidence { criterion: "atomic".into(), value: 0.0, threshold: Some(1.0), pass: false });
            return verdict(Status::NotClosed, Route::NonDiscrete, evidence);
        }
        Measure::Discrete(d) if d.is_empty() => return Err(Error::EmptyMeasure),
        Measure::Discrete(d) => d,
    };
    let bsum = blaschke_sum(d);
    evidence.push(Evidence::at_most("blaschke-sum", bsum, cfg.blaschke_cap));
    if bsum > cfg.blaschke_cap {
        return verdict(Status::NotClosed, Route::NonDiscrete, evidence);
    }

    let n = d.len();
    let points = d.points();
    let delta = interpolation_constant(&points)?.delta;
    let delta_half = interpolation_constant(&points.prefix(n.div_ceil(2)))?.delta;
    let (lo, hi) = weight_equivalence_ratio(d, space)?;
    let rungs = cfg.hardy_rungs(n);
    let margins = least_norm_margin(d, space, &rungs)?;
    let growth = growth_over_last_doubling(&margins);

    let delta_item = Evidence::at_least("delta", delta, cfg.delta_min);
    let equiv_item = Evidence::at_most("weight-equivalence", hi / lo, cfg.equiv_cap);
    let growth_item = Evidence::at_most("least-norm-growth", growth, cfg.growth_cap);
    let separated = delta_item.pass;
    let form_ok = separated && equiv_item.pass;
    evidence.extend([
        delta_item,
        equiv_item,
        Evidence::recorded("least-norm-margin", margins.margin),
        growth_item.clone(),
    ]);

    if form_ok && growth_item.pass {
        return verdict(Status::Closed, Route::InterpolatingForm, evidence);
    }
    if !form_ok {
        let diverge_item = Evidence::at_most("least-norm-divergence", growth, cfg.diverge_cap);
        let diverging = !diverge_item.pass;
        evidence.push(diverge_item);
        if diverging {
            return verdict(Status::NotClosed, Route::MarginDivergence, evidence);
        }
        if !separated {
            let trend = Evidence::at_least("delta-trend", delta / delta_half, cfg.decay_cap);
            let decaying = !trend.pass;
            evidence.push(trend);
            if decaying {
                return verdict(Status::NotClosed, Route::InterpolatingForm, evidence);
            }
        }
    }
    let route = if separated && !form_ok { Route::WeightMismatch } else { Route::InsufficientCertainty };
    verdict(Status::Inconclusive, route, evidence)
}

/// `C_N / C_n` where `n` is the largest rung at most `N / 2` (the first rung if none is).
fn growth_over_last_doubling(r: &SpectralReport) -> f64 {
    let last = r.series.last().expect("ladder is nonempty");
    let base = r.series.iter().rev().find(|s| 2 * s.n <= last.n + 1 && s.n < last.n).unwrap_or(&r.series[0]);
    last.margin / base.margin
}

/// Results of the two Bergman routes at exponent 2.
struct BergmanRoutes {
    sampling: Vec<Evidence>,
    sampling_ok: bool,
    sampling_decays: bool,
    interpolating: Option<(Vec<Evidence>, bool, bool)>,
}

fn bergman_routes(mu: &Measure, cfg: &Thresholds) -> Result<BergmanRoutes> {
    let sections = section_ladder(mu, &cfg.ladder)?;
    let floor = sections.series.iter().map(|s| s.margin).fold(f64::INFINITY, f64::min);
    let sratio = ratio(&sections);
    let sampling = vec![
        Evidence::at_least("section-floor", floor, cfg.sampling_floor),
        Evidence::at_least("section-ratio", sratio, cfg.stable_ratio),
    ];
    let sampling_ok = sampling.iter().all(|e| e.pass);
    let sampling_decays = sratio < cfg.decay_cap;

    let interpolating = match mu {
        Measure::Discrete(d) if !d.is_empty() => Some(bergman_interpolating_route(d, cfg)?),
        _ => None,
    };
    Ok(BergmanRoutes { sampling, sampling_ok, sampling_decays, interpolating })
}

fn bergman_interpolating_route(d: &DiscreteMeasure, cfg: &Thresholds) -> Result<(Vec<Evidence>, bool, bool)> {
    let n = d.len();
    let mut rungs: Vec<usize> = cfg.ladder.iter().copied().filter(|&k| k < n).collect();
    let ladder_top = rungs.last().copied();
    rungs.push(n);
    let riesz = riesz_ladder(&d.points(), Space::Bergman, &rungs)?;
    // Stability is judged on the configured rungs; the floor uses every atom.
    let rratio = match ladder_top {
        Some(top) => riesz.margin_at(top).unwrap() / riesz.series[0].margin,
        None => 1.0,
    };
    let (lo, hi) = weight_equivalence_ratio(d, Space::Bergman)?;
    let items = vec![
        Evidence::at_least("riesz-floor", riesz.margin, cfg.riesz_min),
        Evidence::at_least("riesz-ratio", rratio, cfg.stable_ratio),
        Evidence::at_most("weight-equivalence", hi / lo, cfg.equiv_cap),
    ];
    let ok = items.iter().all(|e| e.pass);
    Ok((items, ok, rratio < cfg.decay_cap))
}

/// Decides whether `A^p -> L^q(mu)` has closed range.
///
/// At `p = q = 2` two routes are tried: `mu` behaves like a sampling measure (section
/// eigenvalues bounded below and stable along the ladder), or `mu` is a weighted
/// interpolating sequence (lower Riesz bound of the Bergman kernels bounded below and stable,
/// weights comparable to `(1 - |z_n|)^2`). Either passing gives `Closed`; `NotClosed` needs
/// certified decay on every applicable route. Other equal exponents only get trend evidence.
pub fn diagnose_bergman(mu: &Measure, p: f64, q: f64, cfg: &Thresholds) -> Result<Verdict> {
    check_exponents(p, q)?;
    let space = Space::Bergman;
    let screen = carleson_constant(mu, space, cfg.carleson_levels)?;
    let mut evidence = vec![Evidence::recorded("carleson-alpha2", screen.value)];
    let verdict = |status, route, evidence| Ok(Verdict { status, route, space, p, q, evidence });

    if p != q {
        evidence.push(Evidence::at_most("p-minus-q", (p - q).abs(), 0.0));
        return verdict(Status::NotClosed, Route::PNeqQ, evidence);
    }
    let routes = bergman_routes(mu, cfg)?;
    if p != 2.0 {
        evidence.extend(routes.sampling);
        if let Some((items, _, _)) = routes.interpolating {
            evidence.extend(items);
        }
        return verdict(Status::Inconclusive, Route::InsufficientCertainty, evidence);
    }
    if routes.sampling_ok {
        evidence.extend(routes.sampling);
        return verdict(Status::Closed, Route::Sampling, evidence);
    }
    if let Some((items, true, _)) = &routes.interpolating {
        evidence.extend(items.iter().cloned());
        return verdict(Status::Closed, Route::InterpolatingForm, evidence);
    }
    let interp_decays = routes.interpolating.as_ref().is_none_or(|r| r.2);
    let status_route = if routes.sampling_decays && interp_decays {
        (Status::NotClosed, Route::MarginDivergence)
    } else {
        (Status::Inconclusive, Route::InsufficientCertainty)
    };
    evidence.extend(routes.sampling);
    if let Some((items, _, _)) = routes.interpolating {
        evidence.extend(items);
    }
    verdict(status_route.0, status_route.1, evidence)
}

/// Sampling and interpolation margins of the Horowitz zero set measure `nu_Z` at exponent 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HorowitzReport {
    pub p0: f64,
    pub levels: u32,
    pub points: usize,
    pub carleson_alpha2: f64,
    pub sampling: SpectralReport,
    pub sampling_ratio: f64,
    pub riesz: SpectralReport,
    pub riesz_ratio: f64,
    pub verdict: Verdict,
}

/// Deepest Horowitz level accepted by [`horowitz_threshold_report`] (510 points).
pub const MAX_REPORT_LEVELS: u32 = 8;

/// Builds `nu_Z` for the Horowitz zeros with parameter `p0` and `levels` levels, then reports
/// the section (sampling) ladder, the Bergman Riesz ladder over the first `n` zeros, the
/// Carleson screen and the Bergman verdict at `p = q = 2`.
///
/// Sampling should be healthy when `2 > p0` and interpolation when `2 < p0`.
pub fn horowitz_threshold_report(p0: f64, levels: u32, n_ladder: &[usize], cfg: &Thresholds) -> Result<HorowitzReport> {
    if levels > MAX_REPORT_LEVELS {
        return Err(invalid(format!("at most {MAX_REPORT_LEVELS} levels, got {levels}")));
    }
    let spec = HorowitzSpec::new(p0, levels)?;
    let zeros = horowitz_zeros(&spec)?;
    let nu = Measure::from(build_nu_z(&zeros)?);
    let carleson_alpha2 = carleson_constant(&nu, Space::Bergman, cfg.carleson_levels)?.value;
    let sampling = section_ladder(&nu, n_ladder)?;
    let rungs: Vec<usize> = n_ladder.iter().copied().filter(|&n| n <= zeros.len()).collect();
    let riesz = riesz_ladder(&zeros, Space::Bergman, if rungs.is_empty() { &[1] } else { &rungs })?;
    let mut local = cfg.clone();
    local.ladder = n_ladder.to_vec();
    let verdict = diagnose_bergman(&nu, 2.0, 2.0, &local)?;
    Ok(HorowitzReport {
        p0,
        levels,
        points: zeros.len(),
        carleson_alpha2,
        sampling_ratio: ratio(&sampling),
        riesz_ratio: ratio(&riesz),
        sampling,
        riesz,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::DiskPoint;
    use crate::measures::{build_mu_z, build_sigma_grid};
    use crate::sequences::{double_sequence, gen_radial};

    fn radial_mu(n: usize) -> Measure {
        Measure::from(build_mu_z(&gen_radial(0.5, n).unwrap()).unwrap())
    }

    #[test]
    fn radial_sequence_is_closed() {
        let v = diagnose_hardy(&radial_mu(30), 2.0, 2.0, &Thresholds::default()).unwrap();
        assert_eq!((v.status, v.route), (Status::Closed, Route::InterpolatingForm));
        assert!(v.evidence.iter().all(|e| e.pass));
    }

    #[test]
    fn doubled_sequence_diverges() {
        let twins = double_sequence(&gen_radial(0.5, 15).unwrap(), 2.0).unwrap();
        let mu = Measure::from(build_mu_z(&twins).unwrap());
        let v = diagnose_hardy(&mu, 2.0, 2.0, &Thresholds::default()).unwrap();
        assert_eq!((v.status, v.route), (Status::NotClosed, Route::MarginDivergence));
    }

    #[test]
    fn unequal_exponents_are_never_closed() {
        for mu in [radial_mu(5), Measure::from(build_sigma_grid(16, 16).unwrap())] {
            let v = diagnose_hardy(&mu, 2.0, 4.0, &Thresholds::default()).unwrap();
            assert_eq!((v.status, v.route), (Status::NotClosed, Route::PNeqQ));
            let v = diagnose_bergman(&mu, 3.0, 1.0, &Thresholds::default()).unwrap();
            assert_eq!((v.status, v.route), (Status::NotClosed, Route::PNeqQ));
        }
    }

    #[test]
    fn grids_are_not_atomic() {
        let sigma = Measure::from(build_sigma_grid(32, 32).unwrap());
        let v = diagnose_hardy(&sigma, 2.0, 2.0, &Thresholds::default()).unwrap();
        assert_eq!((v.status, v.route), (Status::NotClosed, Route::NonDiscrete));
        let v = diagnose_bergman(&sigma, 2.0, 2.0, &Thresholds::default()).unwrap();
        assert_eq!((v.status, v.route), (Status::Closed, Route::Sampling));
        assert!(v.evidence.iter().all(|e| e.pass));
    }

    #[test]
    fn weights_far_from_the_gap_are_a_mismatch() {
        let seq = gen_radial(0.5, 12).unwrap();
        let mu = DiscreteMeasure::new(seq.iter().map(|&z| (z, z.one_minus_modulus().powi(4)))).unwrap();
        let v = diagnose_hardy(&Measure::from(mu), 2.0, 2.0, &Thresholds::default()).unwrap();
        assert_ne!(v.status, Status::Closed);
    }

    #[test]
    fn bergman_other_exponents_are_inconclusive() {
        let v = diagnose_bergman(&radial_mu(10), 3.0, 3.0, &Thresholds::default()).unwrap();
        assert_eq!((v.status, v.route), (Status::Inconclusive, Route::InsufficientCertainty));
    }

    #[test]
    fn threshold_overrides() {
        let mut t = Thresholds::default();
        t.set("delta_min", 0.5).unwrap();
        assert_eq!(t.delta_min, 0.5);
        t.set("carleson_levels", 7.0).unwrap();
        assert_eq!(t.carleson_levels, 7);
        assert!(t.set("carleson_levels", 7.5).is_err());
        assert!(t.set("nonsense", 1.0).is_err());
        assert!(t.set("growth_cap", f64::NAN).is_err());
    }

    #[test]
    fn bad_inputs() {
        let mu = radial_mu(3);
        assert!(diagnose_hardy(&mu, 0.0, 2.0, &Thresholds::default()).is_err());
        assert!(diagnose_bergman(&mu, 2.0, -1.0, &Thresholds::default()).is_err());
        let empty = Measure::from(DiscreteMeasure::new(std::iter::empty::<(DiskPoint, f64)>()).unwrap());
        assert!(diagnose_hardy(&empty, 2.0, 2.0, &Thresholds::default()).is_err());
        assert!(horowitz_threshold_report(1.0, 9, &[8], &Thresholds::default()).is_err());
    }

    #[test]
    fn serialized_verdict_layout() {
        let v = diagnose_hardy(&radial_mu(5), 2.0, 4.0, &Thresholds::default()).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(
            s.starts_with(r#"{"status":"NotClosed","route":"p-neq-q","space":"hardy","p":2.0,"q":4.0,"evidence":["#)
        );
    }
}
