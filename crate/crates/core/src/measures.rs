//! Positive measures on the disk and the dyadic Carleson constants computed from them.
//!
//! Two representations are supported. A [`DiscreteMeasure`] is a finite list of weighted
//! point masses. A [`GridMeasure`] discretizes an absolutely continuous, rotation invariant
//! measure on polar cells; inside each cell the mass is spread uniformly in `(|z|^2, arg z)`,
//! which is exactly how normalized area looks in those coordinates. That choice lets
//! Carleson boxes and polynomial moments be integrated cell by cell in closed form instead
//! of lumping each cell at its midpoint.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::disk::DiskPoint;
use crate::error::{invalid, Error, Result};
use crate::sequences::PointSequence;
use crate::space::Space;

/// Deepest dyadic level accepted by [`carleson_constant`].
pub const MAX_DYADIC_LEVEL: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub point: DiskPoint,
    pub weight: f64,
}

/// `sum_n a_n delta_{z_n}` with distinct `z_n` and `a_n > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Builds the measure, merging repeated points by adding their weights.
    /// Merged atoms keep the position of their first occurrence.
    pub fn new(atoms: impl IntoIterator<Item = (DiskPoint, f64)>) -> Result<Self> {
        let mut merged: Vec<Atom> = Vec::new();
        let mut slot: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for (point, weight) in atoms {
            if !(weight.is_finite() && weight > 0.0) {
                return Err(invalid(format!(
                    "atom weight at ({}, {}) must be positive and finite, got {weight}",
                    point.re(),
                    point.im()
                )));
            }
            let key = (point.re().to_bits(), point.im().to_bits());
            match slot.get(&key) {
                Some(&i) => merged[i].weight += weight,
                None => {
                    slot.insert(key, merged.len());
                    merged.push(Atom { point, weight });
                }
            }
        }
        Ok(DiscreteMeasure { atoms: merged })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom locations, in atom order.
    pub fn points(&self) -> PointSequence {
        PointSequence::new(self.atoms.iter().map(|a| a.point).collect())
            .expect("atoms are pairwise distinct by construction")
    }

    pub fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.weight).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `c mu` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        DiscreteMeasure::new(self.atoms.iter().map(|a| (a.point, c * a.weight)))
    }

    /// Push-forward under `z -> e^{i theta} z`.
    pub fn rotated(&self, theta: f64) -> Result<Self> {
        let atoms = self.atoms.iter().map(|a| Ok((a.point.rotated(theta)?, a.weight))).collect::<Result<Vec<_>>>()?;
        DiscreteMeasure::new(atoms)
    }

    /// The first `n` atoms.
    pub fn prefix(&self, n: usize) -> Self {
        DiscreteMeasure { atoms: self.atoms[..n.min(self.atoms.len())].to_vec() }
    }

    /// `sum_n a_n f(z_n)`, summed in atom order.
    pub fn integrate(&self, f: impl Fn(DiskPoint) -> f64) -> f64 {
        self.atoms.iter().map(|a| a.weight * f(a.point)).sum()
    }
}

/// One polar cell `{r_inner <= |z| < r_outer, arg z / 2 pi in [turn_start, turn_start + turn_width)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridCell {
    pub center: DiskPoint,
    pub weight: f64,
    pub r_inner: f64,
    pub r_outer: f64,
    pub turn_start: f64,
    pub turn_width: f64,
}

/// Tag distinguishing discretized continuous measures from genuinely atomic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    ContinuousApproximation,
}

/// `total * sigma` on an `nr x ntheta` polar grid with equal radial steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMeasure {
    nr: usize,
    ntheta: usize,
    total: f64,
    kind: GridKind,
}

impl GridMeasure {
    pub fn new(nr: usize, ntheta: usize, total: f64) -> Result<Self> {
        if nr < 8 || ntheta < 8 {
            return Err(invalid(format!("grid needs nr, ntheta >= 8, got {nr} x {ntheta}")));
        }
        if !(total.is_finite() && total > 0.0) {
            return Err(invalid(format!("grid total mass must be positive, got {total}")));
        }
        Ok(GridMeasure { nr, ntheta, total, kind: GridKind::ContinuousApproximation })
    }

    pub fn nr(&self) -> usize {
        self.nr
    }

    pub fn ntheta(&self) -> usize {
        self.ntheta
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Radii `(r_inner, r_outer)` of ring `i`.
    pub fn ring(&self, i: usize) -> (f64, f64) {
        (i as f64 / self.nr as f64, (i + 1) as f64 / self.nr as f64)
    }

    /// Mass of one cell in ring `i`.
    pub fn cell_weight(&self, i: usize) -> f64 {
        let (a, b) = self.ring(i);
        self.total * (b - a) * (b + a) / self.ntheta as f64
    }

    /// All cells, ring by ring, each ring ordered by angle.
    pub fn cells(&self) -> Vec<GridCell> {
        let width = 1.0 / self.ntheta as f64;
        let mut out = Vec::with_capacity(self.nr * self.ntheta);
        for i in 0..self.nr {
            let (a, b) = self.ring(i);
            let weight = self.cell_weight(i);
            for j in 0..self.ntheta {
                let turn_start = j as f64 * width;
                let center = DiskPoint::from_polar(0.5 * (a + b), TAU * (turn_start + 0.5 * width))
                    .expect("cell midpoints lie inside the disk");
                out.push(GridCell { center, weight, r_inner: a, r_outer: b, turn_start, turn_width: width });
            }
        }
        out
    }

    /// Sum of the cell weights in index order.
    pub fn total_mass(&self) -> f64 {
        (0..self.nr).map(|i| self.cell_weight(i) * self.ntheta as f64).sum()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        GridMeasure::new(self.nr, self.ntheta, c * self.total)
    }

    /// Mass of `{|z| >= radius}`.
    fn mass_outside(&self, radius: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.nr {
            let (a, b) = self.ring(i);
            if radius >= b {
                continue;
            }
            let lo = radius.max(a);
            acc += self.total * (b - lo) * (b + lo);
        }
        acc
    }
}

/// Normalized area measure on an `nr x ntheta` polar grid.
pub fn build_sigma_grid(nr: usize, ntheta: usize) -> Result<GridMeasure> {
    GridMeasure::new(nr, ntheta, 1.0)
}

/// Either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Discrete(DiscreteMeasure),
    Grid(GridMeasure),
}

impl Measure {
    pub fn is_discrete(&self) -> bool {
        matches!(self, Measure::Discrete(_))
    }

    pub fn as_discrete(&self) -> Option<&DiscreteMeasure> {
        match self {
            Measure::Discrete(d) => Some(d),
            Measure::Grid(_) => None,
        }
    }

    pub fn total_mass(&self) -> f64 {
        match self {
            Measure::Discrete(d) => d.total_mass(),
            Measure::Grid(g) => g.total_mass(),
        }
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Ok(match self {
            Measure::Discrete(d) => Measure::Discrete(d.scaled(c)?),
            Measure::Grid(g) => Measure::Grid(g.scaled(c)?),
        })
    }

    /// Grids are rotation invariant, so only atoms move.
    pub fn rotated(&self, theta: f64) -> Result<Self> {
        Ok(match self {
            Measure::Discrete(d) => Measure::Discrete(d.rotated(theta)?),
            Measure::Grid(g) => Measure::Grid(g.clone()),
        })
    }
}

impl From<DiscreteMeasure> for Measure {
    fn from(d: DiscreteMeasure) -> Self {
        Measure::Discrete(d)
    }
}

impl From<GridMeasure> for Measure {
    fn from(g: GridMeasure) -> Self {
        Measure::Grid(g)
    }
}

/// The boundary arc of normalized length `2^-level` starting at turn `index * 2^-level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DyadicArc {
    pub level: u32,
    pub index: u64,
}

impl DyadicArc {
    pub fn length(&self) -> f64 {
        2f64.powi(-(self.level as i32))
    }

    /// Whether `z` lies in the Carleson box `{z/|z| in I, |z| >= 1 - m(I)}`.
    /// The origin points in the direction `1`.
    pub fn box_contains(&self, z: DiskPoint) -> bool {
        let m = self.length();
        if z.modulus() < 1.0 - m {
            return false;
        }
        let t = z.boundary_turn();
        let start = self.index as f64 * m;
        start <= t && t < start + m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlesonProfile {
    pub value: f64,
    /// `max_I mu(Q_I) / m(I)^alpha` over the arcs of each level `0..=L`.
    pub per_level: Vec<f64>,
}

/// Dyadic Carleson constant `max mu(Q_I) / m(I)^alpha` over arcs of levels `0..=max_level`,
/// with `alpha` the exponent of `space`.
///
/// Every arc is covered by at most two dyadic arcs of comparable length, so this is a lower
/// bound for the supremum over all arcs and is comparable to it up to an absolute factor.
pub fn carleson_constant(mu: &Measure, space: Space, max_level: u32) -> Result<CarlesonProfile> {
    if max_level > MAX_DYADIC_LEVEL {
        return Err(invalid(format!("max_level must be at most {MAX_DYADIC_LEVEL}, got {max_level}")));
    }
    let alpha = space.exponent();
    let mut per_level = Vec::with_capacity(max_level as usize + 1);
    for level in 0..=max_level {
        let m = 2f64.powi(-(level as i32));
        let heaviest = match mu {
            Measure::Discrete(d) => heaviest_box_discrete(d, level),
            // Uniform in angle: every arc of a level carries the same box mass.
            Measure::Grid(g) => m * g.mass_outside(1.0 - m),
        };
        per_level.push(heaviest / m.powi(alpha));
    }
    let value = per_level.iter().copied().fold(0.0, f64::max);
    Ok(CarlesonProfile { value, per_level })
}

fn heaviest_box_discrete(d: &DiscreteMeasure, level: u32) -> f64 {
    let m = 2f64.powi(-(level as i32));
    let scale = 2f64.powi(level as i32);
    let mut buckets: BTreeMap<u64, f64> = BTreeMap::new();
    for a in d.atoms() {
        if a.point.modulus() < 1.0 - m {
            continue;
        }
        // t * 2^level is exact, so the floor is the index of the dyadic arc holding t.
        let idx = (a.point.boundary_turn() * scale).floor() as u64;
        *buckets.entry(idx).or_insert(0.0) += a.weight;
    }
    buckets.values().copied().fold(0.0, f64::max)
}

/// `sum_n (1 - |z_n|)` over atom locations.
pub fn blaschke_sum(mu: &DiscreteMeasure) -> f64 {
    mu.atoms().iter().map(|a| a.point.one_minus_modulus()).sum()
}

/// `(min_n, max_n)` of `a_n / (1 - |z_n|)^alpha`.
pub fn weight_equivalence_ratio(mu: &DiscreteMeasure, space: Space) -> Result<(f64, f64)> {
    if mu.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    let alpha = space.exponent();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for a in mu.atoms() {
        let r = a.weight / a.point.one_minus_modulus().powi(alpha);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

/// `mu_Z`: weight `1 - |z_n|` at each point.
pub fn build_mu_z(points: &PointSequence) -> Result<DiscreteMeasure> {
    DiscreteMeasure::new(points.iter().map(|&z| (z, z.one_minus_modulus())))
}

/// `nu_Z`: weight `(1 - |z_n|)^2` at each point.
pub fn build_nu_z(points: &PointSequence) -> Result<DiscreteMeasure> {
    DiscreteMeasure::new(points.iter().map(|&z| (z, z.one_minus_modulus().powi(2))))
}

/// Mean of `e^{i d theta}` over the angular span of a cell.
pub(crate) fn angular_mean(turn_start: f64, turn_width: f64, d: i64) -> Complex64 {
    if d == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let a = TAU * d as f64 * turn_start;
    let w = TAU * d as f64 * turn_width;
    // (e^{i(a+w)} - e^{ia}) / (i w) = e^{i(a + w/2)} sin(w/2) / (w/2)
    let half = 0.5 * w;
    Complex64::from_polar(half.sin() / half, a + half)
}
