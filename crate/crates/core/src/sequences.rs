//! Point sequences in the disk and the sequence-level constants built on them.

use std::collections::HashSet;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::disk::{pseudo_dist, DiskPoint, HorowitzSpec};
use crate::error::{invalid, Error, Result};

/// An ordered list of pairwise distinct disk points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSequence {
    points: Vec<DiskPoint>,
}

impl PointSequence {
    pub fn new(points: Vec<DiskPoint>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert((p.re().to_bits(), p.im().to_bits())) {
                return Err(Error::DuplicatePoint { re: p.re(), im: p.im() });
            }
        }
        Ok(PointSequence { points })
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DiskPoint> {
        self.points.iter()
    }

    /// The first `n` points (all of them if `n` exceeds the length).
    pub fn prefix(&self, n: usize) -> PointSequence {
        PointSequence { points: self.points[..n.min(self.points.len())].to_vec() }
    }

    /// `e^{i theta} z_n` for every point.
    pub fn rotated(&self, theta: f64) -> Result<PointSequence> {
        let points = self.points.iter().map(|p| p.rotated(theta)).collect::<Result<Vec<_>>>()?;
        PointSequence::new(points)
    }
}

impl<'de> Deserialize<'de> for PointSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<DiskPoint>::deserialize(d)?;
        PointSequence::new(points).map_err(serde::de::Error::custom)
    }
}

/// `z_n = 1 - ratio^n` for `n = 1..=count`.
pub fn gen_radial(ratio: f64, count: usize) -> Result<PointSequence> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(invalid(format!("ratio must lie in (0, 1), got {ratio}")));
    }
    if count < 1 {
        return Err(invalid("count must be at least 1"));
    }
    let points = (1..=count).map(|n| DiskPoint::real(1.0 - ratio.powi(n as i32))).collect::<Result<Vec<_>>>()?;
    PointSequence::new(points)
}

/// Zeros of the truncated Horowitz product, level by level.
///
/// Level `k` contributes the `2^k` solutions of `z^{2^k} = 1/b`, all on the circle of
/// radius `2^{-1/(p0 2^k)}`, ordered by angle starting from the positive axis.
pub fn horowitz_zeros(spec: &HorowitzSpec) -> Result<PointSequence> {
    let mut points = Vec::with_capacity((1usize << (spec.levels() + 1)) - 2);
    for k in 1..=spec.levels() {
        let count = 1usize << k;
        let radius = 2f64.powf(-1.0 / (spec.p0() * count as f64));
        for j in 0..count {
            points.push(DiskPoint::from_polar(radius, TAU * j as f64 / count as f64)?);
        }
    }
    PointSequence::new(points)
}

/// The constant `min_k prod_{j != k} rho(z_j, z_k)` and the index attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterpolationConstant {
    pub delta: f64,
    pub argmin_index: usize,
}

/// Carleson's interpolation constant of a finite sequence.
///
/// Products are accumulated as sums of logarithms, so long sequences with tiny
/// factors do not underflow before the minimum is taken. A single point gives 1.
pub fn interpolation_constant(seq: &PointSequence) -> Result<InterpolationConstant> {
    let pts = seq.points();
    if pts.is_empty() {
        return Err(invalid("interpolation constant of an empty sequence"));
    }
    let mut best = (0.0f64, 0usize);
    let mut closest = 1.0f64;
    for (k, &zk) in pts.iter().enumerate() {
        let mut log_prod = 0.0;
        for (j, &zj) in pts.iter().enumerate() {
            if j != k {
                let rho = pseudo_dist(zj, zk);
                closest = closest.min(rho);
                log_prod += rho.ln();
            }
        }
        if k == 0 || log_prod < best.0 {
            best = (log_prod, k);
        }
    }
    // A product of factors in [0, 1) never exceeds its smallest factor; the clamp only
    // removes the rounding of exp(ln x) and keeps delta <= separation exact.
    Ok(InterpolationConstant { delta: best.0.exp().min(closest), argmin_index: best.1 })
}

/// Smallest pairwise pseudo-hyperbolic distance.
pub fn separation_constant(seq: &PointSequence) -> Result<f64> {
    let pts = seq.points();
    if pts.len() < 2 {
        return Err(invalid("separation needs at least two points"));
    }
    let mut best = f64::INFINITY;
    for (k, &zk) in pts.iter().enumerate() {
        for &zj in &pts[k + 1..] {
            best = best.min(pseudo_dist(zj, zk));
        }
    }
    Ok(best)
}

/// Interleaves every point with a radial twin at distance `(1 - |z|)^{eps_power + 1}`.
///
/// Twins sit on the outward ray through the point (the positive axis for the origin).
/// If the offset would leave the disk it is halved until it fits.
pub fn double_sequence(seq: &PointSequence, eps_power: f64) -> Result<PointSequence> {
    if !(eps_power.is_finite() && eps_power >= 1.0) {
        return Err(invalid(format!("eps_power must be at least 1, got {eps_power}")));
    }
    let mut out = Vec::with_capacity(2 * seq.len());
    for &z in seq.iter() {
        let gap = z.one_minus_modulus();
        let mut offset = gap.powf(eps_power + 1.0);
        while offset >= gap {
            offset *= 0.5;
        }
        let twin = if z == DiskPoint::ORIGIN {
            DiskPoint::real(offset)?
        } else {
            let dir = z.to_complex() / z.modulus();
            DiskPoint::from_complex(z.to_complex() + dir * offset)?
        };
        if twin == z {
            return Err(invalid(format!("twin of ({}, {}) collides with it at eps_power {eps_power}", z.re(), z.im())));
        }
        out.push(z);
        out.push(twin);
    }
    PointSequence::new(out)
}
