//! File formats: measures and sequences as strict JSON, reports as JSON or CSV.
//!
//! Data files (measures, sequences) are written with shortest round-trip floats so that a
//! written file reads back to bit-identical points. Reports are rounded to 12 significant
//! digits and keep struct field order, which makes repeated runs byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::disk::DiskPoint;
use crate::error::{invalid, Error, Result};
use crate::measures::{DiscreteMeasure, GridMeasure, Measure};
use crate::sequences::PointSequence;
use crate::spectral::{SpectralReport, WitnessPoint};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRecord {
    re: f64,
    im: f64,
    weight: f64,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum MeasureFile {
    Discrete { atoms: Vec<AtomRecord> },
    Grid { nr: usize, ntheta: usize, total: f64 },
}

/// Reading side of [`MeasureFile`]. A flat struct streams from the parser, so schema errors
/// keep their line and column (an internally tagged enum would buffer and lose them).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureRecord {
    #[serde(rename = "type")]
    kind: MeasureKind,
    atoms: Option<Vec<AtomRecord>>,
    nr: Option<usize>,
    ntheta: Option<usize>,
    total: Option<f64>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum MeasureKind {
    Discrete,
    Grid,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceFile {
    points: Vec<DiskPoint>,
}

/// Parses `{"type":"discrete","atoms":[{"re":..,"im":..,"weight":..}]}` or
/// `{"type":"grid","nr":..,"ntheta":..,"total":..}`.
pub fn parse_measure(text: &str) -> Result<Measure> {
    let r: MeasureRecord = serde_json::from_str(text)?;
    match r {
        MeasureRecord { kind: MeasureKind::Discrete, atoms: Some(atoms), nr: None, ntheta: None, total: None } => {
            let atoms = atoms
                .into_iter()
                .enumerate()
                .map(|(i, a)| {
                    let z = DiskPoint::new(a.re, a.im).map_err(|e| invalid(format!("atom {i}: {e}")))?;
                    Ok((z, a.weight))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Measure::Discrete(DiscreteMeasure::new(atoms)?))
        }
        MeasureRecord {
            kind: MeasureKind::Grid,
            atoms: None,
            nr: Some(nr),
            ntheta: Some(ntheta),
            total: Some(total),
        } => Ok(Measure::Grid(GridMeasure::new(nr, ntheta, total)?)),
        MeasureRecord { kind: MeasureKind::Discrete, .. } => {
            Err(invalid("a discrete measure has exactly the fields `type` and `atoms`"))
        }
        MeasureRecord { kind: MeasureKind::Grid, .. } => {
            Err(invalid("a grid measure has exactly the fields `type`, `nr`, `ntheta` and `total`"))
        }
    }
}

pub fn measure_to_json(mu: &Measure) -> String {
    let file = match mu {
        Measure::Discrete(d) => MeasureFile::Discrete {
            atoms: d
                .atoms()
                .iter()
                .map(|a| AtomRecord { re: a.point.re(), im: a.point.im(), weight: a.weight })
                .collect(),
        },
        Measure::Grid(g) => MeasureFile::Grid { nr: g.nr(), ntheta: g.ntheta(), total: g.total() },
    };
    pretty(&file)
}

/// Parses `{"points":[{"re":..,"im":..}]}`.
pub fn parse_sequence(text: &str) -> Result<PointSequence> {
    let file: SequenceFile = serde_json::from_str(text)?;
    PointSequence::new(file.points)
}

pub fn sequence_to_json(seq: &PointSequence) -> String {
    pretty(&SequenceFile { points: seq.points().to_vec() })
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("data files serialize");
    s.push('\n');
    s
}

/// `v` rounded to 12 significant digits.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

fn normalize(value: Value) -> Value {
    match value {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => {
                let r = round_sig12(f);
                if r.fract() == 0.0 && r.abs() < 9.007_199_254_740_992e15 {
                    Value::Number(Number::from(r as i64))
                } else {
                    Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
                }
            }
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with floats rounded to 12 significant digits, integral values printed as
/// integers, non-finite values as `null`, and fields in declaration order.
pub fn report_json<T: Serialize>(value: &T) -> Result<String> {
    let v = normalize(serde_json::to_value(value).map_err(Error::Format)?);
    let mut s = serde_json::to_string_pretty(&v).map_err(Error::Format)?;
    s.push('\n');
    Ok(s)
}

fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{}", round_sig12(v))
    } else {
        String::new()
    }
}

/// `n,margin` rows for every rung of the ladder.
pub fn series_csv(report: &SpectralReport) -> String {
    let mut out = String::from("n,margin\n");
    for s in &report.series {
        out.push_str(&format!("{},{}\n", s.n, csv_float(s.margin)));
    }
    out
}

/// `re,im,value` rows, one per path point.
pub fn witness_csv(curve: &[WitnessPoint]) -> String {
    let mut out = String::from("re,im,value\n");
    for p in curve {
        out.push_str(&format!("{},{},{}\n", csv_float(p.re), csv_float(p.im), csv_float(p.value)));
    }
    out
}
