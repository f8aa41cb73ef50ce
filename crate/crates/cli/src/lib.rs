//! Command-line front end: argument grammar, measure aliases and report writing.
//!
//! Exit codes: 0 on success, 1 when the report cannot be written, 2 on invalid input,
//! 3 when a numerical singularity prevents a report.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use closedrange::diagnostics::{diagnose_bergman, diagnose_hardy, horowitz_threshold_report, Thresholds};
use closedrange::disk::HorowitzSpec;
use closedrange::io::{
    measure_to_json, parse_measure, parse_sequence, report_json, sequence_to_json, series_csv, witness_csv,
};
use closedrange::measures::{
    blaschke_sum, build_mu_z, build_nu_z, build_sigma_grid, carleson_constant, weight_equivalence_ratio,
};
use closedrange::sequences::{
    double_sequence, gen_radial, horowitz_zeros, interpolation_constant, separation_constant,
};
use closedrange::spectral::{default_witness_path, least_norm_margin, reverse_witness, riesz_ladder, section_ladder};
use closedrange::{Error, Measure, PointSequence, Space};

/// Grid resolution behind the `sigma` alias.
pub const SIGMA_RESOLUTION: usize = 256;

#[derive(Parser, Debug)]
#[command(name = "closedrange", version, about = "Closed-range diagnostics for Hardy and Bergman Carleson embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a sequence or measure file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Dyadic Carleson constant and sequence constants of a measure.
    Analyze {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        alpha: u32,
        #[arg(long, default_value_t = 10)]
        levels: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-range verdict for a measure and exponent pair.
    Diagnose {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        measure: String,
        /// Override a cutoff, e.g. `--threshold delta_min=1e-4`; repeatable.
        #[arg(long = "threshold", value_parser = parse_threshold)]
        thresholds: Vec<(String, f64)>,
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<usize>>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Least-norm, Riesz or section spectra over a truncation ladder.
    Spectra {
        #[arg(long, conflicts_with = "sequence", required_unless_present = "sequence")]
        measure: Option<String>,
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long, default_value = "hardy")]
        space: Space,
        #[arg(long, value_enum, default_value = "least-norm")]
        kind: SpectraKind,
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<usize>>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Norms of normalized kernels in L^2(mu) along a path to the boundary.
    Witness {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value = "hardy")]
        space: Space,
        /// Path points `-(1 - 2^-m) u` for `m = 1..=levels`.
        #[arg(long, default_value_t = 12)]
        levels: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sampling and interpolation margins of Horowitz zero sets.
    HorowitzReport {
        #[arg(long)]
        p0: f64,
        #[arg(long, default_value_t = 6)]
        levels: u32,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
        ladder: Vec<usize>,
        #[arg(long = "threshold", value_parser = parse_threshold)]
        thresholds: Vec<(String, f64)>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Points `1 - ratio^n`, n = 1..=count.
    Radial {
        #[arg(long)]
        ratio: f64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zeros of the truncated Horowitz product.
    Horowitz {
        #[arg(long)]
        p0: f64,
        #[arg(long)]
        levels: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interleave every point of a sequence with a nearby radial twin.
    Double {
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        eps_power: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a measure file from an alias or a sequence.
    Measure {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SpectraKind {
    LeastNorm,
    Riesz,
    Section,
}

fn parse_threshold(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("threshold `{name}`: {e}"))?;
    Ok((name.trim().to_string(), value))
}

/// Failure of one invocation, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Singular(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Output(_) => 1,
            Failure::Input(_) => 2,
            Failure::Singular(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Singular(m) | Failure::Output(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericallySingular { .. } | Error::IllConditioned(_) => Failure::Singular(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_file(path: &std::path::Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_sequence(path: &std::path::Path) -> Outcome<PointSequence> {
    let text = read_file(path)?;
    parse_sequence(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Resolves `sigma`, `muZ:<file>`, `nuZ:<file>`, `horowitz:<p0>:<K>` or a measure file path.
fn load_measure(spec: &str) -> Outcome<Measure> {
    if spec == "sigma" {
        return Ok(Measure::Grid(build_sigma_grid(SIGMA_RESOLUTION, SIGMA_RESOLUTION)?));
    }
    if let Some(path) = spec.strip_prefix("muZ:") {
        return Ok(Measure::Discrete(build_mu_z(&load_sequence(path.as_ref())?)?));
    }
    if let Some(path) = spec.strip_prefix("nuZ:") {
        return Ok(Measure::Discrete(build_nu_z(&load_sequence(path.as_ref())?)?));
    }
    if let Some(rest) = spec.strip_prefix("horowitz:") {
        let (p0, k) =
            rest.split_once(':').ok_or_else(|| Failure::Input(format!("expected horowitz:<p0>:<K>, got `{spec}`")))?;
        let p0: f64 = p0.parse().map_err(|e| Failure::Input(format!("horowitz p0 `{p0}`: {e}")))?;
        let k: u32 = k.parse().map_err(|e| Failure::Input(format!("horowitz levels `{k}`: {e}")))?;
        let zeros = horowitz_zeros(&HorowitzSpec::new(p0, k)?)?;
        return Ok(Measure::Discrete(build_nu_z(&zeros)?));
    }
    let path = std::path::Path::new(spec);
    let text = read_file(path)?;
    parse_measure(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn thresholds_from(overrides: &[(String, f64)]) -> Outcome<Thresholds> {
    let mut t = Thresholds::default();
    for (name, value) in overrides {
        t.set(name, *value)?;
    }
    Ok(t)
}

fn default_rungs(n: usize) -> Vec<usize> {
    let mut l = vec![n.div_ceil(4), n.div_ceil(2), n];
    l.dedup();
    l
}

#[derive(Serialize)]
struct AnalyzeReport {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    atoms: Option<usize>,
    total_mass: f64,
    alpha: u32,
    levels: u32,
    carleson: f64,
    per_level: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blaschke_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_argmin: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    separation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight_equivalence: Option<(f64, f64)>,
}

#[derive(Serialize)]
struct WitnessReport<'a> {
    space: Space,
    curve: &'a [closedrange::spectral::WitnessPoint],
}

fn analyze(measure: &str, alpha: u32, levels: u32) -> Outcome<AnalyzeReport> {
    let mu = load_measure(measure)?;
    let space =
        Space::from_exponent(alpha).ok_or_else(|| Failure::Input(format!("alpha must be 1 or 2, got {alpha}")))?;
    let profile = carleson_constant(&mu, space, levels)?;
    let mut report = AnalyzeReport {
        kind: if mu.is_discrete() { "discrete" } else { "grid" },
        atoms: mu.as_discrete().map(|d| d.len()),
        total_mass: mu.total_mass(),
        alpha,
        levels,
        carleson: profile.value,
        per_level: profile.per_level,
        blaschke_sum: None,
        delta: None,
        delta_argmin: None,
        separation: None,
        weight_equivalence: None,
    };
    if let Some(d) = mu.as_discrete().filter(|d| !d.is_empty()) {
        let points = d.points();
        let delta = interpolation_constant(&points)?;
        report.blaschke_sum = Some(blaschke_sum(d));
        report.delta = Some(delta.delta);
        report.delta_argmin = Some(delta.argmin_index);
        report.separation = separation_constant(&points).ok();
        report.weight_equivalence = Some(weight_equivalence_ratio(d, space)?);
    }
    Ok(report)
}

fn execute(command: Command) -> Outcome<(String, Option<PathBuf>)> {
    match command {
        Command::Gen(g) => match g {
            GenCommand::Radial { ratio, count, out } => Ok((sequence_to_json(&gen_radial(ratio, count)?), out)),
            GenCommand::Horowitz { p0, levels, out } => {
                Ok((sequence_to_json(&horowitz_zeros(&HorowitzSpec::new(p0, levels)?)?), out))
            }
            GenCommand::Double { sequence, eps_power, out } => {
                let seq = load_sequence(&sequence)?;
                Ok((sequence_to_json(&double_sequence(&seq, eps_power)?), out))
            }
            GenCommand::Measure { measure, out } => Ok((measure_to_json(&load_measure(&measure)?), out)),
        },
        Command::Analyze { measure, alpha, levels, out } => {
            require_json(&out, "analyze")?;
            Ok((report_json(&analyze(&measure, alpha, levels)?)?, out.out))
        }
        Command::Diagnose { space, p, q, measure, thresholds, ladder, out } => {
            require_json(&out, "diagnose")?;
            let mu = load_measure(&measure)?;
            let mut cfg = thresholds_from(&thresholds)?;
            let verdict = match space {
                Space::Hardy => {
                    cfg.hardy_ladder = ladder;
                    diagnose_hardy(&mu, p, q, &cfg)?
                }
                Space::Bergman => {
                    if let Some(l) = ladder {
                        cfg.ladder = l;
                    }
                    diagnose_bergman(&mu, p, q, &cfg)?
                }
            };
            Ok((report_json(&verdict)?, out.out))
        }
        Command::Spectra { measure, sequence, space, kind, ladder, out } => {
            let report = match kind {
                SpectraKind::LeastNorm => {
                    let mu = match (&measure, &sequence) {
                        (Some(m), _) => load_measure(m)?,
                        (None, Some(path)) => Measure::Discrete(build_mu_z(&load_sequence(path)?)?),
                        (None, None) => unreachable!("clap requires one input"),
                    };
                    let d = mu
                        .as_discrete()
                        .ok_or_else(|| Failure::Input("least-norm margins need a discrete measure".into()))?;
                    let rungs = ladder.unwrap_or_else(|| default_rungs(d.len()));
                    least_norm_margin(d, space, &rungs)?
                }
                SpectraKind::Riesz => {
                    let points = match (&measure, &sequence) {
                        (_, Some(path)) => load_sequence(path)?,
                        (Some(m), None) => load_measure(m)?
                            .as_discrete()
                            .map(|d| d.points())
                            .ok_or_else(|| Failure::Input("Riesz bounds need point masses".into()))?,
                        (None, None) => unreachable!("clap requires one input"),
                    };
                    let rungs = ladder.unwrap_or_else(|| default_rungs(points.len()));
                    riesz_ladder(&points, space, &rungs)?
                }
                SpectraKind::Section => {
                    let mu = match (&measure, &sequence) {
                        (Some(m), _) => load_measure(m)?,
                        (None, _) => return Err(Failure::Input("section spectra need --measure".into())),
                    };
                    section_ladder(&mu, &ladder.unwrap_or_else(|| vec![8, 16, 32]))?
                }
            };
            let text = match out.format {
                Format::Json => report_json(&report)?,
                Format::Csv => series_csv(&report),
            };
            Ok((text, out.out))
        }
        Command::Witness { measure, space, levels, out } => {
            let mu = load_measure(&measure)?;
            let path = default_witness_path(&mu, levels)?;
            let curve = reverse_witness(&mu, &path, space)?;
            let text = match out.format {
                Format::Json => report_json(&WitnessReport { space, curve: &curve })?,
                Format::Csv => witness_csv(&curve),
            };
            Ok((text, out.out))
        }
        Command::HorowitzReport { p0, levels, ladder, thresholds, out } => {
            require_json(&out, "horowitz-report")?;
            let cfg = thresholds_from(&thresholds)?;
            Ok((report_json(&horowitz_threshold_report(p0, levels, &ladder, &cfg)?)?, out.out))
        }
    }
}

fn require_json(out: &OutArgs, command: &str) -> Outcome<()> {
    if out.format == Format::Json {
        Ok(())
    } else {
        Err(Failure::Input(format!("{command} only writes JSON")))
    }
}

/// Runs one invocation with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = execute(cli.command).and_then(|(text, out)| match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Output(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Output(e.to_string())),
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

/// Runs one invocation against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("closedrange").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn thresholds_parse_as_name_value_pairs() {
        assert_eq!(parse_threshold("delta_min=0.01"), Ok(("delta_min".into(), 0.01)));
        assert!(parse_threshold("delta_min").is_err());
        assert!(parse_threshold("delta_min=abc").is_err());
        let cfg = thresholds_from(&[("growth_cap".into(), 3.0)]).unwrap();
        assert_eq!(cfg.growth_cap, 3.0);
        assert!(matches!(thresholds_from(&[("nope".into(), 1.0)]), Err(Failure::Input(_))));
    }

    #[test]
    fn aliases_resolve() {
        assert!(!load_measure("sigma").unwrap().is_discrete());
        let h = load_measure("horowitz:1:3").unwrap();
        assert_eq!(h.as_discrete().unwrap().len(), 14);
        for bad in ["horowitz:1", "horowitz:x:3", "muZ:/nonexistent.json", "/nonexistent.json"] {
            assert!(matches!(load_measure(bad), Err(Failure::Input(_))), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["--help"]).0, 0);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["analyze", "--measure", "sigma", "--bogus"]).0, 2);
        let (code, out, _) = run_capture(&["gen", "radial", "--ratio", "0.5", "--count", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("{\n  \"points\""));
        let (code, _, err) = run_capture(&["gen", "radial", "--ratio", "1.5", "--count", "3"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: "));
        assert_eq!(
            run_capture(&[
                "diagnose",
                "--space",
                "hardy",
                "--p",
                "2",
                "--q",
                "2",
                "--measure",
                "sigma",
                "--format",
                "csv"
            ])
            .0,
            2
        );
    }

    #[test]
    fn grid_analysis_omits_atom_fields() {
        let (code, out, _) = run_capture(&["analyze", "--measure", "sigma", "--alpha", "2", "--levels", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"kind\": \"grid\""));
        assert!(!out.contains("atoms") && !out.contains("delta"));
    }
}
