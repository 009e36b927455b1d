//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure,
//! 4 isoptic verification failure, 5 `--expect` mismatch. Messages go to
//! standard error; data goes to `--output` or standard output.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::export::{write_csv, write_evolute_report, write_report, write_svg, PlotSpec, Polyline};
use crate::isoptic::{isoptic_domain, sample_isoptic, verify_isoptic_point, IsopticConfig};
use crate::lac::{uniform_grid, Alpha, CurveParams, Domain};
use crate::lcg::{
    autoevolute_check, autoisoptic_report, evolute_target, isoptic_lcg_point, lcg_point_lac,
    lcg_point_parametric, LcgPoint, Verdict, DEFAULT_TOLERANCE,
};
use crate::numerics::QuadratureConfig;
use crate::point::PlanePoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_EXPECT: i32 = 5;

/// Relative distance kept from a domain bound when a range is clipped.
const CLIP_MARGIN: f64 = 1e-6;
const DEFAULT_RANGE: f64 = 3.0 * PI;

#[derive(Debug, Parser)]
#[command(name = "logaesthetic", version, about = "Log-aesthetic curves, isoptics and curvature graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a log-aesthetic curve.
    Sample(SampleArgs),
    /// Sample the isoptic of a log-aesthetic curve.
    Isoptic(IsopticArgs),
    /// Logarithmic curvature graph of the curve, its isoptic or its evolute.
    Lcg(LcgArgs),
    /// Slope checks with a verdict.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Compare the isoptic LCG slope with alpha.
    Autoisoptic(AutoisopticArgs),
    /// Compare the evolute LCG slope with -1/(alpha-2).
    Autoevolute(AutoevoluteArgs),
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let v = match s.trim() {
        "inf" | "+inf" | "infinity" => f64::INFINITY,
        "-inf" | "-infinity" => f64::NEG_INFINITY,
        other => other.parse::<f64>().map_err(|e| format!("{e}"))?,
    };
    Alpha::from_f64(v).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Shape parameter; `inf` or `-inf` selects the circle.
    #[arg(long, value_parser = parse_alpha, default_value = "1", allow_hyphen_values = true)]
    pub alpha: Alpha,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Read angles (delta, phi, theta values) in degrees.
    #[arg(long)]
    pub degrees: bool,
}

impl CurveArgs {
    fn angle(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    fn params(&self) -> Result<CurveParams, Failure> {
        CurveParams::with_alpha(self.alpha, self.lambda).map_err(Failure::invalid)
    }
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta_from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_to: Option<f64>,
    #[arg(long, default_value_t = 500)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Destination file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Report,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: PlotFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IsopticArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Tangent-angle offset, pi minus the viewing angle.
    #[arg(long, default_value_t = PI / 3.0)]
    pub delta: f64,
    #[command(flatten)]
    pub range: RangeArgs,
    /// Check every sample against both tangent lines.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: PlotFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LcgTarget {
    Base,
    Isoptic,
    Evolute,
}

#[derive(Debug, Clone, Args)]
pub struct LcgArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, value_enum, default_value = "base")]
    pub target: LcgTarget,
    #[arg(long, default_value_t = 2.0 * PI / 3.0)]
    pub delta: f64,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: PlotFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AutoisopticArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 2.0 * PI / 3.0)]
    pub delta: f64,
    /// Comma-separated sample parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub thetas: Option<Vec<f64>>,
    #[arg(long, default_value_t = PI)]
    pub phi: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, value_parser = |s: &str| s.parse::<Verdict>().map_err(|e| e.to_string()))]
    pub expect: Option<Verdict>,
    #[arg(long, value_enum, default_value = "report")]
    pub format: ReportFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum EvoluteVerdict {
    Autoevolute,
    NotAutoevolute,
}

#[derive(Debug, Clone, Args)]
pub struct AutoevoluteArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub thetas: Option<Vec<f64>>,
    #[arg(long, default_value_t = PI)]
    pub phi: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, value_enum)]
    pub expect: Option<EvoluteVerdict>,
    #[arg(long, value_enum, default_value = "report")]
    pub format: ReportFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(e: impl ToString) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }

    fn numeric(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => 1,
            _ => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::numeric(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: &Command) -> Result<i32, Failure> {
    match command {
        Command::Sample(a) => cmd_sample(a),
        Command::Isoptic(a) => cmd_isoptic(a),
        Command::Lcg(a) => cmd_lcg(a),
        Command::Check(CheckCommand::Autoisoptic(a)) => cmd_autoisoptic(a),
        Command::Check(CheckCommand::Autoevolute(a)) => cmd_autoevolute(a),
    }
}

fn check_count(n: usize) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::invalid(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<(), Failure> {
    if !v.is_finite() {
        return Err(Failure::invalid(format!("{name} must be finite, got {v}")));
    }
    Ok(())
}

fn iso_config(curve: &CurveArgs, delta: f64) -> Result<IsopticConfig, Failure> {
    IsopticConfig::new(curve.angle(delta)).map_err(Failure::invalid)
}

/// Resolves the θ range against `domain`. Explicit ends outside the domain
/// are clipped with a warning when `strict` is false and rejected otherwise;
/// default ends are clipped silently.
fn resolve_range(
    curve: &CurveArgs,
    range: &RangeArgs,
    domain: Domain,
    strict: bool,
) -> Result<(f64, f64), Failure> {
    check_count(range.n)?;
    let from = range.theta_from.map(|v| curve.angle(v));
    let to = range.theta_to.map(|v| curve.angle(v));
    for v in [from, to].into_iter().flatten() {
        check_finite("theta", v)?;
        if strict && !domain.contains(v) {
            return Err(Failure::invalid(format!(
                "theta {v} lies outside the admissible range ({}, {})",
                show_bound(domain.lower),
                show_bound(domain.upper)
            )));
        }
    }
    let want = (from.unwrap_or(-DEFAULT_RANGE), to.unwrap_or(DEFAULT_RANGE));
    let got = domain.clip(want.0, want.1, CLIP_MARGIN);
    if !(domain.contains(got.0) && domain.contains(got.1)) || (got.0 == got.1 && want.0 != want.1) {
        return Err(Failure::invalid(format!(
            "theta range [{}, {}] does not meet the admissible range ({}, {})",
            want.0,
            want.1,
            show_bound(domain.lower),
            show_bound(domain.upper)
        )));
    }
    let explicit_clipped = (from.is_some() && got.0 != want.0) || (to.is_some() && got.1 != want.1);
    if explicit_clipped {
        eprintln!("warning: theta range clipped to [{}, {}]", got.0, got.1);
    }
    Ok(got)
}

fn show_bound(b: Option<f64>) -> String {
    b.map_or("unbounded".into(), |v| v.to_string())
}

fn open_output(out: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    match &out.output {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| Failure::numeric(Error::Io(format!("{}: {e}", path.display()))))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

/// Markers at range ends that sit on a domain bound.
fn bound_markers(
    domain: Domain,
    ends: (f64, f64),
    polyline: &Polyline,
) -> Vec<(PlanePoint, String)> {
    let near = |b: f64, v: f64| (v - b).abs() <= 2.0 * CLIP_MARGIN * b.abs().max(1.0);
    let pts = polyline.points();
    let mut markers = Vec::new();
    for b in [domain.lower, domain.upper].into_iter().flatten() {
        if near(b, ends.0) {
            markers.push((pts[0], format!("theta={b}")));
        } else if near(b, ends.1) {
            markers.push((pts[pts.len() - 1], format!("theta={b}")));
        }
    }
    markers
}

fn emit_plot(
    format: PlotFormat,
    polylines: Vec<Polyline>,
    markers: Vec<(PlanePoint, String)>,
    out: &OutputArgs,
) -> Result<(), Failure> {
    let mut w = open_output(out)?;
    match format {
        PlotFormat::Csv => write_csv(&polylines[0], &mut w)?,
        PlotFormat::Svg => {
            let mut spec = PlotSpec::new(polylines);
            spec.markers = markers;
            write_svg(&spec, &mut w)?;
        }
    }
    Ok(())
}

pub fn cmd_sample(a: &SampleArgs) -> Result<i32, Failure> {
    let params = a.curve.params()?;
    let domain = params.theta_bounds();
    let (from, to) = resolve_range(&a.curve, &a.range, domain, false)?;
    let cfg = QuadratureConfig::default();
    let curve = params.sample_curve(from, to, a.range.n, &cfg)?;
    let markers = bound_markers(domain, (from, to), &curve);
    emit_plot(a.format, vec![curve], markers, &a.out)?;
    Ok(EXIT_OK)
}

pub fn cmd_isoptic(a: &IsopticArgs) -> Result<i32, Failure> {
    let params = a.curve.params()?;
    let iso = iso_config(&a.curve, a.delta)?;
    let domain = isoptic_domain(&params, iso).map_err(Failure::invalid)?;
    let (from, to) = resolve_range(&a.curve, &a.range, domain, true)?;
    let cfg = QuadratureConfig::default();

    let isoptic = sample_isoptic(&params, from, to, a.range.n, iso, &cfg)?;
    let mut failures = 0usize;
    if a.verify {
        for (&theta, &p) in isoptic.params().iter().zip(isoptic.points()) {
            let rep = verify_isoptic_point(&params, theta, iso, p, &cfg)?;
            if !rep.passes(p) {
                failures += 1;
                eprintln!(
                    "verification failed at theta={theta}: dist1={:e} dist2={:e} angle_error={:e}",
                    rep.dist1, rep.dist2, rep.angle_error
                );
            }
        }
    }

    let mut polylines = vec![isoptic];
    let mut markers = Vec::new();
    if a.format == PlotFormat::Svg {
        let base_domain = params.theta_bounds();
        let (lo, hi) = if from <= to { (from, to + iso.delta()) } else { (to, from + iso.delta()) };
        let (lo, hi) = base_domain.clip(lo, hi, CLIP_MARGIN);
        let base = params.sample_curve(lo, hi, a.range.n, &cfg)?;
        markers = bound_markers(domain, (from, to), &polylines[0]);
        markers.extend(bound_markers(base_domain, (lo, hi), &base));
        polylines.insert(0, base);
    }
    emit_plot(a.format, polylines, markers, &a.out)?;

    if failures > 0 {
        eprintln!("{failures} of {} samples failed verification", a.range.n);
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

pub fn cmd_lcg(a: &LcgArgs) -> Result<i32, Failure> {
    let params = a.curve.params()?;
    let cfg = QuadratureConfig::default();
    let iso = iso_config(&a.curve, a.delta)?;
    let domain = match a.target {
        LcgTarget::Isoptic => isoptic_domain(&params, iso).map_err(Failure::invalid)?,
        _ => params.theta_bounds(),
    };
    let (from, to) = resolve_range(&a.curve, &a.range, domain, false)?;
    let thetas = uniform_grid(from, to, a.range.n);
    let point = |t: f64| -> crate::Result<LcgPoint> {
        match a.target {
            LcgTarget::Base => lcg_point_lac(&params, t),
            LcgTarget::Isoptic => {
                if params.is_circle() {
                    return Err(Error::NoLcg);
                }
                isoptic_lcg_point(&params, t, iso, &cfg)
            }
            LcgTarget::Evolute => {
                if params.is_circle() {
                    return Err(Error::NoLcg);
                }
                lcg_point_parametric(|u| params.evolute_derivatives(u), t)
            }
        }
    };
    let points = thetas
        .iter()
        .map(|&t| point(t).map(|p| p.as_point()))
        .collect::<crate::Result<Vec<_>>>()?;
    let label = match a.target {
        LcgTarget::Base => "lcg base",
        LcgTarget::Isoptic => "lcg isoptic",
        LcgTarget::Evolute => "lcg evolute",
    };
    let polyline = Polyline::new(thetas, points, label)?;
    emit_plot(a.format, vec![polyline], Vec::new(), &a.out)?;
    Ok(EXIT_OK)
}

fn default_thetas(params: &CurveParams, below: &[f64], above: &[f64]) -> Vec<f64> {
    match params.alpha() {
        Alpha::Finite(a) if a < 1.0 => below.to_vec(),
        _ => above.to_vec(),
    }
}

fn angles(curve: &CurveArgs, values: &Option<Vec<f64>>, default: Vec<f64>) -> Result<Vec<f64>, Failure> {
    let out: Vec<f64> = match values {
        Some(v) => v.iter().map(|&t| curve.angle(t)).collect(),
        None => default,
    };
    for &t in &out {
        check_finite("theta", t)?;
    }
    Ok(out)
}

fn check_phi_tol(phi: f64, tol: f64) -> Result<(), Failure> {
    if phi == 0.0 || !phi.is_finite() {
        return Err(Failure::invalid(format!("--phi must be non-zero and finite, got {phi}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::invalid(format!("--tol must be positive, got {tol}")));
    }
    Ok(())
}

pub fn cmd_autoisoptic(a: &AutoisopticArgs) -> Result<i32, Failure> {
    let params = a.curve.params()?;
    let iso = iso_config(&a.curve, a.delta)?;
    let phi = a.curve.angle(a.phi);
    check_phi_tol(phi, a.tol)?;
    let thetas = angles(
        &a.curve,
        &a.thetas,
        default_thetas(&params, &[-PI, -2.0 * PI, -5.0 * PI, -10.0 * PI], &[0.0, PI, 3.0 * PI, 10.0 * PI]),
    )?;
    let domain = isoptic_domain(&params, iso).map_err(Failure::invalid)?;
    for &t in &thetas {
        if !domain.contains(t) && domain.nearby_bound(t).is_none() {
            return Err(Failure::invalid(format!("theta {t} lies outside the isoptic domain")));
        }
    }
    let cfg = QuadratureConfig::default();
    let report = autoisoptic_report(&params, iso.delta(), &thetas, phi, a.tol, &cfg)?;
    let mut w = open_output(&a.out)?;
    write_report(&report, &mut w)?;
    w.flush().map_err(Error::from)?;
    if let Some(expected) = a.expect {
        if expected != report.verdict {
            eprintln!("expected verdict {expected}, got {}", report.verdict);
            return Ok(EXIT_EXPECT);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_autoevolute(a: &AutoevoluteArgs) -> Result<i32, Failure> {
    let params = a.curve.params()?;
    let phi = a.curve.angle(a.phi);
    check_phi_tol(phi, a.tol)?;
    let thetas = angles(&a.curve, &a.thetas, default_thetas(&params, &[-1.0, -2.0, -3.0], &[0.0, 1.0, 2.0]))?;
    for &t in &thetas {
        params.theta_bounds().check(t).map_err(Failure::invalid)?;
    }
    let target = evolute_target(&params)?;
    let samples = autoevolute_check(&params, &thetas, phi)?;
    let mut w = open_output(&a.out)?;
    write_evolute_report(&params, target, &samples, &mut w)?;
    w.flush().map_err(Error::from)?;
    let verdict = if samples.iter().all(|s| (s.value - target).abs() <= a.tol) {
        EvoluteVerdict::Autoevolute
    } else {
        EvoluteVerdict::NotAutoevolute
    };
    if let Some(expected) = a.expect {
        if expected != verdict {
            let name = |v: EvoluteVerdict| v.to_possible_value().map(|p| p.get_name().to_owned()).unwrap_or_default();
            eprintln!("expected verdict {}, got {}", name(expected), name(verdict));
            return Ok(EXIT_EXPECT);
        }
    }
    Ok(EXIT_OK)
}
