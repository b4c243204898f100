//! Command-line front end: `validate`, `verify`, `mesh` and `phibar`.
//!
//! Exit codes: 0 success or all checks passed, 1 checks failed (or the
//! phase map could not be inverted), 2 invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::geometry::{coordinates, immerse, ChartPoint};
use crate::params::FamilyParams;
use crate::phimap::{angle_cap, bounds_from, invert_phi, phi_bar, OscillationBounds};
use crate::profile::ProfileCurve;
use crate::verify::{run_suite_with, SampleSpec, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lmcf", version, about = "Lagrangian self-similar solutions and translating solitons in C^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a JSON config against the family hypotheses.
    Validate { config: PathBuf },
    /// Run the verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Export sampled immersion points as CSV.
    Mesh(MeshArgs),
    /// Asymptotic phases, angle bounds, and inversion of the phase map.
    Phibar(PhibarArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    config: PathBuf,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Points per sampling axis (s values and chart points per s).
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Report path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override a check tolerance, `name=value`; repeatable.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    #[arg(long, hide = true)]
    inject_phase_drift: Option<f64>,
}

#[derive(Debug, Args)]
struct MeshArgs {
    config: PathBuf,
    /// `lo,hi`
    #[arg(long, allow_hyphen_values = true)]
    s_range: String,
    /// `NS,NX`: s values, and values per chart coordinate.
    #[arg(long)]
    grid: String,
    /// `lo,hi` for every chart coordinate.
    #[arg(long, allow_hyphen_values = true)]
    x_range: Option<String>,
    /// Use the `x_n < 0` sheet of self-similar families.
    #[arg(long)]
    lower: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct PhibarArgs {
    /// Comma-separated `a_j`.
    #[arg(long)]
    a: Option<String>,
    #[arg(long = "E")]
    e: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Solve for `a` given `--target`.
    #[arg(long, requires = "target")]
    invert: bool,
    /// Comma-separated target phases.
    #[arg(long)]
    target: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Validate { config } => cmd_validate(&config, stdout),
        Command::Verify(args) => cmd_verify(&args, stdout),
        Command::Mesh(args) => cmd_mesh(&args),
        Command::Phibar(args) => cmd_phibar(&args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::invalid(format!("{}: {e}", path.display()))
}

/// Reads and parses a config without checking the family hypotheses.
pub fn read_config(path: &Path) -> std::result::Result<FamilyParams<f64>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_valid(path: &Path) -> std::result::Result<FamilyParams<f64>, Failure> {
    let params = read_config(path).map_err(Failure::invalid)?;
    let violations = params.validate();
    if violations.is_empty() {
        Ok(params)
    } else {
        Err(Error::InvalidParams(violations).into())
    }
}

fn cmd_validate(path: &Path, stdout: &mut dyn Write) -> CmdResult {
    let params = read_config(path).map_err(Failure::invalid)?;
    let violations = params.validate();
    if violations.is_empty() {
        let _ = writeln!(stdout, "valid");
        return Ok(EXIT_OK);
    }
    let mut msg = String::from("invalid parameters");
    for v in &violations {
        let _ = write!(msg, "\n  {}: {}", v.field, v.reason);
    }
    Err(Failure::invalid(msg))
}

fn parse_tolerances(items: &[String]) -> std::result::Result<Tolerances, Failure> {
    let mut t = Tolerances::default();
    for item in items {
        let (name, value) =
            item.split_once('=').ok_or_else(|| Failure::invalid(format!("tolerance {item:?} is not NAME=VALUE")))?;
        let value: f64 =
            value.trim().parse().map_err(|_| Failure::invalid(format!("tolerance {item:?}: bad number")))?;
        t.set(name.trim(), value)?;
    }
    Ok(t)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> CmdResult {
    let params = load_valid(&args.config)?;
    let tols = parse_tolerances(&args.tolerances)?;
    if args.samples == 0 {
        return Err(Failure::invalid("--samples must be positive"));
    }
    let mut curve = ProfileCurve::new(&params)?;
    if let Some(rate) = args.inject_phase_drift {
        curve = curve.with_phase_drift(0, rate);
    }
    let spec = SampleSpec { points_per_axis: args.samples, seed: args.seed };
    let report = run_suite_with(&curve, &spec, &tols)?;
    let json = to_json(&report);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| io_err(path, e))?;
            for c in &report.checks {
                let _ = writeln!(
                    stdout,
                    "{:<24} {}  max {:.3e}  tol {:.1e}",
                    c.name,
                    if c.pass { "pass" } else { "FAIL" },
                    c.max_residual,
                    c.tolerance
                );
            }
        }
        None => {
            let _ = stdout.write_all(json.as_bytes());
        }
    }
    Ok(if report.overall_pass { EXIT_OK } else { EXIT_FAILED })
}

fn parse_list(text: &str, what: &str) -> std::result::Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::invalid(format!("{what}: {t:?} is not a finite number")))
        })
        .collect()
}

fn parse_pair(text: &str, what: &str) -> std::result::Result<(f64, f64), Failure> {
    match parse_list(text, what)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Failure::invalid(format!("{what} needs exactly two comma-separated values"))),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_mesh(args: &MeshArgs) -> CmdResult {
    let params = load_valid(&args.config)?;
    let curve = ProfileCurve::new(&params)?;
    let (s_lo, s_hi) = parse_pair(&args.s_range, "--s-range")?;
    if s_lo > s_hi {
        return Err(Failure::invalid("--s-range must satisfy lo <= hi"));
    }
    let grid = parse_list(&args.grid, "--grid")?;
    let (ns, nx) = match grid.as_slice() {
        [a, b] if *a >= 1.0 && *b >= 1.0 && a.fract() == 0.0 && b.fract() == 0.0 => (*a as usize, *b as usize),
        _ => return Err(Failure::invalid("--grid needs two positive integers NS,NX")),
    };
    let (x_lo, x_hi) = match &args.x_range {
        Some(r) => parse_pair(r, "--x-range")?,
        None => (-0.5, 0.5),
    };
    let free = if params.family.is_translator() { params.m() } else { params.m() - 1 };
    let xs = linspace(x_lo, x_hi, nx);
    let mut header = vec!["s".to_string()];
    let coords_len = params.m();
    header.extend((1..=coords_len).map(|j| format!("x_{j}")));
    for k in 1..=params.n {
        header.push(format!("re_z_{k}"));
        header.push(format!("im_z_{k}"));
    }
    let mut out = header.join(",");
    out.push('\n');
    let total = nx.checked_pow(free as u32).ok_or_else(|| Failure::invalid("grid too large"))?;
    for s in linspace(s_lo, s_hi, ns) {
        for idx in 0..total {
            let mut rem = idx;
            let mut x = vec![0.0; free];
            for slot in x.iter_mut().rev() {
                *slot = xs[rem % nx];
                rem /= nx;
            }
            let mut point = ChartPoint::new(x, s);
            point.upper = !args.lower;
            let coords = coordinates(&point, &curve).map_err(|e| Failure::invalid(format!("invalid range: {e}")))?;
            let z = immerse(&point, &curve).map_err(|e| Failure::invalid(format!("invalid range: {e}")))?;
            let mut row: Vec<String> = vec![fmt17(s)];
            row.extend(coords.iter().map(|v| fmt17(*v)));
            for w in &z {
                row.push(fmt17(w.re));
                row.push(fmt17(w.im));
            }
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    std::fs::write(&args.out, out).map_err(|e| io_err(&args.out, e))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PhibarOutput {
    mode: &'static str,
    #[serde(rename = "E")]
    e: f64,
    alpha: f64,
    a: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<Vec<f64>>,
    phi_bar: Vec<f64>,
    sum_phi_bar: f64,
    angle_cap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    /// Bounds with all `psi_j = 0`; `null` when `alpha = 0`.
    bounds: Option<OscillationBounds<f64>>,
}

fn cmd_phibar(args: &PhibarArgs, stdout: &mut dyn Write) -> CmdResult {
    if !(args.e > 1.0 && args.e.is_finite()) {
        return Err(Failure::invalid("--E must exceed 1"));
    }
    if !(args.alpha >= 0.0 && args.alpha.is_finite()) {
        return Err(Failure::invalid("--alpha must be finite and non-negative"));
    }
    let (a, target, residual, iterations) = if args.invert {
        if args.a.is_some() {
            return Err(Failure::invalid("--invert takes --target, not --a"));
        }
        let target = parse_list(args.target.as_deref().unwrap_or_default(), "--target")?;
        match invert_phi(&target, args.e, args.alpha) {
            Ok(inv) => (inv.a, Some(target), Some(inv.residual), Some(inv.iterations)),
            Err(e @ (Error::TargetOutsideImage | Error::NoConvergence { .. } | Error::SingularJacobian { .. })) => {
                return Err(Failure { code: EXIT_FAILED, message: e.to_string() })
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        let a = parse_list(args.a.as_deref().ok_or_else(|| Failure::invalid("--a is required"))?, "--a")?;
        (a, None, None, None)
    };
    let pb = phi_bar(&a, args.e, args.alpha)?;
    let sum: f64 = pb.iter().sum();
    let out = PhibarOutput {
        mode: if args.invert { "invert" } else { "forward" },
        e: args.e,
        alpha: args.alpha,
        target,
        phi_bar: pb,
        sum_phi_bar: sum,
        angle_cap: angle_cap(args.e),
        residual,
        iterations,
        bounds: (args.alpha > 0.0).then(|| bounds_from(0.0, sum, args.e)),
        a,
    };
    let _ = stdout.write_all(to_json(&out).as_bytes());
    Ok(EXIT_OK)
}
