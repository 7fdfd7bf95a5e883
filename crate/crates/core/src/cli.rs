//! Command-line front end: plot-ready CSV/JSON for kernels, transforms,
//! zero reports, relative differences and the verification suites.
//!
//! Exit codes: 0 on success, 1 for argument or parameter errors, 2 for
//! numerical or I/O failures. Output files are written to a temporary file
//! and renamed into place, so a failed run leaves no partial file.

pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::kernels::{self, KernelFamily, ResolvedParams};
use crate::numerics;
use crate::xi::{self, TransformMethod};
use crate::zeros;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "XI_KERNELS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "xi-kernels",
    version,
    about = "Kernel approximations of the Riemann Xi function: curves, zeros and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Constants and solved family parameters.
    Params {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Kernel values on a t grid.
    Kernel {
        #[command(flatten)]
        family: FamilyArgs,
        /// Grid as lo:hi:step.
        #[arg(long, default_value = "0:3:0.01")]
        grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Transform Ξ(z) on a z grid, with the normalized value Ξ(z)/N(z).
    Xi {
        #[command(flatten)]
        family: FamilyArgs,
        /// Grid as lo:hi:step.
        #[arg(long, default_value = "0:100:0.05")]
        grid: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Add the normalized values to JSON output (CSV always has them).
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Real zeros of Ξ on (lo, hi].
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        /// Range as lo:hi.
        #[arg(long, default_value = "0:100")]
        range: String,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Absolute tolerance of each refined zero.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Relative L1 difference from the exact kernel, in percent.
    Diff {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs invariant checks and prints one line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// exact, polya, polya2, debruijn, hejhal, s1, s2, s3 or s4.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub m: Option<u32>,
    /// S2 parameter in (0, 1).
    #[arg(long)]
    pub a: Option<f64>,
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<(KernelFamily, ResolvedParams), Error> {
        let family = KernelFamily::from_parts(&self.family, self.m, self.a)?;
        Ok((family, kernels::resolve_params(family)?))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Closed form where available, quadrature for the exact kernel.
    Auto,
    Quadrature,
    ClosedForm,
}

impl MethodArg {
    fn resolve(self, family: &KernelFamily) -> TransformMethod {
        match self {
            MethodArg::Auto => TransformMethod::preferred(family),
            MethodArg::Quadrature => TransformMethod::Quadrature,
            MethodArg::ClosedForm => TransformMethod::BesselClosedForm,
        }
    }
}

/// `lo:hi:step` or `lo:hi`.
fn parse_grid(text: &str, parts: usize) -> Result<Vec<f64>, Error> {
    let bad = || Error::Precondition(format!("cannot parse {text:?} as {}", if parts == 3 { "lo:hi:step" } else { "lo:hi" }));
    let values = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<f64>, Error>>()?;
    if values.len() != parts || values.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    if !(values[1] > values[0]) {
        return Err(Error::Precondition(format!("grid {text:?} needs hi > lo")));
    }
    if parts == 3 && !(values[2] > 0.0) {
        return Err(Error::Precondition(format!("grid {text:?} needs a positive step")));
    }
    Ok(values)
}

fn grid_points(text: &str) -> Result<Vec<f64>, Error> {
    let g = parse_grid(text, 3)?;
    Ok(numerics::uniform_grid(g[0], g[1], g[2]))
}

/// Decimal text with 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt_num).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct KernelDoc<'a> {
    family: KernelFamily,
    params: &'a ResolvedParams,
    t: &'a [f64],
    values: &'a [f64],
}

#[derive(Serialize)]
struct XiDoc<'a> {
    family: KernelFamily,
    params: &'a ResolvedParams,
    method: TransformMethod,
    z: &'a [f64],
    values: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_values: Option<&'a [f64]>,
}

#[derive(Serialize)]
struct ZerosDoc<'a> {
    family: KernelFamily,
    params: &'a ResolvedParams,
    method: TransformMethod,
    range: [f64; 2],
    step: f64,
    tol: f64,
    count: usize,
    zeros: &'a [f64],
    residuals: &'a [f64],
}

#[derive(Serialize)]
struct DiffDoc<'a> {
    family: KernelFamily,
    params: &'a ResolvedParams,
    rel_l1_percent: f64,
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn params_csv(p: &ResolvedParams) -> String {
    let mut out = String::from("name,value\n");
    let mut row = |name: &str, v: f64| {
        let _ = writeln!(out, "{name},{}", fmt_num(v));
    };
    row("phi0", p.phi0);
    row("phi2_paper", p.phi2_paper);
    row("beta", p.beta);
    row("gamma", p.gamma);
    row("delta", p.delta);
    for (name, v) in [("b", p.b), ("c", p.c), ("mu", p.mu), ("a", p.a)] {
        if let Some(v) = v {
            row(name, v);
        }
    }
    if let Some((a, b)) = p.a_b {
        row("a", a);
        row("b", b);
    }
    out
}

/// Writes `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("renaming output to {}", path.display()))?;
    Ok(())
}

/// Runs one command and returns its output text and whether every check
/// passed (always true outside `verify`).
pub fn execute(command: &Command) -> anyhow::Result<(String, bool, Option<PathBuf>)> {
    let (text, ok, output) = match command {
        Command::Params { family, output } => {
            let (_, p) = family.resolve()?;
            let text = match output.format {
                Format::Json => to_json(&p)?,
                Format::Csv => params_csv(&p),
            };
            (text, true, output)
        }
        Command::Kernel { family, grid, output } => {
            let (f, p) = family.resolve()?;
            let curve = xi::kernel_curve(&f, &p, &grid_points(grid)?)?;
            let text = match output.format {
                Format::Csv => csv("t,value", curve.points().map(|(t, v)| vec![t, v])),
                Format::Json => to_json(&KernelDoc {
                    family: f,
                    params: &p,
                    t: &curve.abscissa,
                    values: &curve.values,
                })?,
            };
            (text, true, output)
        }
        Command::Xi {
            family,
            grid,
            method,
            normalize,
            output,
        } => {
            let (f, p) = family.resolve()?;
            let method = method.resolve(&f);
            let curve = xi::xi_curve(&f, &p, &grid_points(grid)?, method, false)?;
            let normalized: Vec<f64> = curve
                .points()
                .map(|(z, v)| v / xi::normalization(z.abs()))
                .collect();
            let text = match output.format {
                Format::Csv => csv(
                    "z,value,normalized_value",
                    curve.points().zip(&normalized).map(|((z, v), n)| vec![z, v, *n]),
                ),
                Format::Json => to_json(&XiDoc {
                    family: f,
                    params: &p,
                    method,
                    z: &curve.abscissa,
                    values: &curve.values,
                    normalized_values: normalize.then_some(normalized.as_slice()),
                })?,
            };
            (text, true, output)
        }
        Command::Zeros {
            family,
            range,
            step,
            tol,
            method,
            output,
        } => {
            let (f, p) = family.resolve()?;
            let r = parse_grid(range, 2)?;
            let report = zeros::locate_zeros_by(&f, &p, method.resolve(&f), r[0], r[1], *step, *tol)?;
            let text = match output.format {
                Format::Json => to_json(&ZerosDoc {
                    family: f,
                    params: &p,
                    method: report.method,
                    range: [report.range.0, report.range.1],
                    step: report.step,
                    tol: report.tol,
                    count: report.count,
                    zeros: &report.zeros,
                    residuals: &report.residuals,
                })?,
                Format::Csv => csv(
                    "index,zero,residual",
                    report
                        .zeros
                        .iter()
                        .zip(&report.residuals)
                        .enumerate()
                        .map(|(i, (z, r))| vec![(i + 1) as f64, *z, *r]),
                ),
            };
            (text, true, output)
        }
        Command::Diff { family, output } => {
            let (f, p) = family.resolve()?;
            let pct = xi::rel_l1_diff(&f, &p)?;
            let text = match output.format {
                Format::Json => to_json(&DiffDoc {
                    family: f,
                    params: &p,
                    rel_l1_percent: pct,
                })?,
                Format::Csv => format!("family,rel_l1_percent\n{f},{}\n", fmt_num(pct)),
            };
            (text, true, output)
        }
        Command::Verify { suite, output } => {
            let checks = verify::run_suite(*suite);
            let ok = checks.iter().all(|c| c.status != verify::Status::Fail);
            let text = match output.format {
                Format::Json => to_json(&checks)?,
                Format::Csv => verify::render(&checks),
            };
            (text, ok, output)
        }
    };
    Ok((text, ok, output.out.clone()))
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Exit code for a failed run: 1 when the caller's input is at fault.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_user_error() => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    let result = execute(&cli.command).and_then(|(text, ok, out)| {
        match out {
            Some(path) => write_atomic(&path, &text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(stderr, "error: some checks failed");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code(&e)
        }
    }
}
