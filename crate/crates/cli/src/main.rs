use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ehrhart_lab::bijection::trace_point;
use ehrhart_lab::ehrhart::{closed_form_polynomial, interpolate_counts};
use ehrhart_lab::report::{enumeration_row, fmt_float, formula_row, sweep, ReportRow};
use ehrhart_lab::spectra::{
    cl_check, closed_form_roots, interlace_check, numeric_roots, DEFAULT_CL_TOL,
};
use ehrhart_lab::{verify_bijection, Complex64, Error, Family, LatticePoint, DEFAULT_BUDGET};

#[derive(Parser, Debug)]
#[command(
    name = "ehrhart-lab",
    version,
    about = "Lattice point counts, Ehrhart polynomials and root checks for A, C, A* and C*"
)]
struct Cli {
    /// Maximum number of membership tests per enumeration.
    #[arg(long, global = true, env = "EHRHART_LAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count lattice points of kP and of its boundary shell.
    Count {
        #[arg(long)]
        polytope: Family,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        scale: i64,
        /// Defaults to `both` for Astar/Cstar and `formula` for A/C.
        #[arg(long)]
        method: Option<CountMethod>,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Print Ehrhart polynomial coefficients, constant term first.
    Poly {
        #[arg(long)]
        polytope: Family,
        #[arg(long)]
        dim: usize,
        /// Defaults to `both` for Astar/Cstar and `formula` for A/C.
        #[arg(long)]
        method: Option<PolyMethod>,
    },
    /// Roots of the Ehrhart polynomial and the canonical-line verdict.
    Roots {
        #[arg(long)]
        polytope: Family,
        #[arg(long)]
        dim: usize,
        /// Use the exact root formula instead of the numeric solver (Cstar only).
        #[arg(long)]
        closed_form: bool,
        #[arg(long, default_value_t = DEFAULT_CL_TOL)]
        tol: f64,
    },
    /// Verify the boundary bijection for C*_d, or trace one point.
    Bijection {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        scale: i64,
        /// A point of k∂C*_d, e.g. `--point 1,-1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<i64>>,
    },
    /// Interlacing verdicts for consecutive C* root sets up to `--dim`.
    Interlace {
        #[arg(long, visible_alias = "max-d")]
        dim: usize,
    },
    /// Full cross-check sweep written as CSV or JSON.
    Report {
        #[arg(long, visible_alias = "max-d")]
        dim: usize,
        #[arg(long, visible_alias = "max-k")]
        scale: i64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CountMethod {
    Formula,
    Enumerate,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PolyMethod {
    Formula,
    Interpolate,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

/// Bad arguments that clap cannot catch on its own.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A cross-check that ran and failed.
#[derive(Debug)]
struct Verification(String);

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Verification {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(
            Error::InvalidDimension(_)
            | Error::InvalidScale(_)
            | Error::DimensionMismatch { .. }
            | Error::NotInPolytope { .. }
            | Error::NotOnBoundary { .. }
            | Error::UnsupportedPolytope(_)
            | Error::DegreeGuard { .. }
            | Error::InvalidTolerance(_),
        ) => 2,
        _ => 1,
    }
}

fn is_starred(family: Family) -> bool {
    matches!(family, Family::AStar | Family::CStar)
}

fn cmd_count(
    family: Family,
    d: usize,
    k: i64,
    method: Option<CountMethod>,
    format: Option<Format>,
    budget: u64,
) -> anyhow::Result<()> {
    let method = method.unwrap_or(if is_starred(family) {
        CountMethod::Both
    } else {
        CountMethod::Formula
    });
    if method != CountMethod::Formula && !is_starred(family) {
        return Err(usage(format!(
            "enumeration is only available for Astar and Cstar, not {family}"
        )));
    }
    let mut rows: Vec<ReportRow> = Vec::new();
    if method != CountMethod::Enumerate {
        rows.push(formula_row(family, d, k)?);
    }
    if method != CountMethod::Formula {
        rows.push(enumeration_row(family, d, k, budget)?);
    }
    let mut out = std::io::stdout().lock();
    match format {
        None => {
            for r in &rows {
                writeln!(
                    out,
                    "{} d={} k={}: count {}, boundary {} ({})",
                    r.polytope, r.d, r.k, r.count, r.boundary, r.source
                )?;
            }
        }
        Some(Format::Csv) => {
            writeln!(out, "polytope,d,k,count,boundary,source")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.polytope, r.d, r.k, r.count, r.boundary, r.source
                )?;
            }
        }
        Some(Format::Json) => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
    }
    if let [a, b] = rows.as_slice() {
        if !a.agrees_with(b) {
            return Err(Verification(format!(
                "formula and enumeration disagree ({family}, d={d}, k={k}): {}/{} vs {}/{}",
                a.count, a.boundary, b.count, b.boundary
            ))
            .into());
        }
    }
    Ok(())
}

fn cmd_poly(
    family: Family,
    d: usize,
    method: Option<PolyMethod>,
    budget: u64,
) -> anyhow::Result<()> {
    let method = method.unwrap_or(if is_starred(family) {
        PolyMethod::Both
    } else {
        PolyMethod::Formula
    });
    if method != PolyMethod::Formula && !is_starred(family) {
        return Err(usage(format!(
            "interpolation is only available for Astar and Cstar, not {family}"
        )));
    }
    let formula = match method {
        PolyMethod::Interpolate => None,
        _ => Some(closed_form_polynomial(family, d)?),
    };
    let fitted = match method {
        PolyMethod::Formula => None,
        _ => Some(interpolate_counts(&family.polytope(d)?, budget)?),
    };
    if let (Some(a), Some(b)) = (&formula, &fitted) {
        if a.poly() != b.poly() {
            return Err(Verification(format!(
                "closed form {a} differs from interpolation {b} ({family}, d={d})"
            ))
            .into());
        }
    }
    let shown = formula
        .or(fitted)
        .ok_or_else(|| anyhow!("no polynomial computed"))?;
    println!("{shown}");
    Ok(())
}

fn cmd_roots(family: Family, d: usize, closed_form: bool, tol: f64) -> anyhow::Result<()> {
    let (roots, source): (Vec<Complex64>, &str) = if closed_form {
        if family != Family::CStar {
            return Err(usage("--closed-form is only available for Cstar"));
        }
        (
            closed_form_roots(d)?.iter().map(|r| r.value()).collect(),
            "closed_form",
        )
    } else {
        (
            numeric_roots(&closed_form_polynomial(family, d)?)?,
            "numeric",
        )
    };
    let verdict = cl_check(&roots, tol)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "re,im,source")?;
    for z in &roots {
        writeln!(out, "{},{},{source}", fmt_float(z.re), fmt_float(z.im))?;
    }
    writeln!(
        out,
        "CL: {}, max |Re+1/2| = {}",
        if verdict.holds { "yes" } else { "no" },
        fmt_float(verdict.max_deviation)
    )?;
    if !verdict.holds {
        return Err(Verification(format!(
            "roots leave the canonical line ({family}, d={d}) at tol {tol:e}"
        ))
        .into());
    }
    Ok(())
}

fn cmd_bijection(d: usize, k: i64, point: Option<Vec<i64>>, budget: u64) -> anyhow::Result<()> {
    if let Some(coords) = point {
        let x = LatticePoint::new(coords);
        let t = trace_point(&x, d, k)?;
        println!("x = {}", t.point);
        println!("f(x) = {}  [{}]", t.image, t.forward);
        println!("g(f(x)) = {}  [{}]", t.restored, t.backward);
        if !t.round_trips() {
            return Err(Verification(format!("g(f(x)) != x (Cstar, d={d}, k={k})")).into());
        }
        println!("roundtrip OK");
        return Ok(());
    }
    let start = Instant::now();
    let report = verify_bijection(d, k, budget)?;
    println!("{report}");
    println!("runtime {:.3}s", start.elapsed().as_secs_f64());
    if !report.ok() {
        for s in &report.failure_samples {
            eprintln!("  {s}");
        }
        return Err(Verification(format!("bijection failed (Cstar, d={d}, k={k})")).into());
    }
    Ok(())
}

fn cmd_interlace(max_d: usize) -> anyhow::Result<()> {
    if max_d < 2 {
        return Err(usage("interlace needs --dim >= 2"));
    }
    let mut failed = Vec::new();
    println!("d,d+1,non_strict,strict");
    for d in 1..max_d {
        let r = interlace_check(d)?;
        println!("{},{},{},{}", d, d + 1, r.non_strict, r.strict);
        if !r.non_strict {
            failed.push(d.to_string());
        }
    }
    if !failed.is_empty() {
        return Err(Verification(format!("interlacing fails at d={}", failed.join(","))).into());
    }
    Ok(())
}

/// Writes through a temporary file in the target directory so a failed
/// write never leaves a partial file at `path`.
fn write_atomic(path: &Path, contents: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a file in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn cmd_report(
    max_d: usize,
    max_k: i64,
    out: Option<PathBuf>,
    format: Format,
    budget: u64,
) -> anyhow::Result<()> {
    let report = sweep(max_d, max_k, budget)?;
    let body = match format {
        Format::Csv => report.to_csv(),
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    match out {
        Some(path) => {
            write_atomic(&path, body.as_bytes())?;
            eprintln!(
                "wrote {} ({} count rows, {} verdict rows)",
                path.display(),
                report.counts.len(),
                report.verdicts.len()
            );
        }
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    let failures = report.failures();
    if !failures.is_empty() {
        for f in &failures {
            eprintln!("  {f}");
        }
        return Err(Verification(format!("{} cross-check(s) failed", failures.len())).into());
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let budget = cli.budget;
    match cli.command {
        Command::Count {
            polytope,
            dim,
            scale,
            method,
            format,
        } => cmd_count(polytope, dim, scale, method, format, budget),
        Command::Poly {
            polytope,
            dim,
            method,
        } => cmd_poly(polytope, dim, method, budget),
        Command::Roots {
            polytope,
            dim,
            closed_form,
            tol,
        } => cmd_roots(polytope, dim, closed_form, tol),
        Command::Bijection { dim, scale, point } => cmd_bijection(dim, scale, point, budget),
        Command::Interlace { dim } => cmd_interlace(dim),
        Command::Report {
            dim,
            scale,
            out,
            format,
        } => cmd_report(dim, scale, out, format, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
