//! Command-line front end: builds prescribed-derivative automorphisms,
//! verifies them, and emits figure-reproduction data as CSV/JSON.
//!
//! Output conventions: with `--out PATH` every artifact goes to files and
//! stdout stays silent (diagnostics on stderr); without `--out` the primary
//! artifact is printed to stdout in the format selected by `--format`.
//! Exit codes: 0 success, 1 verification failure, 2 flag misuse.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use automorph::{
    build_automorphism, default_order, eval_series, sup_norm_gap, taylor, verify, CurveSample,
    MapExpr, SeqFamily, SeqIndex, SeqKind, SolveError, ToleranceProfile,
};

/// Residual tolerance passed to the parameter solvers.
const SOLVE_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "automorph",
    version,
    about = "Construct, verify and sample real analytic automorphisms of (-1, 1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a map with derivative A at the origin, verify it, emit its curve
    Build(BuildArgs),
    /// Emit curves for the iterated sine map h_1..h_N and a derivative table
    Iterate(IterateArgs),
    /// Build a map for target A and emit its verification report
    Verify(VerifyArgs),
    /// Emit Maclaurin coefficients of a primitive family
    Series(SeriesArgs),
    /// Emit a counterexample-sequence curve and its convergence table
    Counterexample(CounterexampleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Arctan,
    Tan,
    Sin,
    Erf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Bump,
    Piecewise,
}

#[derive(Args)]
struct BuildArgs {
    /// Target derivative at the origin
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Number of grid points for sampling and verification
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    /// Margin from the interval endpoints for the emitted curve
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Override the endpoint residual tolerance
    #[arg(long = "tol-endpoint")]
    tol_endpoint: Option<f64>,
    /// Override the derivative-at-zero tolerance
    #[arg(long = "tol-deriv")]
    tol_deriv: Option<f64>,
    /// Write the curve here (report goes to <stem>.report.json)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format when --out is absent: csv = curve, json = report
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct IterateArgs {
    /// Number of iterates of sin(pi x / 2)
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Write curves to <stem>_k.<ext> and the table to <stem>.table.json
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format for the derivative table when --out is absent
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Target derivative at the origin
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    #[arg(long = "tol-endpoint")]
    tol_endpoint: Option<f64>,
    #[arg(long = "tol-deriv")]
    tol_deriv: Option<f64>,
    /// Write the report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// json = full report, csv = the checks table
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    /// Family to expand
    #[arg(long, value_enum)]
    family: Family,
    /// Target derivative for arctan/tan (solved for b); shape k for erf
    #[arg(long)]
    a: Option<f64>,
    /// Truncation order (defaults to the documented per-family order)
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv = index,coefficient rows; json = the full expansion object
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Which sequence: the flat bump or the piecewise cubic
    #[arg(long, value_enum)]
    kind: Kind,
    /// Sequence index: a positive integer, or "inf" for the limit member
    #[arg(long, value_parser = parse_seq_index)]
    n: SeqIndex,
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    /// Margin from the (open) interval endpoints; must be positive
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    /// Write the curve here (table goes to <stem>.table.json)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format when --out is absent: csv = curve, json = table
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_seq_index(s: &str) -> Result<SeqIndex, String> {
    match s {
        "inf" | "infinity" | "∞" => Ok(SeqIndex::Limit),
        other => {
            let n: u32 = other
                .parse()
                .map_err(|_| format!("expected a positive integer or \"inf\", got {other:?}"))?;
            if n == 0 {
                return Err("sequence index must be at least 1".to_string());
            }
            Ok(SeqIndex::Finite(n))
        }
    }
}

#[derive(Serialize)]
struct IterateRow {
    n: u32,
    deriv_at_zero: f64,
    pi_half_pow_n: f64,
    relative_gap: f64,
}

#[derive(Serialize)]
struct GapRow {
    n: u32,
    sup_norm_gap: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Iterate(args) => cmd_iterate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Series(args) => cmd_series(args),
        Command::Counterexample(args) => cmd_counterexample(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Prints a flag-misuse diagnostic and yields exit code 2.
fn usage(msg: &str) -> Result<ExitCode> {
    eprintln!("error: {msg}");
    Ok(ExitCode::from(2))
}

fn check_grid_eps(grid: usize, eps: f64) -> Option<&'static str> {
    if grid < 3 {
        return Some("--grid must be at least 3");
    }
    if !(0.0..=0.1).contains(&eps) {
        return Some("--eps must lie in [0, 0.1]");
    }
    None
}

fn write_file(path: &Path, emit: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    emit(&mut w).with_context(|| format!("writing {}", path.display()))?;
    w.flush()?;
    Ok(())
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());
    path.with_file_name(format!("{stem}{suffix}"))
}

fn profile_with_overrides(endpoint: Option<f64>, derivative: Option<f64>) -> ToleranceProfile {
    let mut profile = ToleranceProfile::default();
    if let Some(t) = endpoint {
        profile.endpoint = t;
    }
    if let Some(t) = derivative {
        profile.derivative = t;
    }
    profile
}

fn build_map(a: f64) -> Result<MapExpr, SolveError> {
    build_automorphism(a, SOLVE_TOL)
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode> {
    if let Some(msg) = check_grid_eps(args.grid, args.eps) {
        return usage(msg);
    }
    let map = match build_map(args.a) {
        Ok(map) => map,
        Err(SolveError::NonFiniteTarget(_)) => return usage("--a must be finite"),
        Err(err) => return Err(err.into()),
    };
    let profile = profile_with_overrides(args.tol_endpoint, args.tol_deriv);
    let report = verify(&map, args.a, args.grid, &profile)?;
    let curve = CurveSample::from_expr(&map, args.grid, args.eps)?;

    match &args.out {
        Some(path) => {
            write_file(path, |w| curve.write_csv(w))?;
            let report_path = sibling(path, ".report.json");
            write_file(&report_path, |w| writeln!(w, "{}", report.to_json()))?;
            eprintln!(
                "built {}; wrote {} and {}",
                map,
                path.display(),
                report_path.display()
            );
        }
        None => match args.format {
            Format::Csv => {
                let stdout = io::stdout();
                curve.write_csv(stdout.lock())?;
            }
            Format::Json => println!("{}", report.to_json()),
        },
    }

    if report.pass {
        eprintln!("verification: PASS ({} checks)", report.checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        eprintln!("verification: FAIL ({})", failed.join(", "));
        Ok(ExitCode::from(1))
    }
}

fn cmd_iterate(args: IterateArgs) -> Result<ExitCode> {
    if args.n < 1 {
        return usage("--n must be at least 1");
    }
    if let Some(msg) = check_grid_eps(args.grid, args.eps) {
        return usage(msg);
    }

    let mut rows = Vec::with_capacity(args.n as usize);
    let mut curves = Vec::with_capacity(args.n as usize);
    let mut power = 1.0f64;
    for k in 1..=args.n {
        power *= std::f64::consts::FRAC_PI_2;
        let hk = MapExpr::iterate(MapExpr::SinHalfPi, k).expect("k >= 1");
        let deriv_at_zero = hk.deriv(0.0)?;
        rows.push(IterateRow {
            n: k,
            deriv_at_zero,
            pi_half_pow_n: power,
            relative_gap: (deriv_at_zero - power).abs() / power,
        });
        curves.push(CurveSample::from_expr(&hk, args.grid, args.eps)?);
    }

    match &args.out {
        Some(path) => {
            let ext = path
                .extension()
                .map(|e| e.to_string_lossy().into_owned())
                .unwrap_or_else(|| "csv".to_string());
            for (curve, k) in curves.iter().zip(1..) {
                let curve_path = sibling(path, &format!("_{k}.{ext}"));
                write_file(&curve_path, |w| curve.write_csv(w))?;
            }
            let table_path = sibling(path, ".table.json");
            write_file(&table_path, |w| {
                writeln!(w, "{}", serde_json::to_string_pretty(&rows).unwrap())
            })?;
            eprintln!("wrote {} curves and {}", curves.len(), table_path.display());
        }
        None => match args.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
            Format::Csv => {
                println!("n,deriv_at_zero,pi_half_pow_n,relative_gap");
                for r in &rows {
                    println!(
                        "{},{},{},{}",
                        r.n, r.deriv_at_zero, r.pi_half_pow_n, r.relative_gap
                    );
                }
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.grid < 3 {
        return usage("--grid must be at least 3");
    }
    let map = match build_map(args.a) {
        Ok(map) => map,
        Err(SolveError::NonFiniteTarget(_)) => return usage("--a must be finite"),
        Err(err) => return Err(err.into()),
    };
    let profile = profile_with_overrides(args.tol_endpoint, args.tol_deriv);
    let report = verify(&map, args.a, args.grid, &profile)?;

    match &args.out {
        Some(path) => {
            write_file(path, |w| writeln!(w, "{}", report.to_json()))?;
            eprintln!("wrote {}", path.display());
        }
        None => match args.format {
            Format::Json => println!("{}", report.to_json()),
            Format::Csv => {
                println!("name,pass,measured,threshold");
                for c in &report.checks {
                    println!("{},{},{},{}", c.name, c.pass, c.measured, c.threshold);
                }
            }
        },
    }

    if report.pass {
        eprintln!("verification: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification: FAIL");
        Ok(ExitCode::from(1))
    }
}

fn cmd_series(args: SeriesArgs) -> Result<ExitCode> {
    let family = match args.family {
        Family::Arctan => {
            let Some(a) = args.a else {
                return usage("--family arctan needs --a > 1");
            };
            match build_map(a) {
                Ok(map @ MapExpr::ArctanFam { .. }) => map,
                Ok(_) | Err(SolveError::TargetOutOfRange { .. }) => {
                    return usage("--family arctan needs --a > 1")
                }
                Err(SolveError::NonFiniteTarget(_)) => return usage("--a must be finite"),
                Err(err) => return Err(err.into()),
            }
        }
        Family::Tan => {
            let Some(a) = args.a else {
                return usage("--family tan needs --a in (0, 1)");
            };
            match build_map(a) {
                Ok(map @ MapExpr::TanFam { .. }) => map,
                Ok(_) | Err(SolveError::TargetOutOfRange { .. }) => {
                    return usage("--family tan needs --a in (0, 1)")
                }
                Err(SolveError::NonFiniteTarget(_)) => return usage("--a must be finite"),
                Err(err) => return Err(err.into()),
            }
        }
        Family::Sin => {
            if args.a.is_some() {
                return usage("--family sin takes no --a (the map is fixed)");
            }
            MapExpr::SinHalfPi
        }
        Family::Erf => {
            let k = args.a.unwrap_or(1.0);
            match MapExpr::erf_fam(k) {
                Ok(map) => map,
                Err(err) => return usage(&err.to_string()),
            }
        }
    };

    let order = match args.order {
        Some(0) => return usage("--order must be at least 1"),
        Some(n) => n,
        None => default_order(&family).expect("primitive family"),
    };
    let expansion = taylor(&family, order)?;
    // sanity: the truncation evaluates finitely at the origin
    debug_assert_eq!(eval_series(&expansion, 0.0), 0.0);

    match &args.out {
        Some(path) => {
            write_file(path, |w| write_series(&expansion, args.format, w))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = io::stdout();
            write_series(&expansion, args.format, &mut stdout.lock())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_series(
    expansion: &automorph::SeriesExpansion,
    format: Format,
    w: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "index,coefficient")?;
            for (index, c) in expansion.coeffs.iter().enumerate() {
                writeln!(w, "{index},{c}")?;
            }
        }
        Format::Json => {
            // an unbounded radius serializes as null
            writeln!(w, "{}", serde_json::to_string_pretty(expansion).unwrap())?;
        }
    }
    Ok(())
}

fn cmd_counterexample(args: CounterexampleArgs) -> Result<ExitCode> {
    if args.grid < 3 {
        return usage("--grid must be at least 3");
    }
    if !(args.eps > 0.0 && args.eps <= 0.1) {
        return usage("--eps must lie in (0, 0.1] for the open-interval families");
    }
    let kind = match args.kind {
        Kind::Bump => SeqKind::FlatBump,
        Kind::Piecewise => SeqKind::PiecewiseCubic,
    };
    let family = SeqFamily::new(kind, args.n).expect("index validated by the parser");
    let curve = CurveSample::from_seq(&family, args.grid, args.eps)?;

    let table_max = match args.n {
        SeqIndex::Finite(n) => n,
        SeqIndex::Limit => 10,
    };
    let lo = -1.0 + args.eps;
    let hi = 1.0 - args.eps;
    let mut rows = Vec::with_capacity(table_max as usize);
    for n in 1..=table_max {
        let member = SeqFamily::new(kind, SeqIndex::Finite(n)).expect("n >= 1");
        rows.push(GapRow {
            n,
            sup_norm_gap: sup_norm_gap(&member, lo, hi, args.grid)?,
        });
    }

    match &args.out {
        Some(path) => {
            write_file(path, |w| curve.write_csv(w))?;
            let table_path = sibling(path, ".table.json");
            write_file(&table_path, |w| {
                writeln!(w, "{}", serde_json::to_string_pretty(&rows).unwrap())
            })?;
            eprintln!("wrote {} and {}", path.display(), table_path.display());
        }
        None => match args.format {
            Format::Csv => {
                let stdout = io::stdout();
                curve.write_csv(stdout.lock())?;
            }
            Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        },
    }
    Ok(ExitCode::SUCCESS)
}
