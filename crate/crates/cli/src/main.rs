//! `theta-mono`: evaluate theta functions, compare series representations
//! against the q-series, and run sign scans.
//!
//! Exit status: 0 when every check passes, 1 when a numerical check fails,
//! 2 on a usage or domain error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_mono::calibration::{self, Formula, Variant};
use theta_mono::config;
use theta_mono::log_deriv::{dlog_theta_dt, dlog_theta_du};
use theta_mono::monotonicity::{self, Lemma1Fn, QuotientSpec};
use theta_mono::{
    theta, theta_du, EvalPoint, ScanGrid, SeriesTruncation, SignScanReport, ThetaIndex,
};

/// Relative `--output` paths resolve under this directory when it is set.
const OUT_DIR_ENV: &str = "THETA_MONO_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "theta-mono", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a theta function or one of its log-derivatives.
    Eval(EvalArgs),
    /// Compare a series representation against the q-series.
    Compare(CompareArgs),
    /// Run a sign scan and report numerical evidence.
    Scan(ScanArgs),
    /// Write the calibration ledger for every formula and variant.
    Ledger(LedgerArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = config::SCAN_T_START)]
    t_start: f64,
    #[arg(long, default_value_t = config::SCAN_T_STOP)]
    t_stop: f64,
    #[arg(long, default_value_t = config::SCAN_T_COUNT)]
    t_count: usize,
    /// Space the t-grid evenly instead of logarithmically.
    #[arg(long)]
    linear: bool,
}

impl GridArgs {
    fn values(&self) -> anyhow::Result<Vec<f64>> {
        if self.t_count == 0 {
            bail!("empty t-grid: --t-count must be at least 1");
        }
        if !(self.t_start > 0.0 && self.t_stop >= self.t_start && self.t_stop.is_finite()) {
            bail!(
                "t-grid needs 0 < t-start <= t-stop, got [{}, {}]",
                self.t_start,
                self.t_stop
            );
        }
        Ok(if self.linear {
            config::linspace(self.t_start, self.t_stop, self.t_count)
        } else {
            config::logspace(self.t_start, self.t_stop, self.t_count)
        })
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct TruncArgs {
    #[arg(long, default_value_t = config::DEFAULT_TAIL_TOL)]
    tail_tol: f64,
    #[arg(long, default_value_t = config::DEFAULT_MAX_TERMS)]
    max_terms: usize,
}

impl TruncArgs {
    fn get(&self) -> anyhow::Result<SeriesTruncation> {
        Ok(SeriesTruncation::new(self.tail_tol, self.max_terms)?)
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Write the table here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Plain,
}

impl OutputArgs {
    fn sink(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => {
                let path = resolve_output(path);
                let file = File::create(&path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                Box::new(BufWriter::new(file))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum EvalFn {
    Theta,
    ThetaDu,
    Dlogdt,
    Dlogdu,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(value_enum)]
    function: EvalFn,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    j: u8,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    u: f64,
    /// A single t; without it the t-grid flags apply.
    #[arg(long)]
    t: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    trunc: TruncArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Formula id, e.g. prop1-theta4, thm2-theta1 or zeta-prefactor.
    #[arg(long)]
    target: Formula,
    #[arg(long, default_value_t = Variant::Corrected)]
    variant: Variant,
    /// Defaults to the formula's own tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// u-values (repeatable); with none, the formula's default grid is used.
    #[arg(long, allow_hyphen_values = true)]
    u: Vec<f64>,
    /// Use the t-grid flags instead of the default grid's t-values.
    #[arg(long)]
    custom_t: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    trunc: TruncArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ScanTarget {
    Lemma1,
    Theorem3,
    Theorem4,
    Theorem5,
    Corollaries,
    /// Uninterpreted signs of the first three t-derivatives of `S_4`.
    S4Raw,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Lemma1Kind {
    Coth,
    Csch,
    CoshShift,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    target: ScanTarget,
    #[arg(long = "fn", value_enum)]
    function: Option<Lemma1Kind>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    j: Option<u8>,
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long, default_value_t = config::SCAN_MAX_ORDER)]
    max_order: usize,
    #[arg(long, default_value_t = config::SCAN_MARGIN)]
    margin: f64,
    #[arg(long, default_value_t = config::SCAN_STRICT_FLOOR)]
    strict_floor: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    trunc: TruncArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct LedgerArgs {
    #[command(flatten)]
    trunc: TruncArgs,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Scan(args) => cmd_scan(&args),
        Command::Ledger(args) => cmd_ledger(&args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn index(j: u8) -> anyhow::Result<ThetaIndex> {
    Ok(ThetaIndex::new(j)?)
}

fn cmd_eval(args: &EvalArgs) -> anyhow::Result<Outcome> {
    let j = index(args.j)?;
    let trunc = args.trunc.get()?;
    let ts = match args.t {
        Some(t) => vec![t],
        None => args.grid.values()?,
    };
    let (name, f): (&str, fn(ThetaIndex, EvalPoint, SeriesTruncation) -> _) = match args.function {
        EvalFn::Theta => ("theta", theta),
        EvalFn::ThetaDu => ("theta_du", theta_du),
        EvalFn::Dlogdt => ("dlogdt", dlog_theta_dt),
        EvalFn::Dlogdu => ("dlogdu", dlog_theta_du),
    };
    let rows = ts
        .iter()
        .map(|&t| {
            let p = EvalPoint::new(args.u, t)?;
            let value = f(j, p, trunc)
                .with_context(|| format!("{name} j={} at u={}, t={t}", args.j, args.u))?;
            Ok((t, value))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;

    let mut out = args.out.sink()?;
    match args.out.format {
        Format::Csv => {
            writeln!(out, "# theta-mono v1, target=eval-{name}-theta{}", args.j)?;
            writeln!(out, "u,t,value")?;
            for (t, value) in rows {
                writeln!(out, "{:.15e},{t:.15e},{value:.15e}", args.u)?;
            }
        }
        Format::Plain => {
            for (t, value) in rows {
                writeln!(
                    out,
                    "{name} theta{} u={} t={t} {value:.15e}",
                    args.j, args.u
                )?;
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Pass)
}

fn cmd_compare(args: &CompareArgs) -> anyhow::Result<Outcome> {
    let trunc = args.trunc.get()?;
    let formula = args.target;
    if !formula.variants().contains(&args.variant) {
        bail!("{formula} has no {} variant", args.variant);
    }
    let tol = args.tol.unwrap_or_else(|| formula.tolerance());
    if tol.is_nan() || tol < 0.0 {
        bail!("--tol must be nonnegative, got {tol}");
    }
    let grid = if args.u.is_empty() && !args.custom_t {
        formula.default_grid()
    } else {
        let us = if args.u.is_empty() {
            config::compare_u_values()
        } else {
            args.u.clone()
        };
        let ts = if args.custom_t {
            args.grid.values()?
        } else {
            config::compare_t_values()
        };
        ts.iter()
            .flat_map(|&t| us.iter().map(move |&u| EvalPoint::new(u, t)))
            .collect::<theta_mono::Result<Vec<_>>>()?
    };
    if grid.is_empty() {
        bail!("empty comparison grid");
    }

    let points = calibration::compare_grid(formula, args.variant, &grid, trunc)
        .with_context(|| format!("compare {formula} ({})", args.variant))?;
    let max = points.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let outcome = if max <= tol {
        Outcome::Pass
    } else {
        Outcome::Fail
    };

    let mut out = args.out.sink()?;
    match args.out.format {
        Format::Csv => {
            writeln!(
                out,
                "# theta-mono v1, target={formula}, variant={}, points={}, tol={tol:e}",
                args.variant,
                points.len()
            )?;
            writeln!(out, "u,t,value,oracle,deviation")?;
            for c in &points {
                writeln!(
                    out,
                    "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}",
                    c.u, c.t, c.value, c.oracle, c.deviation
                )?;
            }
        }
        Format::Plain => {
            for c in &points {
                writeln!(out, "u={} t={:.6e} deviation={:.3e}", c.u, c.t, c.deviation)?;
            }
        }
    }
    out.flush()?;
    eprintln!(
        "{formula} {} max_deviation={max:.3e} tol={tol:e} points={} {}",
        args.variant,
        points.len(),
        if outcome == Outcome::Pass {
            "PASS"
        } else {
            "FAIL"
        }
    );
    Ok(outcome)
}

fn cmd_scan(args: &ScanArgs) -> anyhow::Result<Outcome> {
    let trunc = args.trunc.get()?;
    let grid = ScanGrid::new(args.grid.values()?, args.max_order, args.margin)?
        .with_strict_floor(args.strict_floor)?;
    let need_j = || -> anyhow::Result<ThetaIndex> {
        index(args.j.context("--j is required for this target")?)
    };
    let need_u = || args.u.context("--u is required for this target");
    let need_spec = |j: ThetaIndex| -> anyhow::Result<QuotientSpec> {
        let v = args.v.context("--v is required for this target")?;
        Ok(QuotientSpec::new(j, need_u()?, v)?)
    };

    let reports: Vec<SignScanReport> = match args.target {
        ScanTarget::Lemma1 => {
            let f = match args.function.context("--fn is required for lemma1")? {
                Lemma1Kind::Coth => Lemma1Fn::Coth,
                Lemma1Kind::Csch => Lemma1Fn::Csch,
                Lemma1Kind::CoshShift => Lemma1Fn::cosh_shift(args.a, args.b)?,
            };
            monotonicity::lemma1_scans(f, &grid).into()
        }
        ScanTarget::Theorem3 => vec![monotonicity::theorem3_scan(
            need_j()?,
            need_u()?,
            &grid,
            trunc,
        )?],
        ScanTarget::Theorem4 => vec![monotonicity::theorem4_scan(
            need_j()?,
            need_u()?,
            &grid,
            trunc,
        )?],
        ScanTarget::Theorem5 => vec![monotonicity::theorem5_scan(
            &need_spec(need_j()?)?,
            &grid,
            trunc,
        )],
        ScanTarget::Corollaries => {
            monotonicity::corollary_scans(&need_spec(need_j()?)?, &grid, trunc)
        }
        ScanTarget::S4Raw => {
            return write_raw_table(args, &need_spec(ThetaIndex::Four)?, &grid, trunc)
        }
    };

    let mut out = args.out.sink()?;
    for report in &reports {
        match args.out.format {
            Format::Csv => report.write_csv(&mut out)?,
            Format::Plain => writeln!(out, "{}", report.summary_line())?,
        }
    }
    out.flush()?;
    if args.out.format == Format::Csv {
        for report in &reports {
            eprintln!("{}", report.summary_line());
        }
    }
    Ok(if reports.iter().all(SignScanReport::passed) {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

/// The raw table makes no claim, so it always passes.
fn write_raw_table(
    args: &ScanArgs,
    spec: &QuotientSpec,
    grid: &ScanGrid,
    trunc: SeriesTruncation,
) -> anyhow::Result<Outcome> {
    let rows = monotonicity::raw_sign_table(spec, grid, trunc)?;
    let mut out = args.out.sink()?;
    match args.out.format {
        Format::Csv => {
            writeln!(
                out,
                "# theta-mono v1, target=s4-raw-{}, grid={}",
                spec.id(),
                grid.describe()
            )?;
            writeln!(out, "t,d1,d2,d3")?;
            for r in rows {
                writeln!(
                    out,
                    "{:.15e},{:.15e},{:.15e},{:.15e}",
                    r.t, r.d1, r.d2, r.d3
                )?;
            }
        }
        Format::Plain => {
            let sign = |x: f64| {
                if x > 0.0 {
                    '+'
                } else if x < 0.0 {
                    '-'
                } else {
                    '0'
                }
            };
            for r in rows {
                writeln!(
                    out,
                    "t={:.6e} d1{} d2{} d3{}",
                    r.t,
                    sign(r.d1),
                    sign(r.d2),
                    sign(r.d3)
                )?;
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Pass)
}

/// Passes when every corrected form meets its tolerance; printed forms are
/// listed for the record.
fn cmd_ledger(args: &LedgerArgs) -> anyhow::Result<Outcome> {
    let rows = calibration::calibration_ledger(args.trunc.get()?)?;
    let sink = OutputArgs {
        output: args.output.clone(),
        format: Format::Csv,
    };
    let mut out = sink.sink()?;
    calibration::write_ledger_csv(&rows, &mut out)?;
    out.flush()?;
    let ok = rows
        .iter()
        .filter(|r| r.variant == Variant::Corrected)
        .all(|r| r.passes());
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}
