//! `expint` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
//! 3 numerical failure (including failed verification checks).

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use expint::evaluator::{dipole_power, EvalResult, Evaluator, Function, Method, LI_POLE_GUARD};
use expint::primes::{compare_table, sieve, ComparisonRow};
use expint::verify::{self, Suite};
use expint::Exec;

/// Largest number of rows a single table may request.
const MAX_TABLE_ROWS: f64 = 1e7;

#[derive(Parser, Debug)]
#[command(
    name = "expint",
    version,
    about = "Exponential, sine/cosine and logarithmic integrals"
)]
struct Cli {
    /// Relative tolerance forwarded to the series, continued-fraction and quadrature kernels.
    #[arg(long, global = true, default_value_t = 1e-17, value_parser = parse_positive)]
    rel_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at one point.
    #[command(allow_negative_numbers = true)]
    Eval {
        /// Ei, E1, En:<n>, Ein, Si, Ci, li, li1 or Li
        function: Function,
        #[arg(value_parser = parse_finite)]
        x: f64,
        /// Force a route: series, cf, asymptotic or quadrature.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Tabulate a function on a uniform grid as CSV (x,value,abs_err,method).
    #[command(allow_negative_numbers = true)]
    Table {
        function: Function,
        #[arg(value_parser = parse_finite)]
        a: f64,
        #[arg(value_parser = parse_finite)]
        b: f64,
        #[arg(value_parser = parse_positive)]
        step: f64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare pi(x) against Li(x) and the Schoenfeld bound as CSV.
    Primes {
        /// Sieve limit (at most 10^8).
        #[arg(long)]
        limit: u64,
        /// Individual abscissas; repeatable.
        #[arg(long)]
        at: Vec<u64>,
        /// Abscissas as start:end:step, inclusive.
        #[arg(long, value_parser = parse_range)]
        range: Option<IntRange>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report every check.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Worked applications.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Power radiated by a half-wave dipole antenna.
    Dipole {
        /// Current amplitude I0.
        #[arg(long, default_value_t = 1.0, value_parser = parse_finite)]
        current: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct IntRange {
    start: u64,
    end: u64,
    step: u64,
}

/// A usage error detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Some verification checks failed; the report has already been printed.
#[derive(Debug)]
struct ChecksFailed(usize);

impl fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for ChecksFailed {}

fn parse_finite(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    let v = parse_finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("'{s}' must be positive"))
    }
}

fn parse_range(s: &str) -> std::result::Result<IntRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, end, step] = parts.as_slice() else {
        return Err(format!("'{s}' is not start:end:step"));
    };
    let num = |p: &str| {
        p.parse::<u64>()
            .map_err(|_| format!("'{p}' is not a non-negative integer"))
    };
    let r = IntRange {
        start: num(start)?,
        end: num(end)?,
        step: num(step)?,
    };
    if r.step == 0 || r.start > r.end {
        return Err(format!("'{s}' needs start <= end and step >= 1"));
    }
    Ok(r)
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse()
}

/// Round-trip-safe float formatting (17 significant digits).
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_eval(
    ev: &Evaluator,
    f: Function,
    x: f64,
    method: Option<Method>,
    format: Format,
) -> Result<()> {
    let r = match method {
        Some(m) => ev.eval_with(f, x, m)?,
        None => ev.eval(f, x)?,
    };
    match format {
        Format::Plain => println!(
            "{f}({x}) = {}  abs_err={:.3e}  method={}  terms={}",
            fmt_float(r.value),
            r.abs_err_estimate,
            r.method,
            r.terms_or_subdivisions
        ),
        Format::Json => println!(
            "{{\"value\":{},\"abs_err\":{},\"method\":\"{}\",\"terms\":{}}}",
            fmt_float(r.value),
            fmt_float(r.abs_err_estimate),
            r.method,
            r.terms_or_subdivisions
        ),
    }
    Ok(())
}

/// Grid points `a + i·step` up to `b`, snapping points that land within
/// rounding of a pole onto the pole so it is annotated rather than skipped.
fn table_grid(f: Function, a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    if a >= b {
        return Err(Usage(format!("table needs a < b (got a = {a}, b = {b})")).into());
    }
    let span = (b - a) / step;
    if span > MAX_TABLE_ROWS {
        return Err(Usage(format!(
            "table would have more than {MAX_TABLE_ROWS:e} rows"
        ))
        .into());
    }
    let n = (span + 1e-9).floor() as usize;
    // keep twelve significant digits of the widest endpoint so 0.1-style
    // steps print as written; the printed x is exactly the evaluated x
    let magnitude = a.abs().max(b.abs()).max(f64::MIN_POSITIVE).log10().floor() as i32;
    let decimals = (12 - magnitude).clamp(0, 17) as usize;
    Ok((0..=n)
        .map(|i| {
            let raw = a + step * i as f64;
            let x: f64 = format!("{raw:.decimals$}").parse().unwrap_or(raw);
            let x = if x == 0.0 { 0.0 } else { x };
            f.poles()
                .iter()
                .copied()
                .find(|p| (x - p).abs() <= 1e-9 * step)
                .unwrap_or(x)
        })
        .collect())
}

fn is_singular(f: Function, x: f64) -> bool {
    f.poles()
        .iter()
        .any(|&p| (x - p).abs() <= LI_POLE_GUARD * p.abs().max(1.0))
}

fn cmd_table(
    ev: &Evaluator,
    f: Function,
    a: f64,
    b: f64,
    step: f64,
    out: Option<&PathBuf>,
) -> Result<()> {
    let xs = table_grid(f, a, b, step)?;
    let results = ev.eval_many(f, &xs, Exec::default());
    let mut w = output(out)?;
    writeln!(w, "x,value,abs_err,method")?;
    for (&x, r) in xs.iter().zip(results) {
        match r {
            Ok(EvalResult {
                value,
                abs_err_estimate,
                method,
                ..
            }) => writeln!(
                w,
                "{x},{},{},{method}",
                fmt_float(value),
                fmt_float(abs_err_estimate)
            )?,
            Err(e) if e.is_domain() => {
                let note = if is_singular(f, x) {
                    "singular"
                } else {
                    "domain"
                };
                writeln!(w, "{x},,,{note}")?;
            }
            Err(e) => return Err(anyhow::Error::new(e).context(format!("{f} at x = {x}"))),
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_primes(
    limit: u64,
    at: &[u64],
    range: Option<IntRange>,
    out: Option<&PathBuf>,
) -> Result<()> {
    let table = sieve(limit)?;
    let mut xs: Vec<u64> = at.to_vec();
    if let Some(r) = range {
        xs.extend((r.start..=r.end).step_by(r.step as usize));
    }
    if xs.is_empty() {
        xs.push(limit);
    }
    let rows = compare_table(&table, &xs)?;
    let mut w = output(out)?;
    writeln!(w, "{}", ComparisonRow::CSV_HEADER)?;
    for row in &rows {
        writeln!(w, "{}", row.to_csv())?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(suite: Suite) -> Result<()> {
    let checks = verify::run(suite, Exec::default());
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!(
        "{} of {} checks passed",
        checks.len() - failed,
        checks.len()
    );
    if failed > 0 {
        return Err(ChecksFailed(failed).into());
    }
    Ok(())
}

fn cmd_dipole(current: f64) -> Result<()> {
    let d = dipole_power(current)?;
    println!("Ci(2pi)                   = {:.10}", d.ci_2pi);
    println!("gamma + ln(2pi) - Ci(2pi) = {:.10}", d.bracket);
    println!(
        "P * c = I0^2/2 * bracket  = {:.10}   (I0 = {current})",
        d.power
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let ev = Evaluator::with_rel_tol(cli.rel_tol);
    match cli.command {
        Command::Eval {
            function,
            x,
            method,
            format,
        } => cmd_eval(&ev, function, x, method, format),
        Command::Table {
            function,
            a,
            b,
            step,
            out,
        } => cmd_table(&ev, function, a, b, step, out.as_ref()),
        Command::Primes {
            limit,
            at,
            range,
            out,
        } => cmd_primes(limit, &at, range, out.as_ref()),
        Command::Verify { suite } => cmd_verify(suite),
        Command::Demo {
            demo: Demo::Dipole { current },
        } => cmd_dipole(current),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    if err.downcast_ref::<ChecksFailed>().is_some() {
        return 3;
    }
    if let Some(e) = err.downcast_ref::<expint::Error>() {
        return if e.is_domain() { 2 } else { 3 };
    }
    if err.downcast_ref::<io::Error>().is_some() {
        return 1;
    }
    3
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(
            parse_range("2:100:3").unwrap(),
            IntRange {
                start: 2,
                end: 100,
                step: 3
            }
        );
        for bad in ["2:100", "2:100:0", "9:1:1", "a:b:c", "-1:5:1"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_is_clean_and_inclusive() {
        let si: Function = "Si".parse().unwrap();
        let xs = table_grid(si, 0.0, 1.0, 0.1).unwrap();
        assert_eq!(xs.len(), 11);
        assert_eq!(xs[3], 0.3);
        assert_eq!(xs[10], 1.0);
        assert!(table_grid(si, 0.0, 1e9, 1e-3).is_err());
    }

    #[test]
    fn grid_lands_on_poles() {
        let ei: Function = "Ei".parse().unwrap();
        let xs = table_grid(ei, -1.0, 1.0, 0.1).unwrap();
        assert!(xs.contains(&0.0));
        assert!(is_singular(ei, 0.0));
        assert!(!is_singular(ei, 0.1));
    }

    #[test]
    fn floats_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            2.2250738585072014e-308,
            1.7976931348623157e308,
        ] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }
}
