//! Command-line front end: number tables, identity verification, certified
//! series evaluation, Poisson moment experiments, and the enumeration
//! oracle, with stable JSON/CSV output for scripting.
//!
//! Exit codes: 0 on success or all-pass, 1 on an identity failure or
//! enclosure violation, 2 on usage errors (including out-of-cap parameters).
//! Data goes to stdout, diagnostics to stderr.

use std::fmt::Display;
use std::io;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use lahbell::dobinski::dobinski_sum;
use lahbell::poisson::{mc_moment, PoissonSpec, SAMPLER_ALPHA_CAP};
use lahbell::tables::{
    bell_numbers, lah_bell_numbers, lah_triangle, r_bell_numbers, r_lah_bell_numbers,
    r_lah_triangle, stirling1_triangle, stirling2_shifted_triangle, stirling2_triangle,
};
use lahbell::verify::{all_passed, reports_to_json, run_suite, SuiteId, Verdict, VerifyConfig};
use lahbell::{oracle, BigInt, BigRational, NumberSequence, NumberTriangle};

const TABLE_N_CAP: usize = 300;
const TABLE_R_CAP: usize = 100;
const TABLE_X_CAP: i64 = 1000;
const SERIES_N_CAP: usize = 64;
const SERIES_R_CAP: usize = 16;
const POISSON_N_CAP: usize = 32;
const SAMPLES_CAP: u64 = 100_000_000;
const DIGITS_CAP: usize = 200;

#[derive(Parser)]
#[command(
    name = "lahbell",
    about = "Exact ordered-block (Lah) number tables, identity verification, certified series enclosures, and Poisson moment experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a number triangle or sequence
    Table {
        /// Which table to build
        #[arg(long, value_enum)]
        family: Family,
        /// Largest row index n
        #[arg(long)]
        n_max: usize,
        /// Number of distinguished elements (rlah, rbell, rlahbell)
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Integer shift (s2shift only)
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run identity suites and print a JSON report array
    Verify {
        /// Suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// Override the per-suite n range
        #[arg(long)]
        n_max: Option<usize>,
        /// Override the per-suite r range
        #[arg(long)]
        r_max: Option<usize>,
        /// Override the series truncation order
        #[arg(long)]
        order: Option<usize>,
        /// Relative tolerance for series enclosures (rational, e.g. 1e-12)
        #[arg(long)]
        tol: Option<String>,
        /// Monte-Carlo sample count
        #[arg(long)]
        samples: Option<u64>,
        /// Monte-Carlo master seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Evaluate the factorial-weighted series with a certified enclosure
    Dobinski {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Positive rational evaluation point
        #[arg(long, default_value = "1")]
        x: String,
        /// Positive rational stopping tolerance
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, default_value_t = 30)]
        decimal_digits: usize,
    },
    /// Estimate rising-factorial moments of a shifted Poisson variable
    Poisson {
        /// Positive rational rate parameter (at most 30)
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        decimal_digits: usize,
    },
    /// Brute-force ordered-block partition counts (n + r <= 10)
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Lah,
    Rlah,
    S1,
    S2,
    S2shift,
    Bell,
    Rbell,
    Lahbell,
    Rlahbell,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

/// A rejected invocation; printed to stderr and mapped to exit code 2.
struct UsageError(String);

impl UsageError {
    fn flag(flag: &str, detail: impl Display) -> Self {
        UsageError(format!("invalid value for {flag}: {detail}"))
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(command: Cmd) -> Result<i32, UsageError> {
    match command {
        Cmd::Table {
            family,
            n_max,
            r,
            x,
            format,
        } => cmd_table(family, n_max, r, x, format),
        Cmd::Verify {
            suite,
            n_max,
            r_max,
            order,
            tol,
            samples,
            seed,
        } => cmd_verify(suite, n_max, r_max, order, tol, samples, seed),
        Cmd::Dobinski {
            n,
            r,
            x,
            tol,
            decimal_digits,
        } => cmd_dobinski(n, r, &x, &tol, decimal_digits),
        Cmd::Poisson {
            alpha,
            n,
            r,
            samples,
            seed,
            decimal_digits,
        } => cmd_poisson(&alpha, n, r, samples, seed, decimal_digits),
        Cmd::Oracle { n, r } => cmd_oracle(n, r),
    }
}

/// Parse an exact rational from "p/q", integer, decimal, or scientific
/// notation ("1e-12", "2.5e3").
fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty value".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator '{num}'"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator '{den}'"))?;
        if d.is_zero() {
            return Err("zero denominator".to_string());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i32>()
                .map_err(|_| format!("bad exponent '{e}'"))?,
        ),
        None => (s, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid number '{s}'"));
    }
    let mut numer: BigInt = digits.parse().expect("digit string parses");
    if negative {
        numer = -numer;
    }
    let mut value = BigRational::from_integer(numer);
    let shift = exponent - frac_part.len() as i32;
    let scale = BigRational::from_integer(BigInt::from(10u32).pow(shift.unsigned_abs()));
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(value)
}

fn check_cap<T: PartialOrd + Display>(flag: &str, value: T, cap: T) -> Result<(), UsageError> {
    if value > cap {
        return Err(UsageError::flag(
            flag,
            format!("{value} exceeds the cap of {cap}"),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct TriangleEntry {
    n: usize,
    k: usize,
    value: String,
}

#[derive(Serialize)]
struct TriangleOut {
    kind: &'static str,
    family: &'static str,
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<i64>,
    n_max: usize,
    entries: Vec<TriangleEntry>,
}

#[derive(Serialize)]
struct SequenceOut {
    kind: &'static str,
    family: &'static str,
    r: usize,
    n_max: usize,
    values: Vec<String>,
}

enum Table {
    Triangle(&'static str, Option<i64>, NumberTriangle),
    Sequence(&'static str, NumberSequence),
}

fn cmd_table(
    family: Family,
    n_max: usize,
    r: usize,
    x: i64,
    format: Format,
) -> Result<i32, UsageError> {
    check_cap("--n-max", n_max, TABLE_N_CAP)?;
    check_cap("--r", r, TABLE_R_CAP)?;
    if x.unsigned_abs() > TABLE_X_CAP as u64 {
        return Err(UsageError::flag(
            "--x",
            format!("{x} exceeds the cap of {TABLE_X_CAP}"),
        ));
    }
    let table = match family {
        Family::Lah => Table::Triangle("lah", None, lah_triangle(n_max)),
        Family::Rlah => Table::Triangle("rlah", None, r_lah_triangle(n_max, r)),
        Family::S1 => Table::Triangle("s1", None, stirling1_triangle(n_max)),
        Family::S2 => Table::Triangle("s2", None, stirling2_triangle(n_max)),
        Family::S2shift => {
            Table::Triangle("s2shift", Some(x), stirling2_shifted_triangle(n_max, x))
        }
        Family::Bell => Table::Sequence("bell", bell_numbers(n_max)),
        Family::Rbell => Table::Sequence("rbell", r_bell_numbers(n_max, r)),
        Family::Lahbell => Table::Sequence("lahbell", lah_bell_numbers(n_max)),
        Family::Rlahbell => Table::Sequence("rlahbell", r_lah_bell_numbers(n_max, r)),
    };
    match (&table, format) {
        (Table::Triangle(name, shift, tri), Format::Json) => {
            let out = TriangleOut {
                kind: "triangle",
                family: name,
                r: tri.param_r(),
                x: *shift,
                n_max: tri.n_max(),
                entries: (0..=tri.n_max())
                    .flat_map(|n| (0..=n).map(move |k| (n, k)))
                    .map(|(n, k)| TriangleEntry {
                        n,
                        k,
                        value: tri.entry(n, k).to_string(),
                    })
                    .collect(),
            };
            print_json(&out);
        }
        (Table::Triangle(_, _, tri), Format::Csv) => {
            let mut writer = csv::Writer::from_writer(io::stdout());
            writer
                .write_record(["n", "k", "value"])
                .and_then(|()| {
                    for n in 0..=tri.n_max() {
                        for k in 0..=n {
                            writer.write_record([
                                n.to_string(),
                                k.to_string(),
                                tri.entry(n, k).to_string(),
                            ])?;
                        }
                    }
                    writer.flush().map_err(csv::Error::from)
                })
                .expect("stdout write");
        }
        (Table::Triangle(_, _, tri), Format::Pretty) => {
            for n in 0..=tri.n_max() {
                let row: Vec<String> = tri.row(n).iter().map(BigInt::to_string).collect();
                println!("n={n}: {}", row.join(" "));
            }
        }
        (Table::Sequence(name, seq), Format::Json) => {
            let out = SequenceOut {
                kind: "sequence",
                family: name,
                r: seq.param_r(),
                n_max: seq.n_max(),
                values: seq.values().iter().map(BigInt::to_string).collect(),
            };
            print_json(&out);
        }
        (Table::Sequence(_, seq), Format::Csv) => {
            let mut writer = csv::Writer::from_writer(io::stdout());
            writer
                .write_record(["n", "value"])
                .and_then(|()| {
                    for (n, value) in seq.values().iter().enumerate() {
                        writer.write_record([n.to_string(), value.to_string()])?;
                    }
                    writer.flush().map_err(csv::Error::from)
                })
                .expect("stdout write");
        }
        (Table::Sequence(_, seq), Format::Pretty) => {
            for (n, value) in seq.values().iter().enumerate() {
                println!("n={n}: {value}");
            }
        }
    }
    Ok(0)
}

fn verdict_label(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::ExpectedFail => "expected-fail",
    }
}

fn cmd_verify(
    suite: String,
    n_max: Option<usize>,
    r_max: Option<usize>,
    order: Option<usize>,
    tol: Option<String>,
    samples: Option<u64>,
    seed: u64,
) -> Result<i32, UsageError> {
    let defaults = VerifyConfig::default();
    let tol = match tol {
        Some(raw) => {
            let value = parse_rational(&raw).map_err(|e| UsageError::flag("--tol", e))?;
            if value <= BigRational::zero() {
                return Err(UsageError::flag("--tol", "must be positive"));
            }
            value
        }
        None => defaults.tol.clone(),
    };
    let cfg = VerifyConfig {
        n_max,
        r_max,
        order,
        oracle_size: None,
        tol,
        samples: samples.unwrap_or(defaults.samples),
        seed,
    };
    let ids: Vec<SuiteId> = if suite == "all" {
        SuiteId::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|e| UsageError::flag("--suite", e))?]
    };
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let report = run_suite(id, &cfg).map_err(|e| UsageError(e.to_string()))?;
        eprintln!(
            "suite {}: {} ({} cases, {:.3}s)",
            report.suite,
            verdict_label(report.verdict),
            report.cases,
            report.elapsed.as_secs_f64()
        );
        reports.push(report);
    }
    println!("{}", reports_to_json(&reports));
    Ok(if all_passed(&reports) { 0 } else { 1 })
}

fn cmd_dobinski(
    n: usize,
    r: usize,
    x: &str,
    tol: &str,
    decimal_digits: usize,
) -> Result<i32, UsageError> {
    check_cap("--n", n, SERIES_N_CAP)?;
    check_cap("--r", r, SERIES_R_CAP)?;
    check_cap("--decimal-digits", decimal_digits, DIGITS_CAP)?;
    let x = parse_rational(x).map_err(|e| UsageError::flag("--x", e))?;
    if x <= BigRational::zero() {
        return Err(UsageError::flag("--x", "must be positive"));
    }
    let tol = parse_rational(tol).map_err(|e| UsageError::flag("--tol", e))?;
    if tol <= BigRational::zero() {
        return Err(UsageError::flag("--tol", "must be positive"));
    }
    let result = dobinski_sum(n, r, &x, &tol).map_err(|e| UsageError(e.to_string()))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&result.to_json(decimal_digits)).expect("json")
    );
    if result.contains_exact() {
        Ok(0)
    } else {
        eprintln!("enclosure violation: exact value outside the certified interval");
        Ok(1)
    }
}

fn cmd_poisson(
    alpha: &str,
    n: usize,
    r: usize,
    samples: u64,
    seed: u64,
    decimal_digits: usize,
) -> Result<i32, UsageError> {
    check_cap("--n", n, POISSON_N_CAP)?;
    check_cap("--r", r, SERIES_R_CAP)?;
    check_cap("--samples", samples, SAMPLES_CAP)?;
    check_cap("--decimal-digits", decimal_digits, DIGITS_CAP)?;
    if samples == 0 {
        return Err(UsageError::flag("--samples", "must be at least 1"));
    }
    let alpha = parse_rational(alpha).map_err(|e| UsageError::flag("--alpha", e))?;
    if alpha <= BigRational::zero() {
        return Err(UsageError::flag("--alpha", "must be positive"));
    }
    if alpha > BigRational::from_float(SAMPLER_ALPHA_CAP).expect("finite cap") {
        return Err(UsageError::flag(
            "--alpha",
            format!("sampler accepts alpha <= {SAMPLER_ALPHA_CAP}"),
        ));
    }
    let spec = PoissonSpec::new(alpha, seed, samples).map_err(|e| UsageError(e.to_string()))?;
    let report = mc_moment(n, r, &spec).map_err(|e| UsageError(e.to_string()))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report.to_json(decimal_digits)).expect("json")
    );
    let enclosed = report.series.contains(&report.exact_value);
    let within_gate = report.z_score.abs() <= 5.0;
    if !enclosed {
        eprintln!("enclosure violation: exact value outside the certified interval");
    }
    if !within_gate {
        eprintln!(
            "statistical gate violation: |z| = {} > 5",
            report.z_score.abs()
        );
    }
    Ok(if enclosed && within_gate { 0 } else { 1 })
}

#[derive(Serialize)]
struct OracleCount {
    k: usize,
    count: String,
}

#[derive(Serialize)]
struct OracleOut {
    n: usize,
    r: usize,
    total: String,
    counts: Vec<OracleCount>,
}

fn cmd_oracle(n: usize, r: usize) -> Result<i32, UsageError> {
    if n + r > oracle::ORACLE_CAP {
        return Err(UsageError::flag(
            "--n/--r",
            format!(
                "n + r = {} exceeds the oracle cap of {}",
                n + r,
                oracle::ORACLE_CAP
            ),
        ));
    }
    let counts = oracle::enumerate(n, r).map_err(|e| UsageError(e.to_string()))?;
    let out = OracleOut {
        n,
        r,
        total: counts.total().to_string(),
        counts: counts
            .counts_by_k()
            .iter()
            .map(|(&k, count)| OracleCount {
                k,
                count: count.to_string(),
            })
            .collect(),
    };
    print_json(&out);
    Ok(0)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}
