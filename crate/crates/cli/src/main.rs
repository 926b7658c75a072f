//! `hhf`: evaluate a single inequality or run seeded verification suites.
//!
//! Exit status is 0 when every evaluated bound holds, 1 when one fails and 2
//! for usage errors, unparseable functions and violated preconditions.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hhf_core::expr::parse;
use hhf_core::inequalities::{Param, Params};
use hhf_core::par::Execution;
use hhf_core::suite::{
    precheck, run_eval, run_suite, write_csv, write_jsonl, SuiteConfig, SuiteKind, SuiteRecord, SuiteSummary,
    INEQUALITIES,
};
use hhf_core::Error;

#[derive(Parser)]
#[command(name = "hhf", version, about = "Numerical checks of Hermite-Hadamard type inequalities for GA-convex functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one identity or bound and print its report.
    Eval(EvalArgs),
    /// Run seeded fuzz suites and write one report record per case.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write the report to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    /// Inequality to evaluate.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(INEQUALITIES))]
    ineq: String,
    /// The function f, e.g. "x^2 + ln(x)".
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Explicit derivative of f; by default it is derived symbolically.
    #[arg(long, allow_hyphen_values = true)]
    fprime: Option<String>,
    /// Weight function g.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Auxiliary function h.
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Fractional order.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Order of s-GA-convexity, in (0, 1].
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Constant variant: exact or relaxed (cor1), eq217 or eq218 (cor2).
    #[arg(long)]
    variant: Option<String>,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Skip the sampled check of the GA-convexity hypothesis.
    #[arg(long)]
    no_precheck: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SuiteArgs {
    /// Suite to run: identity, theorem5, corollary1, corollary2, theorem6,
    /// corollary3, corollary4, hh_ga, zhang, constants or all.
    #[arg(value_name = "SUITE")]
    suite: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Range of the left endpoint a.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    a_range: Option<Vec<f64>>,
    /// Range of ln b - ln a.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    logwidth_range: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    alpha_range: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    q_range: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    s_range: Option<Vec<f64>>,
    /// Run cases on the current thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("io error: {e}"))
    }
}

/// Parses a function flag, rendering a caret under the offending byte on
/// failure.
fn check_function(flag: &str, text: &str) -> Result<(), Failure> {
    parse(text).map(|_| ()).map_err(|e| {
        let caret = " ".repeat(e.offset().min(text.len()));
        Failure::Usage(format!("cannot parse --{flag}: {e}\n  {text}\n  {caret}^"))
    })
}

fn emit(output: &Output, records: &[SuiteRecord]) -> Result<SuiteSummary, Failure> {
    let write = |w: &mut dyn Write| -> Result<SuiteSummary, Failure> {
        Ok(match output.format {
            Format::Jsonl => write_jsonl(w, records)?,
            Format::Csv => write_csv(w, records)?,
        })
    };
    match &output.report {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write(&mut w)
        }
        None => write(&mut io::stdout().lock()),
    }
}

fn eval(args: EvalArgs) -> Result<bool, Failure> {
    let mut p = Params::new();
    for (flag, text) in [("f", &args.f), ("fprime", &args.fprime), ("g", &args.g), ("h", &args.h)] {
        if let Some(t) = text {
            check_function(flag, t)?;
            p.insert(flag.into(), Param::Text(t.clone()));
        }
    }
    for (key, v) in [("a", Some(args.a)), ("b", Some(args.b)), ("alpha", args.alpha), ("q", args.q), ("s", args.s),
        ("p", args.p), ("tol", Some(args.tol))]
    {
        if let Some(v) = v {
            p.insert(key.into(), Param::Num(v));
        }
    }
    if let Some(v) = &args.variant {
        p.insert("variant".into(), Param::Text(v.clone()));
    }
    if !args.no_precheck {
        precheck(&args.ineq, &p)?;
    }
    let report = run_eval(&args.ineq, &p)?;
    let pass = report.pass;
    emit(&args.output, &[SuiteRecord { report, seed: 0, case_index: 0 }])?;
    Ok(pass)
}

fn range(v: Option<Vec<f64>>, default: (f64, f64)) -> (f64, f64) {
    v.map_or(default, |r| (r[0], r[1]))
}

fn suite(args: SuiteArgs) -> Result<bool, Failure> {
    let kind: SuiteKind = args.suite.parse()?;
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        suite: kind,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        a_range: range(args.a_range, d.a_range),
        logwidth_range: args.logwidth_range.map(|r| (r[0], r[1])),
        alpha_range: range(args.alpha_range, d.alpha_range),
        q_range: range(args.q_range, d.q_range),
        s_range: range(args.s_range, d.s_range),
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let records = run_suite(&cfg)?;
    let s = emit(&args.output, &records)?;
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.3e}"));
    eprintln!(
        "{}: {} cases, {} passed, {} failed ({} errors); min slack {}, max residual {}, max constants delta {}",
        kind,
        s.cases,
        s.passed,
        s.failed,
        s.errors,
        opt(s.min_slack),
        opt(s.max_residual),
        opt(s.max_constants_delta)
    );
    Ok(s.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Suite(a) => suite(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
