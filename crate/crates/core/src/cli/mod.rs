//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the captured output, so the binary only has to print it.
//!
//! Exit codes: 0 success, 2 refuted or not converged, 3 unknown, 4 usage
//! error, 5 domain or evaluation error.

mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use render::{emit_certificate, emit_trace};

use crate::certify::{
    check_lemma_conditions, check_theorem, isolate_fixed_point, isolate_root, Side, Verdict,
    DEFAULT_BUDGET,
};
use crate::error::Error;
use crate::expr::{format_number, parse, Interval};
use crate::solve::{certified_solve, mean_iterate_solve, newton_solve, IterationTrace, SolverConfig, Termination};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_USAGE: i32 = 4;
pub const EXIT_DOMAIN: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Newton,
    Mean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Parser)]
#[command(name = "newton-certify", version, about = "Certified Newton-Raphson root finding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Function of `x`, e.g. "x^3-2*x+2" or "if(x<=0, x^2+x, x^2-x)"
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long, value_enum, default_value = "table")]
    out: OutputFormat,
}

#[derive(Debug, Args)]
struct Tolerances {
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    xtol: f64,
    #[arg(long, default_value_t = 1e-13)]
    ftol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symbolic derivative
    Diff {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Value and derivatives at a point, or an enclosure over an interval
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "interval")]
        x: Option<f64>,
        /// Interval `a,b`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair, conflicts_with = "x")]
        interval: Option<(f64, f64)>,
    },
    /// Enclose a root by bisection
    Isolate {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        bracket: (f64, f64),
        #[arg(long, default_value_t = crate::certify::DEFAULT_ROOT_TOL)]
        root_tol: f64,
    },
    /// Check the convergence conditions on one side of the root in the bracket
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        bracket: (f64, f64),
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        /// Treat the expression as a map g and check the mean-iteration conditions
        #[arg(long)]
        lemma: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = crate::certify::DEFAULT_ROOT_TOL)]
        root_tol: f64,
    },
    /// Plain Newton or mean iteration from a start point
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, value_enum, default_value = "newton")]
        method: MethodArg,
        /// Stop with LeftDomain when an iterate leaves `a,b`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        domain: Option<(f64, f64)>,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Certify a side of the root, then run Newton from its outer endpoint
    CertifiedSolve {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        bracket: (f64, f64),
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = crate::certify::DEFAULT_ROOT_TOL)]
        root_tol: f64,
        /// Iterate even without a certificate; output is tagged advisory
        #[arg(long)]
        advisory: bool,
        #[command(flatten)]
        tol: Tolerances,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    Ok((num(a)?, num(b)?))
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn failure(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// Exit code for a library error.
pub fn error_code(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. }
        | Error::MultipleVariables { .. }
        | Error::NonConstantExponent { .. }
        | Error::InvalidInterval { .. }
        | Error::Precondition(_) => EXIT_USAGE,
        Error::Domain(_) | Error::DerivativeZero { .. } | Error::NoSignChange { .. } => EXIT_DOMAIN,
    }
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Certified => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

pub fn termination_code(t: &Termination) -> i32 {
    match t {
        Termination::Converged => EXIT_OK,
        Termination::DomainError(_) => EXIT_DOMAIN,
        _ => EXIT_REFUTED,
    }
}

/// Parses `argv` (program name first) and executes the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::failure(EXIT_USAGE, text)
            } else {
                Outcome::ok(EXIT_OK, text)
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(err) => Outcome::failure(error_code(&err), format!("error: {err}\n")),
    }
}

fn interval((lo, hi): (f64, f64)) -> crate::Result<Interval> {
    Interval::new(lo, hi)
}

fn config(tol: &Tolerances) -> SolverConfig {
    SolverConfig { max_iter: tol.max_iter, xtol: tol.xtol, ftol: tol.ftol, ..Default::default() }
}

fn json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn execute(command: Command) -> crate::Result<Outcome> {
    match command {
        Command::Diff { common, order } => {
            let e = parse(&common.expr)?;
            let mut d = e.simplified();
            for _ in 0..order {
                d = d.differentiate();
            }
            let text = d.to_string();
            let out = match common.out {
                OutputFormat::Json => {
                    json(&serde_json::json!({"expr": e.to_string(), "order": order, "derivative": text}))
                }
                OutputFormat::Table | OutputFormat::Csv => format!("{text}\n"),
            };
            Ok(Outcome::ok(EXIT_OK, out))
        }
        Command::Eval { common, x, interval: iv } => {
            let e = parse(&common.expr)?;
            if let Some(pair) = iv {
                let iv = interval(pair)?;
                let enc = e.eval_interval(iv)?;
                return Ok(Outcome::ok(EXIT_OK, render::enclosure(iv, enc, common.out)));
            }
            let x = x.expect("clap requires x or interval");
            let jet = e.eval_jet2(x)?;
            Ok(Outcome::ok(EXIT_OK, render::jet(x, &jet, common.out)))
        }
        Command::Isolate { common, bracket, root_tol } => {
            let e = parse(&common.expr)?;
            let root = isolate_root(&e, interval(bracket)?, root_tol)?;
            Ok(Outcome::ok(EXIT_OK, render::root(&root, common.out)))
        }
        Command::Certify { common, bracket, side, lemma, budget, root_tol } => {
            let e = parse(&common.expr)?;
            let search = interval(bracket)?;
            let (side, outer) = match side {
                SideArg::Left => (Side::Left, search.lo()),
                SideArg::Right => (Side::Right, search.hi()),
            };
            let cert = if lemma {
                let fp = isolate_fixed_point(&e, search, root_tol)?;
                check_lemma_conditions(&e, side, outer, fp, budget)?
            } else {
                let root = isolate_root(&e, search, root_tol)?;
                check_theorem(&e, side, outer, root, budget)?
            };
            Ok(Outcome::ok(verdict_code(cert.verdict), emit_certificate(&cert, common.out)))
        }
        Command::Solve { common, x0, method, domain, tol } => {
            let e = parse(&common.expr)?;
            let domain = domain.map(interval).transpose()?;
            let cfg = config(&tol);
            let trace: IterationTrace = match method {
                MethodArg::Newton => newton_solve(&e, x0, &cfg, domain)?,
                MethodArg::Mean => mean_iterate_solve(&e, x0, &cfg, domain)?,
            };
            Ok(Outcome::ok(termination_code(&trace.termination), emit_trace(&trace, common.out)))
        }
        Command::CertifiedSolve { common, bracket, budget, root_tol, advisory, tol } => {
            let e = parse(&common.expr)?;
            let cfg = SolverConfig { root_tol, advisory, ..config(&tol) };
            let run = certified_solve(&e, interval(bracket)?, &cfg, budget)?;
            let code = match run.certificate.verdict {
                Verdict::Certified => termination_code(&run.trace.termination),
                other => verdict_code(other),
            };
            let out = match common.out {
                OutputFormat::Json => json(&run),
                OutputFormat::Csv => emit_trace(&run.trace, OutputFormat::Csv),
                OutputFormat::Table => {
                    let mut s = emit_certificate(&run.certificate, OutputFormat::Table);
                    if run.advisory {
                        s.push_str("advisory run: convergence is not guaranteed\n");
                    }
                    s.push('\n');
                    s.push_str(&emit_trace(&run.trace, OutputFormat::Table));
                    s
                }
            };
            Ok(Outcome::ok(code, out))
        }
    }
}

pub(crate) fn num(v: f64) -> String {
    if v.is_finite() {
        format_number(v)
    } else {
        String::new()
    }
}

