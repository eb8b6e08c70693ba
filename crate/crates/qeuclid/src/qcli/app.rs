//! Command-line front end.

use super::expr::{evaluate, ExprError, Value, SYMBOLS};
use super::verify::{parse_alpha, verify, Suite, VerifyOptions};
use crate::climit::{classical_limit, limit_series, ClimitError};
use crate::geom::Selection;
use crate::ncalg::{Algebra, Config};
use crate::omega::{Calculus, SigmaChoice};
use crate::rmat::{matrix_json, matrix_text, Constants, MATRIX_NAMES};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;

/// Exit status of a successful command.
pub const EXIT_OK: i32 = 0;
/// Some requested check failed, or a limit diverges.
pub const EXIT_FAIL: i32 = 1;
/// Bad command line or unparsable expression.
pub const EXIT_USAGE: i32 = 2;

fn symbol_help() -> String {
    let mut s = String::from("Expression tokens:\n");
    for (tok, _, meaning) in SYMBOLS {
        s.push_str(&format!("  {tok:<8} {meaning}\n"));
    }
    s.push_str("Operators: + - * / and ^ with an integer exponent; integers are exact rationals.");
    s
}

#[derive(Debug, Parser)]
#[command(name = "qeuclid", version, about = "Exact checks of the frame geometry of quantum Euclidean 3-space")]
#[command(after_help = symbol_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run identity suites (all of them when none is named).
    Verify {
        #[arg(value_enum)]
        suites: Vec<Suite>,
        /// Restrict to one braid choice for the flip.
        #[arg(long, value_parser = parse_sigma)]
        sigma: Option<SigmaChoice>,
        /// Restrict to one calculus.
        #[arg(long, value_parser = parse_calculus)]
        calculus: Option<Calculus>,
        /// Fix the frame normalization to a scalar expression in q.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Rewrite x- x+ through r^2.
        #[arg(long, value_enum, default_value = "on")]
        radius_reduction: OnOff,
        /// Number of random triples in the associativity check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form of an expression.
    #[command(after_help = symbol_help())]
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "on")]
        radius_reduction: OnOff,
    },
    /// Print a constant matrix: rhat, rhatinv, ps, pa, pt or g.
    Matrix {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Commutative limit q -> 1 of an expression, or its expansion in t = sqrtq - 1.
    #[command(after_help = symbol_help())]
    Limit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Expand every coefficient to this order instead of evaluating the limit.
        #[arg(long)]
        order: Option<usize>,
    },
}

fn parse_sigma(s: &str) -> Result<SigmaChoice, String> {
    s.parse()
}

fn parse_calculus(s: &str) -> Result<Calculus, String> {
    s.parse()
}

fn config(rr: OnOff) -> Config {
    Config { radius_reduction: rr == OnOff::On, ..Config::default() }
}

/// Error text with the input and a caret under the offending byte.
pub fn describe_expr_error(text: &str, e: &ExprError) -> String {
    let col = text[..e.offset().min(text.len())].chars().count();
    format!("error: {e}\n  {text}\n  {}^", " ".repeat(col))
}

fn limit_text(v: &Value) -> Result<String, ClimitError> {
    let re = classical_limit(&v.re)?;
    let im = classical_limit(&v.im)?;
    Ok(match (re.is_zero(), im.is_zero()) {
        (_, true) => re.to_string(),
        (true, false) => format!("i * ({im})"),
        (false, false) => format!("{re} + i * ({im})"),
    })
}

fn series_text(v: &Value, order: usize) -> String {
    let mut out = String::new();
    for (prefix, part) in [("", &v.re), ("i * ", &v.im)] {
        for (m, s) in limit_series(part, order) {
            out.push_str(&format!("{prefix}{}: {s}\n", m.render()));
        }
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let ok = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            if ok {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Verify { suites, sigma, calculus, alpha, radius_reduction, samples, json } => {
            let alpha = match alpha.as_deref().map(parse_alpha).transpose() {
                Ok(a) => a.unwrap_or_default(),
                Err(msg) => {
                    let _ = writeln!(err, "error: --alpha: {msg}");
                    return EXIT_USAGE;
                }
            };
            let opts = VerifyOptions {
                suites,
                selection: Selection { sigma, calculus },
                alpha,
                config: config(radius_reduction),
                associativity_samples: samples,
                ..VerifyOptions::default()
            };
            let report = verify(&opts);
            let text = if json { report.to_json() + "\n" } else { report.to_text() };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Command::Normalize { expr, radius_reduction } => {
            let alg = Algebra::new(config(radius_reduction));
            match evaluate(&alg, &expr) {
                Ok(v) => {
                    let _ = writeln!(out, "{}", v.render());
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "{}", describe_expr_error(&expr, &e));
                    EXIT_USAGE
                }
            }
        }
        Command::Matrix { name, json } => match Constants::get().named(&name) {
            Some(m) => {
                let text = if json {
                    serde_json::to_string_pretty(&matrix_json(&name, &m)).expect("matrix serializes") + "\n"
                } else {
                    matrix_text(&m)
                };
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            }
            None => {
                let _ = writeln!(err, "error: unknown matrix `{name}` (expected one of {})", MATRIX_NAMES.join(", "));
                EXIT_USAGE
            }
        },
        Command::Limit { expr, order } => {
            let alg = Algebra::default();
            let v = match evaluate(&alg, &expr) {
                Ok(v) => v,
                Err(e) => {
                    let _ = writeln!(err, "{}", describe_expr_error(&expr, &e));
                    return EXIT_USAGE;
                }
            };
            if let Some(k) = order {
                let _ = out.write_all(series_text(&v, k).as_bytes());
                return EXIT_OK;
            }
            match limit_text(&v) {
                Ok(t) => {
                    let _ = writeln!(out, "{t}");
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    EXIT_FAIL
                }
            }
        }
    }
}
