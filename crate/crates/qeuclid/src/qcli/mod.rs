//! Expression language, `verify` driver and the `qeuclid` command line.
//!
//! ```
//! use qeuclid::ncalg::Algebra;
//! use qeuclid::qcli::normalize;
//!
//! let alg = Algebra::default();
//! assert_eq!(normalize(&alg, "xiz*xiz").unwrap(), "h * xim*xip");
//! assert_eq!(normalize(&alg, "(q^2-1)/(q+1)").unwrap(), "q-1");
//! ```

mod app;
mod expr;
mod verify;

pub use app::{describe_expr_error, run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
pub use expr::{eval, evaluate, normalize, parse, BinOp, Expr, ExprError, Node, Symbol, Value, SYMBOLS};
pub use verify::{
    associativity_check, parse_alpha, run_suite, verify, Failure, Note, Report, Status, Suite, SuiteReport,
    VerifyOptions,
};

#[cfg(test)]
mod tests;
