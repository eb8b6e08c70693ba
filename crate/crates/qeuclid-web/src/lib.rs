//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes and returns plain strings; errors come back as a
//! thrown `Error` whose message includes the byte offset for parse errors.

use clap::ValueEnum;
use qeuclid::climit::{classical_limit, limit_series};
use qeuclid::ncalg::Algebra;
use qeuclid::qcli::{evaluate, run_suite, Suite, SuiteReport, Value, VerifyOptions};
use wasm_bindgen::prelude::*;

thread_local! {
    static ALG: Algebra = Algebra::default();
}

fn parse(expr: &str) -> Result<Value, String> {
    ALG.with(|a| evaluate(a, expr)).map_err(|e| e.to_string())
}

/// Normal form of an expression, e.g. `xiz*xiz` gives `h * xim*xip`.
pub fn normal_form(expr: &str) -> Result<String, String> {
    parse(expr).map(|v| v.render())
}

/// The `q -> 1` limit, or with `order > 0` the expansion of every
/// coefficient in `t = sqrtq - 1` up to `t^order`.
pub fn limit_text(expr: &str, order: u32) -> Result<String, String> {
    let v = parse(expr)?;
    if v.im.is_zero() && order == 0 {
        return classical_limit(&v.re).map(|c| c.to_string()).map_err(|e| e.to_string());
    }
    if order == 0 {
        return Err("complex values: use an expansion order of at least 1".into());
    }
    let mut lines = Vec::new();
    for (prefix, part) in [("", &v.re), ("i * ", &v.im)] {
        for (m, s) in limit_series(part, order as usize) {
            lines.push(format!("{prefix}{}: {s}", m.render()));
        }
    }
    Ok(if lines.is_empty() { "0".into() } else { lines.join("\n") })
}

/// One suite run on the calling thread, reported as JSON.
pub fn suite_json(name: &str) -> Result<String, String> {
    let suite = Suite::from_str(name, false).map_err(|_| format!("unknown suite `{name}`"))?;
    let opts = VerifyOptions { associativity_samples: 500, ..VerifyOptions::default() };
    let report = SuiteReport::from_checks(&run_suite(suite, &opts));
    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn normalize(expr: &str) -> Result<String, JsError> {
    normal_form(expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn limit(expr: &str, order: u32) -> Result<String, JsError> {
    limit_text(expr, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify_suite(name: &str) -> Result<String, JsError> {
    suite_json(name).map_err(|e| JsError::new(&e))
}

/// Suite names accepted by [`verify_suite`], comma separated.
#[wasm_bindgen]
pub fn suite_names() -> String {
    Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_on_the_host() {
        assert_eq!(normal_form("xiz*xiz").unwrap(), "h * xim*xip");
        assert!(normal_form("xiz*").unwrap_err().contains("byte 4"));
        assert_eq!(limit_text("(q^2-1)/(q-1)*xp", 0).unwrap(), "2 * xp");
        assert!(limit_text("1/h", 0).is_err());
        assert!(limit_text("1/h", 2).unwrap().starts_with("1: 1/2*t^-1"));
        let json: serde_json::Value = serde_json::from_str(&suite_json("braid").unwrap()).unwrap();
        assert_eq!(json["failures"].as_array().unwrap().len(), 0);
        assert!(suite_json("nope").is_err());
        assert_eq!(suite_names().split(',').count(), 12);
    }
}
