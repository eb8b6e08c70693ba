use std::process::{Command, Output};

fn qeuclid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuclid")).args(args).output().expect("run qeuclid")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_examples() {
    let cases = [
        ("xiz*xiz", "h * xim*xip"),
        ("(q^2-1)/(q+1)", "q-1"),
        ("xp*xm - xm*xp - h*xz^2", "0"),
        ("xim*xim", "0"),
        ("Lam^-1 * r^-2 * x0^-1 * xp^2 * xim", "Lam^-1 * r^-2 * x0^-1 * xp^2 * xim"),
    ];
    for (input, want) in cases {
        let o = qeuclid(&["normalize", input]);
        assert_eq!(o.status.code(), Some(0), "{input}");
        assert_eq!(stdout(&o).trim_end(), want, "{input}");
    }
}

#[test]
fn normalize_is_idempotent_on_its_output() {
    for input in ["xp*xm", "xm*xp*xiz*bxiz", "(xp + q*xm)^2 * Laminv", "i*xm*bxip/r"] {
        let once = stdout(&qeuclid(&["normalize", input]));
        let twice = stdout(&qeuclid(&["normalize", once.trim_end()]));
        assert_eq!(once, twice, "{input}");
    }
}

#[test]
fn parse_error_is_a_usage_error_with_offset() {
    let o = qeuclid(&["normalize", "xp * + )"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("at byte 7"), "{err}");
}

#[test]
fn verify_braid_passes() {
    let o = qeuclid(&["verify", "braid"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall: pass"));
}

#[test]
fn metric_compat_single_calculus() {
    let o = qeuclid(&["verify", "metric-compat", "--sigma", "qR", "--calculus", "unbarred"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("defect q^2"));
}

#[test]
fn unknown_suite_and_flag_exit_2() {
    assert_eq!(qeuclid(&["verify", "torsions"]).status.code(), Some(2));
    assert_eq!(qeuclid(&["verify", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(qeuclid(&["verify", "--radius-reduction", "maybe"]).status.code(), Some(2));
    assert_eq!(qeuclid(&[]).status.code(), Some(2));
}

#[test]
fn radius_reduction_off_reports_failures() {
    let o = qeuclid(&["verify", "lambda", "--radius-reduction", "off", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "fail");
    let f = &v["suites"]["lambda"]["failures"][0];
    assert!(f["id"].is_string() && f["residual"].is_string());
}

#[test]
fn json_suites_sorted_by_name() {
    let o = qeuclid(&["verify", "projectors", "braid", "algebra", "--samples", "10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&String> = v["suites"].as_object().unwrap().keys().collect();
    assert_eq!(names, ["algebra", "braid", "projectors"]);
    let text = stdout(&o);
    assert!(text.find("\"algebra\"").unwrap() < text.find("\"braid\"").unwrap());
}

#[test]
fn explicit_alpha() {
    let o = qeuclid(&["verify", "frame", "ds2", "--alpha", "q+1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn matrix_and_limit() {
    let o = qeuclid(&["matrix", "pa"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = qeuclid(&["limit", "xp*xm - xm*xp"]);
    assert_eq!((o.status.code(), stdout(&o).trim_end()), (Some(0), "0"));
    let o = qeuclid(&["limit", "1/h"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qeuclid(&["limit", "q", "--order", "2"]);
    assert_eq!(stdout(&o).trim_end(), "1: 1 + 2*t + t^2 + O(t^3)");
}
