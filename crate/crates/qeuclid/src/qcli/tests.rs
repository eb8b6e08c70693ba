use super::*;
use crate::ncalg::{Algebra, Element, Letter, Monomial};
use crate::qscalar::Scalar;
use proptest::prelude::*;

fn alg() -> Algebra {
    Algebra::default()
}

fn norm(t: &str) -> String {
    normalize(&alg(), t).unwrap()
}

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qeuclid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn documented_examples() {
    assert_eq!(norm("xiz*xiz"), "h * xim*xip");
    assert_eq!(norm("(q^2-1)/(q+1)"), "q-1");
    assert_eq!(norm("xp*xm - xm*xp - h*xz^2"), "0");
    assert_eq!(norm("Laminv * rinv^2 * xzinv * xp^2 * xim"), "Lam^-1 * r^-2 * x0^-1 * xp^2 * xim");
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(norm("-q^2"), norm("-(q^2)"));
    assert_eq!(norm("2*3+4"), "10");
    assert_eq!(norm("2*(3+4)"), "14");
    assert_eq!(norm("1/2/3"), "1/6");
    assert_eq!(norm("8-2-1"), "5");
    assert_eq!(norm("q^(-1)"), norm("q^-1"));
    assert_eq!(norm("sqrtq^2"), "q");
    assert_eq!(norm("h"), norm("sqrtq - 1/sqrtq"));
}

#[test]
fn aliases_and_inverses() {
    assert_eq!(norm("xz"), norm("x0"));
    assert_eq!(norm("xz*xzinv"), "1");
    assert_eq!(norm("r*rinv"), "1");
    assert_eq!(norm("Lam*Laminv"), "1");
    assert_eq!(norm("xm/xz"), norm("xm*xzinv"));
    assert_eq!(norm("(alpha*Lam)^-2"), norm("Laminv^2*alpha^-2"));
}

#[test]
fn imaginary_unit() {
    assert_eq!(norm("i*i"), "-1");
    assert_eq!(norm("1/(1+i)"), "1/2 + i * (-(1/2))");
    assert_eq!(norm("i*xm"), "i * (xm)");
}

#[test]
fn errors_carry_offsets() {
    let a = alg();
    let cases: [(&str, usize); 7] =
        [("xm*", 3), ("xm $ 2", 3), ("xm + foo", 5), ("(xm", 3), ("xm)", 2), ("q^x", 2), ("q^2^3", 3)];
    for (t, off) in cases {
        let e = evaluate(&a, t).unwrap_err();
        assert_eq!(e.offset(), off, "{t}: {e}");
    }
    assert!(matches!(evaluate(&a, "foo").unwrap_err(), ExprError::UnknownSymbol { offset: 0, .. }));
    assert_eq!(evaluate(&a, "1/(xm+xp)").unwrap_err(), ExprError::NotInvertible { offset: 2 });
    assert_eq!(evaluate(&a, "xim^-1").unwrap_err(), ExprError::NotInvertible { offset: 0 });
    assert_eq!(evaluate(&a, "1/0").unwrap_err(), ExprError::NotInvertible { offset: 2 });
}

#[test]
fn caret_points_at_offset() {
    let e = evaluate(&alg(), "xm + foo").unwrap_err();
    let msg = describe_expr_error("xm + foo", &e);
    assert!(msg.ends_with("\n  xm + foo\n       ^"), "{msg}");
}

#[test]
fn alpha_values() {
    assert!(parse_alpha("q+1").is_ok());
    assert!(parse_alpha("alpha").is_ok());
    assert!(parse_alpha("xm").is_err());
    assert!(parse_alpha("0").is_err());
    assert!(parse_alpha("i").is_err());
}

#[test]
fn cli_exit_codes() {
    assert_eq!(run_args(&["verify", "braid"]).0, EXIT_OK);
    assert_eq!(run_args(&["verify", "nosuch"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["verify", "--sigma", "R"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["verify", "--calculus", "both"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["verify", "braid", "--alpha", "xm"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["normalize", "xm*"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["matrix", "nosuch"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["--help"]).0, EXIT_OK);
}

#[test]
fn help_lists_every_token() {
    let (_, out, _) = run_args(&["normalize", "--help"]);
    for (tok, _, _) in SYMBOLS {
        assert!(out.contains(&format!("  {tok} ")), "{tok}");
    }
}

#[test]
fn normalize_command() {
    let (code, out, _) = run_args(&["normalize", "xiz*xiz"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "h * xim*xip\n"));
    let (code, out, _) = run_args(&["normalize", "-q"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "-q\n"));
}

#[test]
fn limit_command() {
    let (code, out, _) = run_args(&["limit", "(q^2-1)/(q-1) * xm*xim"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "2 * xm * dxm"));
    let (code, out, _) = run_args(&["limit", "1/h"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("divergent"), "{out}");
    let (code, out, _) = run_args(&["limit", "1/h", "--order", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("1: 1/2*t^-1 + 1/4"), "{out}");
}

#[test]
fn matrix_command() {
    let (code, out, _) = run_args(&["matrix", "g"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
    let (code, out, _) = run_args(&["matrix", "rhat", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"], 9);
}

#[test]
fn metric_compat_reports_defect() {
    let (code, out, _) = run_args(&["verify", "metric-compat", "--sigma", "qR", "--calculus", "unbarred"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("defect q^2"), "{out}");
    assert!(!out.contains("q^-2"), "{out}");
}

#[test]
fn json_report_has_fixed_keys() {
    let (code, out, _) = run_args(&["verify", "braid", "projectors", "--json"]);
    assert_eq!(code, EXIT_OK);
    let report: Report = serde_json::from_str(&out).unwrap();
    assert!(report.passed());
    assert_eq!(report.suites.keys().collect::<Vec<_>>(), ["braid", "projectors"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["status", "suites"]);
    let suite: Vec<&String> = v["suites"]["braid"].as_object().unwrap().keys().collect();
    assert_eq!(suite, ["checks", "failures", "notes"]);
}

#[test]
fn report_merge_is_sorted_and_fails_on_any_failure() {
    use crate::geom::Check;
    let mut suites = std::collections::BTreeMap::new();
    suites.insert("zeta".to_string(), SuiteReport::from_checks(&[Check::pass("a")]));
    suites.insert("alpha".to_string(), SuiteReport::from_checks(&[Check::fail("b", "x - y")]));
    let r = Report::from_suites(suites);
    assert_eq!(r.status, Status::Fail);
    let text = r.to_text();
    assert!(text.find("alpha:").unwrap() < text.find("zeta:").unwrap());
    assert!(text.contains("residual: x - y"));
}

#[test]
fn suites_are_deterministic_across_runs() {
    let opts = VerifyOptions { suites: vec![Suite::Projectors, Suite::Braid], ..VerifyOptions::default() };
    assert_eq!(verify(&opts), verify(&opts));
}

#[test]
fn small_associativity_sample() {
    let c = associativity_check(&alg(), 200, 4, 7);
    assert!(c.ok(), "{:?}", c.residual);
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::all())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3, -3i64..=3, prop::bool::ANY).prop_map(|(n, d, k, plus)| {
        let base = Scalar::rational(n, d) * Scalar::s_pow(k);
        if plus {
            base + Scalar::one()
        } else {
            base
        }
    })
}

fn element() -> impl Strategy<Value = Element> {
    prop::collection::vec((scalar(), prop::collection::vec(letter(), 0..5)), 0..4).prop_map(|terms| {
        let a = alg();
        let mut e = Element::zero();
        for (c, w) in terms {
            e += &a.normalize_word(c, &w);
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn render_parse_round_trip(e in element(), im in element()) {
        let a = alg();
        let v = Value { re: e, im };
        let text = v.render();
        let back = evaluate(&a, &text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &v, "{}", text);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn monomial_rendering_parses(w in prop::collection::vec(letter(), 0..7), k in -2i32..=2) {
        let a = alg();
        let e = a.normalize_word(Scalar::one(), &w).alpha_shift(k);
        for (m, _) in e.terms() {
            let back = evaluate(&a, &m.render()).unwrap();
            prop_assert_eq!(back.re, Element::monomial(*m));
        }
    }

    #[test]
    fn lexer_never_panics(s in "[ -~]{0,24}") {
        let _ = parse(&s);
    }

    #[test]
    fn parsed_sums_commute(x in element(), y in element()) {
        let a = alg();
        let l = format!("({}) + ({})", x.render(), y.render());
        let r = format!("({}) + ({})", y.render(), x.render());
        prop_assert_eq!(evaluate(&a, &l).unwrap(), evaluate(&a, &r).unwrap());
    }
}

#[test]
fn unit_monomial_is_inverted() {
    let a = alg();
    let m = Monomial { lam: 1, r: -2, x0: 3, ..Monomial::one() };
    let text = format!("1/({})", m.render());
    let v = evaluate(&a, &text).unwrap();
    assert_eq!(a.mul(&v.re, &Element::monomial(m)), Element::one());
}
