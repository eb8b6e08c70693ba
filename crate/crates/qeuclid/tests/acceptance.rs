//! Acceptance criteria, one line each.
//!
//! Runs without the libtest harness so the criterion lines are always
//! printed. A criterion listed in `KNOWN_RED` is allowed to fail: its line
//! still reads FAIL, with the measured value next to the expected one.
//! Any other failure makes the target exit nonzero.

use qeuclid::climit::{
    classical_limit, expected_line_element, line_element_limit, real_coordinate_frame, stated_real_frame, ClimitError,
};
use qeuclid::geom::{self, explicit_dxi, frame_to_xi, termwise_vanishing, Alpha, Check, Connection, Geometry, Selection};
use qeuclid::ncalg::{critical_pairs, termination_report, Algebra};
use qeuclid::omega::SigmaChoice;
use qeuclid::qcli::{associativity_check, run_suite, Suite, VerifyOptions};
use qeuclid::qscalar::Scalar;
use qeuclid::rmat::Constants;
use std::process::Command;
use std::time::{Duration, Instant};

/// Criteria whose literal target is not met; see the README.
const KNOWN_RED: [u32; 3] = [5, 7, 11];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.ok()).map(|c| c.id.clone()).collect()
}

fn suite(s: Suite) -> Vec<Check> {
    run_suite(s, &VerifyOptions::default())
}

fn suites_pass(list: &[Suite]) -> Verdict {
    let mut n = 0;
    let mut bad = Vec::new();
    for &s in list {
        let c = suite(s);
        n += c.len();
        bad.extend(failures(&c));
    }
    verdict(bad.is_empty(), if bad.is_empty() { format!("{n} identities") } else { bad.join("; ") })
}

fn c1() -> Verdict {
    let c = Constants::get();
    let ok = c.rhat.check_braid() && c.rhat_inv.check_braid();
    verdict(ok, "R and Rinv satisfy the braid relation on 27 dimensions")
}

fn c2() -> Verdict {
    let c = Constants::get();
    let checks = c.proj.checks(&c.rhat);
    let bad: Vec<String> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
    verdict(bad.is_empty(), format!("{} projector identities, failing: [{}]", checks.len(), bad.join(", ")))
}

fn c3() -> Verdict {
    let opts = VerifyOptions { associativity_samples: 0, ..VerifyOptions::default() };
    let checks = run_suite(Suite::Algebra, &opts);
    let rel: Vec<&Check> =
        checks.iter().filter(|c| c.id.contains("relation") || c.id.starts_with("P_a x x")).collect();
    let bad: Vec<String> = rel.iter().filter(|c| !c.ok()).map(|c| c.id.clone()).collect();
    verdict(bad.is_empty() && rel.len() == 7, format!("{} relation checks, failing: [{}]", rel.len(), bad.join("; ")))
}

fn c4() -> Verdict {
    let alg = Algebra::default();
    let t = termination_report(&alg);
    let pairs = critical_pairs(&alg);
    let joined = pairs.iter().filter(|p| p.joins()).count();
    let assoc = associativity_check(&alg, 10_000, 6, 0x5eed);
    let ok = t.ok() && joined == pairs.len() && assoc.ok();
    verdict(ok, format!("{} rules terminate, {joined}/{} critical pairs join, {}", t.rules, pairs.len(), assoc.id))
}

fn c5() -> Verdict {
    let geo = Geometry::default();
    let checks = geom::frame_checks(&geo, &Selection::default());
    let bad = failures(&checks);
    let trivial = termwise_vanishing(&geo.frame.coeff, &geo.alg.consts.rhat);
    verdict(
        bad.is_empty() && trivial == 36,
        format!("81 equations and all commutators hold: {}; trivial by triangularity: {trivial} (target 36)", bad.is_empty()),
    )
}

fn c6() -> Verdict {
    suites_pass(&[Suite::Lambda, Suite::RttGtt])
}

fn c7() -> Verdict {
    let geo = Geometry::default();
    let checks = geom::torsion_checks(&geo, &Selection::default());
    let bad = failures(&checks);
    let conn = Connection::single(&geo.frame, SigmaChoice::QR, false);
    let stated = Scalar::q_pow(-2);
    let literal = (0..3).all(|i| {
        let alg = &geo.alg;
        let dxi = frame_to_xi(alg, &geo.frame, &conn.d_one(alg, &geo.frame.to_frame(alg, &alg.xi(i))));
        dxi == explicit_dxi(&geo, i, &stated)
    });
    verdict(
        bad.is_empty() && literal,
        format!(
            "{} torsion and D xi identities hold: {}; explicit D xi for qR with coefficient q^-2 on xi (x) theta: {literal} (holds with 1)",
            checks.len(),
            bad.is_empty()
        ),
    )
}

fn c8() -> Verdict {
    suites_pass(&[Suite::Curvature])
}

fn c9() -> Verdict {
    let checks = suite(Suite::MetricCompat);
    let bad = failures(&checks);
    let notes: Vec<String> =
        checks.iter().filter(|c| c.id.contains("defect") || c.id.contains("compatib")).filter_map(|c| c.note.clone()).collect();
    verdict(bad.is_empty(), notes.join(", "))
}

fn c10() -> Verdict {
    suites_pass(&[Suite::Reality, Suite::Ds2])
}

fn c11() -> Verdict {
    let geo = Geometry::default();
    let alpha = Alpha::Symbolic;
    let metric = line_element_limit(&geo.alg, &alpha).map(|g| g == expected_line_element(&alpha)).unwrap_or(false);
    let divergent =
        geo.frame.lambda.iter().all(|l| matches!(classical_limit(l), Err(ClimitError::Divergent { .. })));
    let frame = match real_coordinate_frame(&geo.frame) {
        Ok(got) => {
            let stated = stated_real_frame();
            (0..3).map(|k| got[k] == stated[k]).collect::<Vec<_>>()
        }
        Err(_) => vec![false; 3],
    };
    let frame_ok = frame.iter().all(|b| *b);
    verdict(
        metric && divergent && frame_ok,
        format!("line element: {metric}; lambda divergent: {divergent}; real frame components equal: {frame:?}"),
    )
}

fn c12() -> Verdict {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qeuclid")).arg("verify").output().expect("run qeuclid");
    let secs = t.elapsed().as_secs_f64();
    let ok = out.status.code() == Some(0) && secs < 300.0;
    let last = String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or("").to_string();
    verdict(ok, format!("exit {:?}, {last}, {secs:.1} s", out.status.code()))
}

type Criterion = (u32, &'static str, fn() -> Verdict, Option<Duration>);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "braid equation", c1, Some(Duration::from_secs(1))),
        (2, "projector algebra", c2, Some(Duration::from_secs(1))),
        (3, "algebra reconstruction", c3, None),
        (4, "rewrite engine", c4, Some(Duration::from_secs(60))),
        (5, "frame", c5, Some(Duration::from_secs(30))),
        (6, "dual basis", c6, None),
        (7, "connections", c7, None),
        (8, "flatness", c8, Some(Duration::from_secs(60))),
        (9, "metric compatibility", c9, None),
        (10, "reality", c10, None),
        (11, "commutative limit", c11, None),
        (12, "full verify", c12, Some(Duration::from_secs(300))),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f, limit) in criteria {
        let t = Instant::now();
        let v = f();
        let dt = t.elapsed();
        let in_time = limit.is_none_or(|l| dt < l);
        let pass = v.pass && in_time;
        let tag = if pass { "PASS" } else { "FAIL" };
        let time = if in_time { String::new() } else { format!(" (over the {:?} budget)", limit.unwrap()) };
        println!("criterion {n:>2} {tag} {name} [{:.2} s]: {}{time}", dt.as_secs_f64(), v.detail);
        if !pass && !KNOWN_RED.contains(&n) {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no failures outside the known set {KNOWN_RED:?}");
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
