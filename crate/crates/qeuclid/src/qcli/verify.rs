//! Suites of identities, their concurrent execution and the merged report.

use super::expr::evaluate;
use crate::geom::{self, Alpha, Check, Geometry, Selection};
use crate::ncalg::{critical_pairs, radius_checks, termination_report, Algebra, Config, Letter};
use crate::qscalar::Scalar;
use crate::rmat::{check_metric_compat, minimal_polynomial, pair, Constants, Mat, MINUS, PLUS, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Braid,
    Projectors,
    Algebra,
    Frame,
    Lambda,
    #[value(name = "rtt-gtt")]
    RttGtt,
    Torsion,
    Curvature,
    #[value(name = "metric-compat")]
    MetricCompat,
    Reality,
    Ds2,
    Partials,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Braid,
        Suite::Projectors,
        Suite::Algebra,
        Suite::Frame,
        Suite::Lambda,
        Suite::RttGtt,
        Suite::Torsion,
        Suite::Curvature,
        Suite::MetricCompat,
        Suite::Reality,
        Suite::Ds2,
        Suite::Partials,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Braid => "braid",
            Suite::Projectors => "projectors",
            Suite::Algebra => "algebra",
            Suite::Frame => "frame",
            Suite::Lambda => "lambda",
            Suite::RttGtt => "rtt-gtt",
            Suite::Torsion => "torsion",
            Suite::Curvature => "curvature",
            Suite::MetricCompat => "metric-compat",
            Suite::Reality => "reality",
            Suite::Ds2 => "ds2",
            Suite::Partials => "partials",
        }
    }

    fn needs_geometry(self) -> bool {
        !matches!(self, Suite::Braid | Suite::Projectors | Suite::Algebra)
    }
}

/// Everything `verify` can be asked to vary.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Suites to run; empty means all of them.
    pub suites: Vec<Suite>,
    pub selection: Selection,
    pub alpha: Alpha,
    pub config: Config,
    /// Random monomial triples tested for associativity.
    pub associativity_samples: usize,
    /// Largest word length of each factor in an associativity triple.
    pub associativity_degree: usize,
    pub seed: u64,
    /// Exponent bound for the test functions of the `partials` suite.
    pub partials_bound: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suites: Vec::new(),
            selection: Selection::default(),
            alpha: Alpha::Symbolic,
            config: Config::default(),
            associativity_samples: 10_000,
            associativity_degree: 6,
            seed: 0x5eed,
            partials_bound: 3,
        }
    }
}

fn mat_residual(m: &Mat) -> String {
    let mut parts = Vec::new();
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            if !m[(a, b)].is_zero() {
                parts.push(format!("[{a},{b}] {}", m[(a, b)]));
            }
        }
    }
    let n = parts.len();
    parts.truncate(4);
    if n > 4 {
        parts.push(format!("and {} more entries", n - 4));
    }
    parts.join("; ")
}

fn mat_zero(id: impl Into<String>, m: &Mat) -> Check {
    Check::truth(id, m.is_zero(), || mat_residual(m))
}

fn braid_checks() -> Vec<Check> {
    let c = Constants::get();
    let mut out = Vec::new();
    for (n, b) in [("R", &c.rhat), ("Rinv", &c.rhat_inv)] {
        out.push(mat_zero(format!("{n}12 {n}23 {n}12 = {n}23 {n}12 {n}23"), &b.braid_defect()));
    }
    out.push(mat_zero("R Rinv = 1", &(&(&c.rhat.m * &c.rhat_inv.m) - &Mat::identity(9))));
    out.push(mat_zero("(R - q)(R + q^-1)(R - q^-2) = 0", &minimal_polynomial(&c.rhat)));
    out.push(Check::truth("R respects the degree selection rule", c.rhat.respects_selection_rule(), || {
        "an entry links pairs of different degree".into()
    }));
    out.push(Check::truth("R -> flip at q = 1", c.rhat.limit_is_flip(), || "the limit differs from the flip".into()));
    let compat = check_metric_compat(&c.rhat, &c.rhat_inv, &c.g);
    let names = ["g R = Rinv g (lower)", "g Rinv = R g (lower)", "g R = Rinv g (upper)", "g Rinv = R g (upper)"];
    for (name, ok) in names.into_iter().zip(compat) {
        out.push(Check::truth(name, ok, || "index exchange identity fails".into()));
    }
    out
}

fn projector_checks() -> Vec<Check> {
    let c = Constants::get();
    let mut out: Vec<Check> = c
        .proj
        .checks(&c.rhat)
        .into_iter()
        .map(|(id, ok)| Check::truth(id, ok, || "matrices differ".into()))
        .collect();
    out.push(Check::truth("rank P_a = 3", c.proj.pa.rank() == 3, || format!("rank {}", c.proj.pa.rank())));
    out
}

fn word_text(row: &[Scalar]) -> String {
    const N: [&str; 3] = ["xm", "x0", "xp"];
    let mut e = String::new();
    for (k, c) in row.iter().enumerate() {
        if !c.is_zero() {
            let _ = write!(e, " + ({c})*{}*{}", N[k / 3], N[k % 3]);
        }
    }
    e.trim_start_matches(" + ").to_string()
}

/// The three relations `P_a xx = 0` in reduced form, expected as
/// `x- x0 = q x0 x-`, `x+ x0 = q⁻¹ x0 x+` and `x+ x- - x- x+ = h x0²`.
fn reconstruction_checks(alg: &Algebra) -> Vec<Check> {
    let rows = Constants::get().proj.quadratic_relations();
    let q = Scalar::q();
    let mut want = vec![vec![Scalar::zero(); 9]; 3];
    want[0][pair(MINUS, ZERO)] = Scalar::one();
    want[0][pair(ZERO, MINUS)] = -&q;
    want[1][pair(PLUS, ZERO)] = Scalar::one();
    want[1][pair(ZERO, PLUS)] = -q.pow(-1);
    want[2][pair(PLUS, MINUS)] = Scalar::one();
    want[2][pair(MINUS, PLUS)] = -Scalar::one();
    want[2][pair(ZERO, ZERO)] = -Scalar::h();
    let mut out = vec![Check::truth("P_a x x = 0 has exactly 3 independent relations", rows.len() == 3, || {
        format!("{} relations", rows.len())
    })];
    let ids = ["[x^-, x^0]_q: xm*x0 - q*x0*xm", "[x^+, x^0]_q: xp*x0 - q^-1*x0*xp", "[x^+, x^-] = h (x^0)^2: xp*xm - xm*xp - h*x0^2"];
    for (k, id) in ids.iter().enumerate() {
        let got = rows.get(k).map(|r| word_text(r)).unwrap_or_default();
        out.push(Check::truth(format!("projector relation {id}"), rows.get(k) == Some(&want[k]), || {
            format!("{got} - ({})", word_text(&want[k]))
        }));
        let expr = id.split(": ").nth(1).expect("relation text");
        let v = evaluate(alg, expr).expect("relation parses");
        out.push(Check::zero(format!("engine relation {id}"), &v.re));
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Letter], max: usize) -> Vec<Letter> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

/// `(ab)c = a(bc)` for random normal monomials.
pub fn associativity_check(alg: &Algebra, samples: usize, degree: usize, seed: u64) -> Check {
    let letters = Letter::all();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..samples {
        let [a, b, c] = std::array::from_fn(|_| {
            let w = random_word(&mut rng, &letters, degree);
            alg.normalize_word(Scalar::one(), &w)
        });
        let d = &alg.mul(&alg.mul(&a, &b), &c) - &alg.mul(&a, &alg.mul(&b, &c));
        if !d.is_zero() {
            bad = Some(format!("({}) ({}) ({}): {}", a.render(), b.render(), c.render(), d.render()));
            break;
        }
    }
    Check::truth(format!("associativity on {samples} random triples of degree <= {degree}"), bad.is_none(), || {
        bad.clone().unwrap_or_default()
    })
}

fn algebra_checks(opts: &VerifyOptions) -> Vec<Check> {
    let alg = Algebra::new(opts.config);
    let mut out = reconstruction_checks(&alg);
    if opts.config.radius_reduction {
        out.extend(radius_checks(&alg).into_iter().map(|(id, ok)| Check::truth(id, ok, || "identity fails".into())));
    }
    let t = termination_report(&alg);
    out.push(
        Check::truth("every rule is slot-decreasing and normalizes", t.ok(), || {
            format!("{} rules, {} ordered, {} normalized", t.rules, t.ordered_rhs, t.normalized)
        })
        .with_note(format!("{} rules", t.rules)),
    );
    let pairs = critical_pairs(&alg);
    let failing: Vec<String> =
        pairs.iter().filter(|p| !p.joins()).take(3).map(|p| format!("{}: {}", p.label(), p.difference.render())).collect();
    out.push(
        Check::truth("all critical pairs join", failing.is_empty(), || failing.join("; "))
            .with_note(format!("{} critical pairs", pairs.len())),
    );
    out.push(associativity_check(&alg, opts.associativity_samples, opts.associativity_degree, opts.seed));
    out
}

/// Runs one suite on the current thread.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Check> {
    if !suite.needs_geometry() {
        return match suite {
            Suite::Braid => braid_checks(),
            Suite::Projectors => projector_checks(),
            _ => algebra_checks(opts),
        };
    }
    let geo = Geometry::new(opts.config, opts.alpha.clone());
    let sel = &opts.selection;
    match suite {
        Suite::Frame => geom::frame_checks(&geo, sel),
        Suite::Lambda => geom::lambda_checks(&geo),
        Suite::RttGtt => geom::rtt_checks(&geo),
        Suite::Torsion => geom::torsion_checks(&geo, sel),
        Suite::Curvature => geom::curvature_checks(&geo, sel),
        Suite::MetricCompat => geom::metric_compat_checks(&geo, sel),
        Suite::Reality => geom::reality_checks(&geo, sel),
        Suite::Ds2 => geom::ds2_checks(&geo),
        _ => geom::partials_checks(&geo, opts.partials_bound),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub id: String,
    /// `lhs - rhs`, or a description of the mismatch.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Note {
    pub id: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReport {
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<Note>,
}

impl SuiteReport {
    pub fn from_checks(checks: &[Check]) -> SuiteReport {
        SuiteReport {
            checks: checks.len(),
            failures: checks
                .iter()
                .filter_map(|c| c.residual.as_ref().map(|r| Failure { id: c.id.clone(), residual: r.clone() }))
                .collect(),
            notes: checks
                .iter()
                .filter_map(|c| c.note.as_ref().map(|n| Note { id: c.id.clone(), note: n.clone() }))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Merged outcome of a `verify` run, keyed and ordered by suite name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub status: Status,
    pub suites: BTreeMap<String, SuiteReport>,
}

impl Report {
    pub fn from_suites(suites: BTreeMap<String, SuiteReport>) -> Report {
        let ok = suites.values().all(|s| s.failures.is_empty());
        Report { status: if ok { Status::Pass } else { Status::Fail }, suites }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, s) in &self.suites {
            let verdict = if s.failures.is_empty() { "ok" } else { "FAILED" };
            let _ = writeln!(out, "{name}: {} checks, {} failures, {verdict}", s.checks, s.failures.len());
            for n in &s.notes {
                let _ = writeln!(out, "  {}: {}", n.id, n.note);
            }
            for f in &s.failures {
                let _ = writeln!(out, "  FAIL {}\n    residual: {}", f.id, f.residual);
            }
        }
        let _ = writeln!(out, "overall: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

/// Runs the requested suites on separate threads and merges the results.
pub fn verify(opts: &VerifyOptions) -> Report {
    let mut suites = if opts.suites.is_empty() { Suite::ALL.to_vec() } else { opts.suites.clone() };
    suites.sort();
    suites.dedup();
    let results: Vec<(Suite, Vec<Check>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| {
                std::thread::Builder::new()
                    .name(s.name().into())
                    .stack_size(64 << 20)
                    .spawn_scoped(scope, move || (s, run_suite(s, opts)))
                    .expect("spawn suite thread")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    Report::from_suites(results.into_iter().map(|(s, c)| (s.name().to_string(), SuiteReport::from_checks(&c))).collect())
}

/// Reads `--alpha`: a nonzero scalar expression.
pub fn parse_alpha(text: &str) -> Result<Alpha, String> {
    if text.trim() == "alpha" {
        return Ok(Alpha::Symbolic);
    }
    let alg = Algebra::default();
    let v = evaluate(&alg, text).map_err(|e| e.to_string())?;
    v.as_scalar().map(Alpha::Value).ok_or_else(|| format!("`{text}` is not a nonzero scalar in q"))
}

