//! The braid matrix R̂ of SO_q(3), the isotropic metric and the projectors.
//!
//! Indices run over `{-, 0, +}`, encoded as `0, 1, 2`. A pair `(i, j)` is
//! the row or column `3 i + j` of a 9×9 matrix, so pairs are ordered
//! lexicographically with `- < 0 < +`.

mod matrix;

pub use matrix::Mat;

use crate::qscalar::{eval_limit, Scalar};
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

pub const MINUS: usize = 0;
pub const ZERO: usize = 1;
pub const PLUS: usize = 2;

/// Printable names of the three index values.
pub const INDEX_NAMES: [&str; 3] = ["-", "0", "+"];

/// Grading degree `-1, 0, +1` of an index.
pub fn degree(i: usize) -> i32 {
    i as i32 - 1
}

/// Row of the pair `(i, j)` in a 9×9 matrix.
pub fn pair(i: usize, j: usize) -> usize {
    3 * i + j
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RmatError {
    #[error("relation for x^{0} xi^{1} assigns two values to the entry ({0},{1};{2},{3})", INDEX_NAMES[*.i], INDEX_NAMES[*.j], INDEX_NAMES[*.k], INDEX_NAMES[*.l])]
    Inconsistent { i: usize, j: usize, k: usize, l: usize },
    #[error("relation term ({i},{j};{k},{l}) violates the degree selection rule")]
    SelectionRule { i: usize, j: usize, k: usize, l: usize },
    #[error("projector check failed: {0}")]
    Projector(String),
    #[error("braid matrix is singular")]
    Singular,
}

/// The metric `g_ij` together with `g^ij`, which has the same entries.
#[derive(Debug, Clone)]
pub struct IsoMetric {
    pub lower: Mat,
    pub upper: Mat,
}

impl Default for IsoMetric {
    fn default() -> Self {
        IsoMetric::new()
    }
}

impl IsoMetric {
    pub fn new() -> Self {
        let mut g = Mat::zeros(3, 3);
        g[(MINUS, PLUS)] = Scalar::s_pow(-1);
        g[(ZERO, ZERO)] = Scalar::one();
        g[(PLUS, MINUS)] = Scalar::s();
        IsoMetric { lower: g.clone(), upper: g }
    }

    pub fn g(&self, i: usize, j: usize) -> &Scalar {
        &self.lower[(i, j)]
    }

    pub fn ginv(&self, i: usize, j: usize) -> &Scalar {
        &self.upper[(i, j)]
    }

    /// `g^{mn} g_{mn}`.
    pub fn trace_normalizer(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for m in 0..3 {
            for n in 0..3 {
                acc = acc + self.ginv(m, n) * self.g(m, n);
            }
        }
        acc
    }

    /// `g^{il} g_{lj} = δ^i_j`.
    pub fn is_inverse_pair(&self) -> bool {
        &self.upper * &self.lower == Mat::identity(3)
    }
}

/// One explicit x–ξ relation `x^i ξ^j = Σ c ξ^k x^l`.
pub struct XiRelation {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, usize, Scalar)>,
}

/// The nine exchange relations between coordinates and their differentials.
pub fn xi_relations() -> Vec<XiRelation> {
    let q = Scalar::q();
    let one = Scalar::one();
    let h = Scalar::h();
    let q2m1 = &q * &q - &one;
    let hq1 = &h * &(&q + &one);
    let rel = |i, j, terms: Vec<(usize, usize, Scalar)>| XiRelation { i, j, terms };
    vec![
        rel(MINUS, MINUS, vec![(MINUS, MINUS, q.pow(2))]),
        rel(ZERO, MINUS, vec![(MINUS, ZERO, q.clone())]),
        rel(PLUS, MINUS, vec![(MINUS, PLUS, one.clone())]),
        rel(MINUS, ZERO, vec![(ZERO, MINUS, q.clone()), (MINUS, ZERO, q2m1.clone())]),
        rel(ZERO, ZERO, vec![(ZERO, ZERO, q.clone()), (MINUS, PLUS, -&hq1)]),
        rel(PLUS, ZERO, vec![(ZERO, PLUS, q.clone())]),
        rel(
            MINUS,
            PLUS,
            vec![(PLUS, MINUS, one.clone()), (ZERO, ZERO, -&hq1), (MINUS, PLUS, &h * &hq1)],
        ),
        rel(ZERO, PLUS, vec![(PLUS, ZERO, q.clone()), (ZERO, PLUS, q2m1)]),
        rel(PLUS, PLUS, vec![(PLUS, PLUS, q.pow(2))]),
    ]
}

/// A 9×9 matrix acting on pairs of indices, `entry(i,j,k,l) = M^{ij}_{kl}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidMatrix {
    pub m: Mat,
}

impl BraidMatrix {
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.m[(pair(i, j), pair(k, l))]
    }

    /// Reads each relation `x^i ξ^j = q R̂^{ij}_{kl} ξ^k x^l` as row `(i, j)`.
    pub fn from_relations(rels: &[XiRelation]) -> Result<Self, RmatError> {
        let mut m = Mat::zeros(9, 9);
        let mut seen = [[false; 9]; 9];
        let qi = Scalar::q().inv().unwrap();
        for r in rels {
            for (k, l, c) in &r.terms {
                let (i, j, k, l) = (r.i, r.j, *k, *l);
                if degree(i) + degree(j) != degree(k) + degree(l) {
                    return Err(RmatError::SelectionRule { i, j, k, l });
                }
                let v = c * &qi;
                let (a, b) = (pair(i, j), pair(k, l));
                if seen[a][b] && m[(a, b)] != v {
                    return Err(RmatError::Inconsistent { i, j, k, l });
                }
                seen[a][b] = true;
                m[(a, b)] = v;
            }
        }
        Ok(BraidMatrix { m })
    }

    pub fn invert(&self) -> Result<BraidMatrix, RmatError> {
        self.m.inverse().map(|m| BraidMatrix { m }).ok_or(RmatError::Singular)
    }

    /// `R̂_12 R̂_23 R̂_12 - R̂_23 R̂_12 R̂_23` on the 27-dimensional triple space.
    pub fn braid_defect(&self) -> Mat {
        let id = Mat::identity(3);
        let r12 = self.m.kron(&id);
        let r23 = id.kron(&self.m);
        let lhs = &(&r12 * &r23) * &r12;
        let rhs = &(&r23 * &r12) * &r23;
        &lhs - &rhs
    }

    pub fn check_braid(&self) -> bool {
        self.braid_defect().is_zero()
    }

    /// `R^{ij}_{kl} = 0` whenever `i + j != k + l` in degree.
    pub fn respects_selection_rule(&self) -> bool {
        (0..81).all(|n| {
            let (a, b) = (n / 9, n % 9);
            let d = |p: usize| degree(p / 3) + degree(p % 3);
            d(a) == d(b) || self.m[(a, b)].is_zero()
        })
    }

    /// The transposition `ξ^i ⊗ ξ^j ↦ ξ^j ⊗ ξ^i`.
    pub fn flip() -> BraidMatrix {
        BraidMatrix {
            m: Mat::from_fn(9, 9, |a, b| {
                if a / 3 == b % 3 && a % 3 == b / 3 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }),
        }
    }

    /// True if every entry has a finite limit at `q = 1` and the limit is the flip.
    pub fn limit_is_flip(&self) -> bool {
        let f = BraidMatrix::flip();
        (0..9).all(|a| {
            (0..9).all(|b| {
                eval_limit(&self.m[(a, b)])
                    .map(|v| Scalar::from_bigrational(&v) == f.m[(a, b)])
                    .unwrap_or(false)
            })
        })
    }
}

/// Checks `g_{il} A^{lh}_{jk} = B^{hl}_{ij} g_{lk}` and its upper-index
/// companion for the two sign choices `(A, B) = (R̂, R̂⁻¹)` and `(R̂⁻¹, R̂)`.
/// Returns the four results in the order (lower, +), (lower, −), (upper, +), (upper, −).
pub fn check_metric_compat(r: &BraidMatrix, rinv: &BraidMatrix, g: &IsoMetric) -> [bool; 4] {
    let lower = |a: &BraidMatrix, b: &BraidMatrix| {
        iter4().all(|(i, j, h, k)| {
            let mut lhs = Scalar::zero();
            let mut rhs = Scalar::zero();
            for l in 0..3 {
                lhs = lhs + g.g(i, l) * a.entry(l, h, j, k);
                rhs = rhs + b.entry(h, l, i, j) * g.g(l, k);
            }
            lhs == rhs
        })
    };
    let upper = |a: &BraidMatrix, b: &BraidMatrix| {
        iter4().all(|(i, j, h, k)| {
            let mut lhs = Scalar::zero();
            let mut rhs = Scalar::zero();
            for l in 0..3 {
                lhs = lhs + g.ginv(i, l) * a.entry(j, k, l, h);
                rhs = rhs + b.entry(i, j, h, l) * g.ginv(l, k);
            }
            lhs == rhs
        })
    };
    [lower(r, rinv), lower(rinv, r), upper(r, rinv), upper(rinv, r)]
}

/// All index quadruples in lexicographic order.
pub fn iter4() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..81).map(|n| (n / 27, (n / 9) % 3, (n / 3) % 3, n % 3))
}

#[derive(Debug, Clone)]
pub struct ProjectorTrio {
    pub ps: Mat,
    pub pa: Mat,
    pub pt: Mat,
}

/// `P_t`, `P_a` and `P_s` from R̂ and the metric.
pub fn build_projectors(r: &BraidMatrix, g: &IsoMetric) -> Result<ProjectorTrio, RmatError> {
    let norm = g.trace_normalizer().inv().unwrap();
    let pt = Mat::from_fn(9, 9, |a, b| g.ginv(a / 3, a % 3) * g.g(b / 3, b % 3) * &norm);
    let q = Scalar::q();
    let qi = q.inv().unwrap();
    let id = Mat::identity(9);
    let num = &(&id.scale(&q) - &r.m) + &pt.scale(&(qi.pow(2) - &q));
    let pa = num.scale(&(&q + &qi).inv().unwrap());
    let ps = &(&id - &pa) - &pt;
    let trio = ProjectorTrio { ps, pa, pt };
    if let Some((name, _)) = trio.checks(r).into_iter().find(|(_, ok)| !ok) {
        return Err(RmatError::Projector(name));
    }
    Ok(trio)
}

impl ProjectorTrio {
    /// Named identities: idempotency, orthogonality, completeness,
    /// decomposition of R̂ and the traces `(5, 3, 1)`.
    pub fn checks(&self, r: &BraidMatrix) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let ps = [("P_s", &self.ps), ("P_a", &self.pa), ("P_t", &self.pt)];
        for (i, (na, a)) in ps.iter().enumerate() {
            for (j, (nb, b)) in ps.iter().enumerate() {
                let prod = *a * *b;
                let ok = if i == j { &prod == *a } else { prod.is_zero() };
                out.push((format!("{na}*{nb}"), ok));
            }
        }
        let id = Mat::identity(9);
        out.push(("P_s+P_a+P_t=1".into(), &(&self.ps + &self.pa) + &self.pt == id));
        let q = Scalar::q();
        let decomp = &(&self.ps.scale(&q) - &self.pa.scale(&q.pow(-1))) + &self.pt.scale(&q.pow(-2));
        out.push(("R=qP_s-q^-1P_a+q^-2P_t".into(), decomp == r.m));
        for ((name, m), t) in ps.iter().zip([5, 3, 1]) {
            out.push((format!("tr {name}={t}"), m.trace() == Scalar::int(t)));
        }
        out
    }

    /// Reduced basis of the relations `P_a{}^{ij}_{kl} x^k x^l = 0`, written
    /// as 9-vectors over the words `x^k x^l`. Pivots are taken on
    /// `x^- x^0`, `x^+ x^0` and `x^+ x^-` first.
    pub fn quadratic_relations(&self) -> Vec<Vec<Scalar>> {
        let lead = [pair(MINUS, ZERO), pair(PLUS, ZERO), pair(PLUS, MINUS)];
        let mut order = lead.to_vec();
        order.extend((0..9).filter(|c| !lead.contains(c)));
        self.pa.row_echelon(&order)
    }
}

/// `(R̂ - q)(R̂ + q⁻¹)(R̂ - q⁻²)`.
pub fn minimal_polynomial(r: &BraidMatrix) -> Mat {
    let id = Mat::identity(9);
    let q = Scalar::q();
    let a = &r.m - &id.scale(&q);
    let b = &r.m + &id.scale(&q.pow(-1));
    let c = &r.m - &id.scale(&q.pow(-2));
    &(&a * &b) * &c
}

/// Everything that depends only on R̂ and g, built once.
#[derive(Debug, Clone)]
pub struct Constants {
    pub g: IsoMetric,
    pub rhat: BraidMatrix,
    pub rhat_inv: BraidMatrix,
    pub proj: ProjectorTrio,
}

impl Constants {
    pub fn build() -> Result<Constants, RmatError> {
        let g = IsoMetric::new();
        let rhat = BraidMatrix::from_relations(&xi_relations())?;
        let rhat_inv = rhat.invert()?;
        let proj = build_projectors(&rhat, &g)?;
        Ok(Constants { g, rhat, rhat_inv, proj })
    }

    /// Shared instance; the construction is deterministic and cannot fail
    /// for the fixed relation table.
    pub fn get() -> &'static Constants {
        static C: OnceLock<Constants> = OnceLock::new();
        C.get_or_init(|| Constants::build().expect("braid matrix construction"))
    }

    /// Matrix by CLI name.
    pub fn named(&self, name: &str) -> Option<Mat> {
        Some(match name {
            "rhat" | "R" => self.rhat.m.clone(),
            "rhatinv" | "Rinv" => self.rhat_inv.m.clone(),
            "ps" | "Ps" => self.proj.ps.clone(),
            "pa" | "Pa" => self.proj.pa.clone(),
            "pt" | "Pt" => self.proj.pt.clone(),
            "g" => self.g.lower.clone(),
            _ => return None,
        })
    }
}

/// Names accepted by [`Constants::named`].
pub const MATRIX_NAMES: [&str; 6] = ["rhat", "rhatinv", "ps", "pa", "pt", "g"];

#[derive(Serialize)]
pub struct MatrixJson {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

fn labels(n: usize) -> Vec<String> {
    if n == 9 {
        (0..9).map(|p| format!("{}{}", INDEX_NAMES[p / 3], INDEX_NAMES[p % 3])).collect()
    } else {
        INDEX_NAMES.iter().take(n).map(|s| s.to_string()).collect()
    }
}

pub fn matrix_json(name: &str, m: &Mat) -> MatrixJson {
    MatrixJson {
        name: name.to_string(),
        rows: m.rows(),
        cols: m.cols(),
        row_labels: labels(m.rows()),
        entries: (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect(),
    }
}

/// Row-major text: one row per line, label first, entries separated by two spaces.
pub fn matrix_text(m: &Mat) -> String {
    let lab = labels(m.rows());
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
        out.push_str(&format!("{:>2} | {}\n", lab[i], row.join("  ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> &'static Constants {
        Constants::get()
    }

    #[test]
    fn rhat_entries() {
        let r = &c().rhat;
        assert_eq!(r.entry(MINUS, MINUS, MINUS, MINUS), &Scalar::q());
        assert!(r.entry(ZERO, MINUS, ZERO, MINUS).is_zero());
        let expected = -(Scalar::h() * (Scalar::q() + Scalar::one())) / Scalar::q();
        assert_eq!(r.entry(ZERO, ZERO, MINUS, PLUS), &expected);
        assert!(r.respects_selection_rule());
    }

    #[test]
    fn conflicting_relation_is_rejected() {
        let mut rels = xi_relations();
        rels.push(XiRelation { i: MINUS, j: MINUS, terms: vec![(MINUS, MINUS, Scalar::one())] });
        assert!(matches!(BraidMatrix::from_relations(&rels), Err(RmatError::Inconsistent { .. })));
    }

    #[test]
    fn braid_equation_for_both() {
        assert!(c().rhat.check_braid());
        assert!(c().rhat_inv.check_braid());
        assert_eq!(&c().rhat.m * &c().rhat_inv.m, Mat::identity(9));
    }

    #[test]
    fn metric_identities() {
        let g = &c().g;
        assert!(g.is_inverse_pair());
        assert_eq!(g.trace_normalizer(), Scalar::q() + Scalar::one() + Scalar::q().pow(-1));
        assert_eq!(check_metric_compat(&c().rhat, &c().rhat_inv, g), [true; 4]);
    }

    #[test]
    fn projectors_and_polynomial() {
        let r = &c().rhat;
        assert!(c().proj.checks(r).iter().all(|(_, ok)| *ok));
        assert!(minimal_polynomial(r).is_zero());
        assert!(r.limit_is_flip());
        assert_eq!(c().proj.pa.rank(), 3);
        assert_eq!(c().proj.ps.rank(), 5);
    }

    #[test]
    fn quadratic_relations_of_the_algebra() {
        let rows = c().proj.quadratic_relations();
        let q = Scalar::q();
        let mut e1 = vec![Scalar::zero(); 9];
        e1[pair(MINUS, ZERO)] = Scalar::one();
        e1[pair(ZERO, MINUS)] = -&q;
        let mut e2 = vec![Scalar::zero(); 9];
        e2[pair(PLUS, ZERO)] = Scalar::one();
        e2[pair(ZERO, PLUS)] = -q.pow(-1);
        let mut e3 = vec![Scalar::zero(); 9];
        e3[pair(PLUS, MINUS)] = Scalar::one();
        e3[pair(MINUS, PLUS)] = -Scalar::one();
        e3[pair(ZERO, ZERO)] = -Scalar::h();
        assert_eq!(rows, vec![e1, e2, e3]);
    }
}
