//! Structural checks on the rule table: local confluence, termination and
//! low-degree center computations.

use super::element::Element;
use super::engine::Algebra;
use super::monomial::{Letter, Monomial, LAM, R, X0, XM, XP};
use crate::qscalar::Scalar;
use crate::rmat::Mat;
use std::collections::BTreeMap;

/// An overlap `a b c` where both `a b` and `b c` can be rewritten.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub word: [Letter; 3],
    /// `(ab)c - a(bc)` after full normalisation.
    pub difference: Element,
}

impl CriticalPair {
    pub fn joins(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn label(&self) -> String {
        format!("{} {} {}", self.word[0], self.word[1], self.word[2])
    }
}

/// One-step reduct of the two-letter word `a b`, or `None` if it is normal.
/// Cancellation of a generator against its inverse counts as a rule.
fn reduct(alg: &Algebra, a: Letter, b: Letter) -> Option<Element> {
    if a.slot == b.slot && a.info().invertible {
        return (a.inv != b.inv).then(Element::one);
    }
    let out_of_order = a.slot > b.slot;
    let same_form = a.slot == b.slot && a.is_form();
    let mixed = alg.cfg.radius_reduction && a.slot == XM && b.slot == XP;
    if !(out_of_order || same_form || mixed) {
        return None;
    }
    if same_form && a.index() != 1 {
        return Some(Element::zero());
    }
    Some(alg.pair_rule(a, b))
}

/// Every overlap of two rules, with the difference of the two reductions.
pub fn critical_pairs(alg: &Algebra) -> Vec<CriticalPair> {
    let letters = Letter::all();
    let mut out = Vec::new();
    for &a in &letters {
        for &b in &letters {
            let Some(ab) = reduct(alg, a, b) else { continue };
            for &c in &letters {
                let Some(bc) = reduct(alg, b, c) else { continue };
                let left = alg.mul_letter(&alg.normalize(&ab), c);
                let right = alg.mul(&Element::letter(a), &alg.normalize(&bc));
                out.push(CriticalPair { word: [a, b, c], difference: &left - &right });
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct TerminationReport {
    /// Two-letter words that are rewritten.
    pub rules: usize,
    /// Rules whose right-hand side is a combination of slot-ordered words.
    pub ordered_rhs: usize,
    /// Two-letter words whose normal form contains only normal monomials.
    pub normalized: usize,
}

impl TerminationReport {
    pub fn ok(&self) -> bool {
        self.rules == self.ordered_rhs && self.rules == self.normalized
    }
}

fn is_normal(alg: &Algebra, m: &Monomial) -> bool {
    !(alg.cfg.radius_reduction && m.xm > 0 && m.xp > 0)
}

/// Each rule replaces one inversion by slot-ordered words, and normalising
/// every two-letter word terminates in normal monomials.
pub fn termination_report(alg: &Algebra) -> TerminationReport {
    let letters = Letter::all();
    let mut rep = TerminationReport { rules: 0, ordered_rhs: 0, normalized: 0 };
    for &a in &letters {
        for &b in &letters {
            let Some(rhs) = reduct(alg, a, b) else { continue };
            rep.rules += 1;
            // Monomials are slot-ordered by construction; the only way a
            // right-hand side can fail to be ordered is a repeated form.
            if rhs.terms().all(|(m, _)| m.letters().windows(2).all(|w| w[0].slot <= w[1].slot)) {
                rep.ordered_rhs += 1;
            }
            let nf = alg.normalize_word(Scalar::one(), &[a, b]);
            if nf.terms().all(|(m, _)| is_normal(alg, m)) {
                rep.normalized += 1;
            }
        }
    }
    rep
}

/// Normal coordinate monomials with `|Λ| <= 1`, `|r|, |x0| <= bound` and
/// at most `bound` factors of `x±`, grouped by grading degree.
fn coordinate_basis(alg: &Algebra, bound: i32) -> BTreeMap<i32, Vec<Monomial>> {
    let mut out: BTreeMap<i32, Vec<Monomial>> = BTreeMap::new();
    for lam in -1..=1 {
        for r in -bound..=bound {
            for x0 in -bound..=bound {
                for xm in 0..=bound as u32 {
                    for xp in 0..=bound as u32 {
                        if xm + xp > bound as u32 || (alg.cfg.radius_reduction && xm > 0 && xp > 0) {
                            continue;
                        }
                        let m = Monomial { lam, r, x0, xm, xp, ..Monomial::one() };
                        out.entry(m.degree()).or_default().push(m);
                    }
                }
            }
        }
    }
    out
}

/// Dimension of the space of elements commuting with all generators
/// `Λ, r, x-, x0, x+`, per grading degree, over the truncated basis.
pub fn center_kernel_dims(alg: &Algebra, bound: i32) -> BTreeMap<i32, usize> {
    let gens = [
        Element::letter(Letter::new(LAM)),
        Element::letter(Letter::new(R)),
        Element::letter(Letter::new(X0)),
        Element::letter(Letter::new(XM)),
        Element::letter(Letter::new(XP)),
    ];
    let mut dims = BTreeMap::new();
    for (deg, basis) in coordinate_basis(alg, bound) {
        let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut cols: Vec<Vec<((usize, Monomial), Scalar)>> = Vec::new();
        for m in &basis {
            let f = Element::monomial(*m);
            let mut col = Vec::new();
            for (gi, g) in gens.iter().enumerate() {
                for (mm, c) in alg.commutator(&f, g).terms() {
                    let key = (gi, *mm);
                    let n = rows.len();
                    rows.entry(key).or_insert(n);
                    col.push((key, c.clone()));
                }
            }
            cols.push(col);
        }
        let mut mat = Mat::zeros(rows.len().max(1), basis.len());
        for (j, col) in cols.iter().enumerate() {
            for (key, c) in col {
                mat[(rows[key], j)] = c.clone();
            }
        }
        dims.insert(deg, basis.len() - mat.rank());
    }
    dims
}

/// `g_ij x^i x^j` normalises to `r²`, `r²` commutes with every `x^i` and
/// fails to commute with `Λ`.
pub fn radius_checks(alg: &Algebra) -> Vec<(String, bool)> {
    let g = &alg.consts.g;
    let mut r2 = Element::zero();
    for i in 0..3 {
        for j in 0..3 {
            let c = g.g(i, j);
            if !c.is_zero() {
                r2.add_scaled(&alg.mul(&alg.x(i), &alg.x(j)), c);
            }
        }
    }
    let rr = alg.r_pow(2);
    let mut out = vec![("g_ij x^i x^j = r^2".to_string(), r2 == rr)];
    for i in 0..3 {
        out.push((format!("[r^2, x^{}] = 0", ["-", "0", "+"][i]), alg.commutator(&rr, &alg.x(i)).is_zero()));
    }
    out.push(("[r^2, Lam] != 0".into(), !alg.commutator(&rr, &alg.lam_pow(1)).is_zero()));
    out
}
