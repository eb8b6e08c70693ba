//! The pair-rewriting normal-ordering engine.
//!
//! Words are normalised one letter at a time: appending a letter `g` to a
//! normal monomial `p L` either extends it directly, or replaces the pair
//! `L g` by the right-hand side of its rule and appends those words to `p`.
//! Results of the second kind are memoised per [`Algebra`].

use super::element::Element;
use super::monomial::{Letter, Monomial, BXI, LAM, R, X0, XI, XM, XP};
use crate::qscalar::Scalar;
use crate::rmat::{Constants, ZERO};
use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;

/// Options that change the relation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Config {
    /// Rewrite `x- x+` through `r² = g_ij x^i x^j`.
    pub radius_reduction: bool,
    /// Use `Λ ξ = ξ Λ` instead of `ξ Λ = q Λ ξ`.
    pub lambda_commutes_with_forms: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { radius_reduction: true, lambda_commutes_with_forms: false }
    }
}

/// The rule table together with a cache of reductions.
///
/// Not `Sync`: each thread builds its own instance.
pub struct Algebra {
    pub cfg: Config,
    pub consts: &'static Constants,
    cache: RefCell<HashMap<(Monomial, Letter), Rc<Element>>>,
    x0inv: OnceCell<[[Element; 3]; 2]>,
}

impl Default for Algebra {
    fn default() -> Self {
        Algebra::new(Config::default())
    }
}

enum Step {
    Direct(Monomial),
    Zero,
    Rule(Monomial, Letter),
}

impl Algebra {
    pub fn new(cfg: Config) -> Algebra {
        Algebra { cfg, consts: Constants::get(), cache: RefCell::new(HashMap::new()), x0inv: OnceCell::new() }
    }

    /// Number of memoised reductions.
    pub fn cache_size(&self) -> usize {
        self.cache.borrow().len()
    }

    fn step(&self, m: &Monomial, g: Letter) -> Step {
        let Some(ls) = m.last_slot() else {
            return Step::Direct(m.with(g));
        };
        if ls < g.slot {
            if self.cfg.radius_reduction && ls == XM && g.slot == XP {
                let (p, l) = m.pop_last().unwrap();
                return Step::Rule(p, l);
            }
            return Step::Direct(m.with(g));
        }
        if ls == g.slot {
            return match g.slot {
                LAM | R | X0 | XM | XP => Step::Direct(m.with(g)),
                s if (s - XI) % 3 == 1 => {
                    let (p, l) = m.pop_last().unwrap();
                    Step::Rule(p, l)
                }
                _ => Step::Zero,
            };
        }
        let (p, l) = m.pop_last().unwrap();
        Step::Rule(p, l)
    }

    /// Adds `c * (m · g)` in normal form to `out`.
    fn append_into(&self, m: &Monomial, g: Letter, c: &Scalar, out: &mut Element) {
        match self.step(m, g) {
            Step::Direct(n) => out.add_term(n, c.clone()),
            Step::Zero => {}
            Step::Rule(p, l) => {
                let key_m = m.without_alpha();
                let cached = self.cache.borrow().get(&(key_m, g)).cloned();
                let res = match cached {
                    Some(r) => r,
                    None => {
                        let rhs = self.pair_rule(l, g);
                        let p0 = p.without_alpha();
                        let mut acc = Element::zero();
                        for (w, wc) in rhs.terms() {
                            let prod = self.mul_monomials(&p0, w);
                            acc.add_scaled(&prod, wc);
                        }
                        let r = Rc::new(acc);
                        self.cache.borrow_mut().insert((key_m, g), r.clone());
                        r
                    }
                };
                out.add_scaled_shifted(&res, c, m.alpha);
            }
        }
    }

    /// `a · g` for an element and a single letter.
    pub fn mul_letter(&self, a: &Element, g: Letter) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            self.append_into(m, g, c, &mut out);
        }
        out
    }

    /// Normal form of the product of two normal monomials.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        let mut cur = Element::monomial(*a);
        for l in b.letters() {
            cur = self.mul_letter(&cur, l);
            if cur.is_zero() {
                break;
            }
        }
        cur.alpha_shift(b.alpha)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        if a.is_zero() || b.is_zero() {
            return out;
        }
        for (mb, cb) in b.terms() {
            let mut cur = a.clone();
            for l in mb.letters() {
                cur = self.mul_letter(&cur, l);
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled_shifted(&cur, cb, mb.alpha);
        }
        out
    }

    /// Product of several factors, left to right.
    pub fn product(&self, fs: &[&Element]) -> Element {
        let mut it = fs.iter();
        let Some(first) = it.next() else {
            return Element::one();
        };
        it.fold((*first).clone(), |acc, f| self.mul(&acc, f))
    }

    /// Normal form of `c * l_1 l_2 ... l_n`.
    pub fn normalize_word(&self, c: Scalar, word: &[Letter]) -> Element {
        let mut cur = Element::scalar(c);
        for &l in word {
            cur = self.mul_letter(&cur, l);
        }
        cur
    }

    /// Re-normalises an element whose monomials may violate the current
    /// configuration (e.g. mixed `x- x+` built with radius reduction off).
    pub fn normalize(&self, a: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let e = self.normalize_word(c.clone(), &m.letters());
            out.add_scaled_shifted(&e, &Scalar::one(), m.alpha);
        }
        out
    }

    pub fn pow(&self, a: &Element, n: u32) -> Element {
        (0..n).fold(Element::one(), |acc, _| self.mul(&acc, a))
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba` for homogeneous form degrees.
    pub fn graded_commutator(&self, a: &Element, b: &Element) -> Element {
        let da = a.max_form_degree();
        let db = b.max_form_degree();
        if (da * db) % 2 == 1 {
            &self.mul(a, b) + &self.mul(b, a)
        } else {
            self.commutator(a, b)
        }
    }

    /// Right-hand side of the rule for the out-of-order (or same-slot)
    /// pair `l g`, as a combination of slot-ordered words.
    pub fn pair_rule(&self, l: Letter, g: Letter) -> Element {
        let q = Scalar::q();
        let word = |c: Scalar, ls: &[Letter]| {
            Element::term(ls.iter().fold(Monomial::one(), |m, &x| m.with(x)), c)
        };
        let (sl, sg) = (l.sign() as i64, g.sign() as i64);
        match (l.slot, g.slot) {
            (XM, XP) => {
                // r² = (s + 1/s) x- x+ + q x0²
                let k = (Scalar::s() + Scalar::s_pow(-1)).inv().unwrap();
                let mut e = word(k.clone(), &[Letter::new(R), Letter::new(R)]);
                e.add_scaled(&word(-(&k * &q), &[Letter::new(X0), Letter::new(X0)]), &Scalar::one());
                e
            }
            (a, b) if a == b && l.is_form() => {
                let base = if l.is_barred() { BXI } else { XI };
                word(Scalar::h(), &[Letter::new(base), Letter::new(base + 2)])
            }
            (R, LAM) | (X0, LAM) => word(q.pow(sl * sg), &[g, l]),
            (XM, LAM) | (XP, LAM) => word(q.pow(sg), &[g, l]),
            (X0, R) | (XM, R) | (XP, R) => word(Scalar::one(), &[g, l]),
            (XM, X0) => word(q.pow(sg), &[g, l]),
            (XP, X0) => word(q.pow(-sg), &[g, l]),
            (XP, XM) => {
                let mut e = word(Scalar::one(), &[g, l]);
                e.add_term(Monomial::one().with(Letter::new(X0)).with(Letter::new(X0)), Scalar::h());
                e
            }
            (f, LAM) if f >= XI => {
                if self.cfg.lambda_commutes_with_forms {
                    word(Scalar::one(), &[g, l])
                } else {
                    word(q.pow(sg), &[g, l])
                }
            }
            (f, R) if f >= XI => {
                let e = if l.is_barred() { sg } else { -sg };
                word(q.pow(e), &[g, l])
            }
            (f, X0) if f >= XI && g.inv => {
                let rules = self.x0inv.get_or_init(|| self.build_x0inv_rules());
                rules[l.is_barred() as usize][l.index()].clone()
            }
            (f, X0 | XM | XP) if f >= XI => self.form_coordinate_rule(l, g.index()),
            (a, b) if a >= BXI && b >= BXI => self.form_form_rule(a - BXI, b - BXI, BXI),
            (a, b) if a >= BXI && b >= XI => {
                // ξ̄^h ξ^k = -q R̂^{hk}_{ij} ξ^i ξ̄^j
                let r = &self.consts.rhat;
                let (hh, k) = (l.index(), g.index());
                let mut e = Element::zero();
                for i in 0..3 {
                    for j in 0..3 {
                        let c = r.entry(hh, k, i, j);
                        if !c.is_zero() {
                            e += &word(-(&q * c), &[Letter::xi(i), Letter::bxi(j)]);
                        }
                    }
                }
                e
            }
            (a, b) if a >= XI && b >= XI => self.form_form_rule(a - XI, b - XI, XI),
            _ => panic!("no rule for the in-order pair {l} {g}"),
        }
    }

    /// `ξ^k x^l = q⁻¹ R̂⁻¹^{kl}_{ij} x^i ξ^j` and `ξ̄^k x^l = q R̂^{kl}_{ij} x^i ξ̄^j`.
    fn form_coordinate_rule(&self, form: Letter, l: usize) -> Element {
        let (mat, pref) = if form.is_barred() {
            (&self.consts.rhat, Scalar::q())
        } else {
            (&self.consts.rhat_inv, Scalar::q().pow(-1))
        };
        let k = form.index();
        let mut e = Element::zero();
        for i in 0..3 {
            for j in 0..3 {
                let c = mat.entry(k, l, i, j);
                if c.is_zero() {
                    continue;
                }
                let f = if form.is_barred() { Letter::bxi(j) } else { Letter::xi(j) };
                e.add_term(Monomial::letter(Letter::x(i)).with(f), &pref * c);
            }
        }
        e
    }

    /// `ξ0 ξ- = -q ξ- ξ0`, `ξ+ ξ0 = -q ξ0 ξ+`, `ξ+ ξ- = -ξ- ξ+`, identical for ξ̄.
    fn form_form_rule(&self, a: u8, b: u8, base: u8) -> Element {
        let q = Scalar::q();
        let c = match (a, b) {
            (1, 0) | (2, 1) => -q,
            (2, 0) => -Scalar::one(),
            _ => unreachable!("form pair in order"),
        };
        Element::term(Monomial::letter(Letter::new(base + b)).with(Letter::new(base + a)), c)
    }

    /// `ξ^k x0⁻¹ = Σ_j B_kj ξ^j` with `B` the inverse of the matrix `A` in
    /// `ξ^k x0 = Σ_j A_kj ξ^j`. `A` is diagonal plus nilpotent, so the
    /// Neumann series terminates after three terms.
    fn build_x0inv_rules(&self) -> [[Element; 3]; 2] {
        let mk = |barred: bool| -> [Element; 3] {
            let a = self.x0_matrix(barred);
            let mut dinv: Vec<Element> = Vec::new();
            let mut n: Vec<Vec<Element>> = vec![vec![Element::zero(); 3]; 3];
            for k in 0..3 {
                let d = a[k][k].clone();
                let (m, c) = d.terms().next().map(|(m, c)| (*m, c.clone())).expect("diagonal entry");
                assert!(d.len() == 1 && m == Monomial::letter(Letter::new(X0)), "diagonal must be c x0");
                dinv.push(Element::term(Monomial::letter(Letter::inverse(X0)), c.inv().unwrap()));
                for j in 0..3 {
                    if j != k {
                        n[k][j] = a[k][j].clone();
                    }
                }
            }
            // T = -D⁻¹ N
            let t: Vec<Vec<Element>> = (0..3)
                .map(|k| (0..3).map(|j| -&self.mul(&dinv[k], &n[k][j])).collect())
                .collect();
            let matmul = |x: &Vec<Vec<Element>>, y: &Vec<Vec<Element>>| -> Vec<Vec<Element>> {
                (0..3)
                    .map(|i| {
                        (0..3)
                            .map(|j| {
                                let mut s = Element::zero();
                                for k in 0..3 {
                                    s += &self.mul(&x[i][k], &y[k][j]);
                                }
                                s
                            })
                            .collect()
                    })
                    .collect()
            };
            let id: Vec<Vec<Element>> = (0..3)
                .map(|i| (0..3).map(|j| if i == j { Element::one() } else { Element::zero() }).collect())
                .collect();
            let t2 = matmul(&t, &t);
            let series: Vec<Vec<Element>> =
                (0..3).map(|i| (0..3).map(|j| &(&id[i][j] + &t[i][j]) + &t2[i][j]).collect()).collect();
            let dm: Vec<Vec<Element>> = (0..3)
                .map(|i| (0..3).map(|j| if i == j { dinv[i].clone() } else { Element::zero() }).collect())
                .collect();
            let b = matmul(&series, &dm);
            let mut out: [Element; 3] = Default::default();
            for (k, slot) in out.iter_mut().enumerate() {
                let mut e = Element::zero();
                for (j, bkj) in b[k].iter().enumerate() {
                    let f = if barred { Letter::bxi(j) } else { Letter::xi(j) };
                    e += &self.mul_letter(bkj, f);
                }
                *slot = e;
            }
            out
        };
        [mk(false), mk(true)]
    }

    /// `A_kj` with `ξ^k x0 = Σ_j A_kj ξ^j`, read off the form-coordinate rule.
    pub fn x0_matrix(&self, barred: bool) -> Vec<Vec<Element>> {
        let mut a = vec![vec![Element::zero(); 3]; 3];
        for (k, row) in a.iter_mut().enumerate() {
            let f = if barred { Letter::bxi(k) } else { Letter::xi(k) };
            let rule = self.form_coordinate_rule(f, ZERO);
            for (m, c) in rule.terms() {
                let j = (0..3).find(|&j| m.forms == 1 << (j + if barred { 3 } else { 0 })).unwrap();
                row[j].add_term(m.coordinate_part(), c.clone());
            }
        }
        a
    }
}
