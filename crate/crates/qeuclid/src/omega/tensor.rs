//! Tensor powers of the 1-form bimodule in the coordinate-form basis.
//!
//! A slot holds one of six basis forms, numbered `0..3` for `ξ^-, ξ^0, ξ^+`
//! and `3..6` for `ξ̄^-, ξ̄^0, ξ̄^+`. Every tensor is stored as a sum of
//! `f ω^{s1} ⊗ ... ⊗ ω^{sN}` with the coefficient `f` pulled to the left.

use crate::ncalg::{Algebra, Element, Letter, Monomial, BXI, XI};
use crate::qscalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Basis form for slot value `k`.
pub fn form_letter(k: u8) -> Letter {
    if k < 3 {
        Letter::xi(k as usize)
    } else {
        Letter::bxi(k as usize - 3)
    }
}

/// Inverse of [`form_letter`].
pub fn form_slot(l: Letter) -> u8 {
    debug_assert!(l.is_form());
    if l.slot >= BXI {
        l.slot - BXI + 3
    } else {
        l.slot - XI
    }
}

/// Rendering name of slot `k`.
pub fn slot_name(k: u8) -> &'static str {
    ["xim", "xiz", "xip", "bxim", "bxiz", "bxip"][k as usize]
}

/// Writes a 1-form as `Σ_k f_k ω^k` with coefficients on the left.
pub fn split_one_form(e: &Element) -> [Element; 6] {
    let mut out: [Element; 6] = Default::default();
    for (m, c) in e.terms() {
        assert_eq!(m.form_degree(), 1, "not a 1-form: {}", e.render());
        let k = m.forms.trailing_zeros() as u8;
        out[k as usize].add_term(m.coordinate_part(), c.clone());
    }
    out
}

/// Writes a 2-form as `Σ_{k<l} f_kl ω^k ω^l`, indexed by the ordered pair.
pub fn split_two_form(e: &Element) -> BTreeMap<(u8, u8), Element> {
    let mut out: BTreeMap<(u8, u8), Element> = BTreeMap::new();
    for (m, c) in e.terms() {
        assert_eq!(m.form_degree(), 2, "not a 2-form: {}", e.render());
        let k = m.forms.trailing_zeros() as u8;
        let l = 7 - m.forms.leading_zeros() as u8;
        out.entry((k, l)).or_default().add_term(m.coordinate_part(), c.clone());
    }
    out
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[u8; N], Element>,
}

/// Second tensor power.
pub type TensorBi = Tensor<2>;
/// Third tensor power.
pub type TensorTri = Tensor<3>;

impl<const N: usize> fmt::Debug for Tensor<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<const N: usize> Tensor<N> {
    pub fn zero() -> Self {
        Tensor { terms: BTreeMap::new() }
    }

    /// `c ω^{s1} ⊗ ... ⊗ ω^{sN}`.
    pub fn basis(slots: [u8; N], c: Element) -> Self {
        let mut t = Tensor::zero();
        t.add(slots, &c);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; N], &Element)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[u8; N]) -> Element {
        self.terms.get(slots).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, slots: [u8; N], c: &Element) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(slots).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&slots);
        }
    }

    pub fn add_tensor(&mut self, other: &Self, c: &Scalar) {
        for (s, e) in &other.terms {
            self.add(*s, &e.scale(c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut t = Tensor::zero();
        t.add_tensor(self, c);
        t
    }

    /// `f t`.
    pub fn mul_left(&self, alg: &Algebra, f: &Element) -> Self {
        let mut t = Tensor::zero();
        for (s, e) in &self.terms {
            t.add(*s, &alg.mul(f, e));
        }
        t
    }

    /// `t f`, with `f` moved through every slot to the left.
    pub fn mul_right(&self, alg: &Algebra, f: &Element) -> Self {
        let mut t = Tensor::zero();
        for (s, e) in &self.terms {
            for (slots, h) in push_through(alg, s, f) {
                let slots: [u8; N] = slots.try_into().expect("arity");
                t.add(slots, &alg.mul(e, &h));
            }
        }
        t
    }

    /// `ω_1 ⊗ ... ⊗ ω_N` for arbitrary 1-forms.
    pub fn from_forms(alg: &Algebra, forms: [&Element; N]) -> Self {
        let mut cur: BTreeMap<Vec<u8>, Element> = BTreeMap::new();
        cur.insert(Vec::new(), Element::one());
        for w in forms.iter().rev() {
            let mut next: BTreeMap<Vec<u8>, Element> = BTreeMap::new();
            for (rest, c) in &cur {
                let parts = split_one_form(&alg.mul(w, c));
                for (k, f) in parts.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let mut slots = vec![k as u8];
                    slots.extend_from_slice(rest);
                    *next.entry(slots).or_default() += f;
                }
            }
            cur = next;
        }
        let mut t = Tensor::zero();
        for (s, c) in cur {
            t.add(s.try_into().expect("arity"), &c);
        }
        t
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let slots: Vec<&str> = s.iter().map(|&k| slot_name(k)).collect();
                let coef = c.render();
                let coef = if c.len() > 1 { format!("({coef})") } else { coef };
                format!("{coef} (*) {}", slots.join(" (x) "))
            })
            .collect();
        parts.join(" + ")
    }
}

impl<const N: usize> std::ops::Sub for &Tensor<N> {
    type Output = Tensor<N>;
    fn sub(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut t = self.clone();
        t.add_tensor(rhs, &-Scalar::one());
        t
    }
}

impl<const N: usize> std::ops::Add for &Tensor<N> {
    type Output = Tensor<N>;
    fn add(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut t = self.clone();
        t.add_tensor(rhs, &Scalar::one());
        t
    }
}

/// `ω^{s1} ⊗ ... ⊗ ω^{sn} f = Σ h ω^{t1} ⊗ ... ⊗ ω^{tn}`.
pub fn push_through(alg: &Algebra, slots: &[u8], f: &Element) -> Vec<(Vec<u8>, Element)> {
    let Some((&last, prefix)) = slots.split_last() else {
        return vec![(Vec::new(), f.clone())];
    };
    let moved = alg.mul(&Element::letter(form_letter(last)), f);
    let mut out = Vec::new();
    for (k, g) in split_one_form(&moved).iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        for (mut pre, h) in push_through(alg, prefix, g) {
            pre.push(k as u8);
            out.push((pre, h));
        }
    }
    out
}

impl TensorBi {
    /// Wedge product of the two slots.
    pub fn pi(&self, alg: &Algebra) -> Element {
        let mut out = Element::zero();
        for (s, c) in &self.terms {
            let w = alg.normalize_word(Scalar::one(), &[form_letter(s[0]), form_letter(s[1])]);
            out += &alg.mul(c, &w);
        }
        out
    }
}

impl TensorTri {
    /// Wedge product of the first two slots; the result is the 2-form
    /// multiplying each basis form of the last slot.
    pub fn pi12(&self, alg: &Algebra) -> [Element; 6] {
        let mut out: [Element; 6] = Default::default();
        for (s, c) in &self.terms {
            let w = alg.normalize_word(Scalar::one(), &[form_letter(s[0]), form_letter(s[1])]);
            out[s[2] as usize] += &alg.mul(c, &w);
        }
        out
    }
}

/// `ω^k` as an element.
pub fn form(k: u8) -> Element {
    Element::monomial(Monomial::letter(form_letter(k)))
}
