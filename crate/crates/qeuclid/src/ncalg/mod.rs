//! Normal ordering in the algebra generated by the coordinates, `x0⁻¹`,
//! `r^{±1}`, `Λ^{±1}`, the forms `ξ^i`, `ξ̄^i` and the central unit `α`.
//!
//! Normal monomials are ordered as
//! `α Λ r x0 x- x+ ξ- ξ0 ξ+ ξ̄- ξ̄0 ξ̄+`; with radius reduction `x- x+`
//! never occurs because it is expressed through `r²` and `x0²`.

mod checks;
mod element;
mod engine;
mod monomial;

pub use checks::{
    center_kernel_dims, critical_pairs, radius_checks, termination_report, CriticalPair,
    TerminationReport,
};
pub use element::Element;
pub use engine::{Algebra, Config};
pub use monomial::{GeneratorInfo, Letter, Monomial, BXI, GENERATORS, LAM, R, X0, XI, XM, XP};

use crate::qscalar::Scalar;

impl Algebra {
    /// Image of a single letter under the involution.
    pub fn star_letter(&self, l: Letter) -> Element {
        let s = Scalar::s();
        let si = Scalar::s_pow(-1);
        let t = |c: Scalar, l: Letter| Element::term(Monomial::letter(l), c);
        match l.slot {
            LAM => Element::letter(Letter { slot: LAM, inv: !l.inv }),
            R | X0 => Element::letter(l),
            XM => t(s, Letter::new(XP)),
            XP => t(si, Letter::new(XM)),
            _ => {
                let other = |i: usize| if l.is_barred() { Letter::xi(i) } else { Letter::bxi(i) };
                match l.index() {
                    0 => t(s, other(2)),
                    1 => Element::letter(other(1)),
                    _ => t(si, other(0)),
                }
            }
        }
    }

    /// Involution of a monomial: the reversed product of the letter images.
    pub fn star_monomial(&self, m: &Monomial) -> Element {
        let mut cur = Element::monomial(Monomial::alpha_pow(m.alpha));
        for l in m.letters().into_iter().rev() {
            cur = self.mul(&cur, &self.star_letter(l));
        }
        cur
    }

    /// Anti-linear (trivially, the coefficients are real), anti-multiplicative
    /// involution.
    pub fn star(&self, a: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.star_monomial(m), c);
        }
        out
    }

    /// `x^i` as an element.
    pub fn x(&self, i: usize) -> Element {
        Element::letter(Letter::x(i))
    }

    pub fn xi(&self, i: usize) -> Element {
        Element::letter(Letter::xi(i))
    }

    pub fn bxi(&self, i: usize) -> Element {
        Element::letter(Letter::bxi(i))
    }

    /// `r^k`.
    pub fn r_pow(&self, k: i32) -> Element {
        Element::monomial(Monomial { r: k, ..Monomial::one() })
    }

    /// `Λ^k`.
    pub fn lam_pow(&self, k: i32) -> Element {
        Element::monomial(Monomial { lam: k, ..Monomial::one() })
    }

    /// `x0^k`.
    pub fn x0_pow(&self, k: i32) -> Element {
        Element::monomial(Monomial { x0: k, ..Monomial::one() })
    }

    /// Inverse of `c m` when `m` involves only `α`, `Λ`, `r` and `x0`.
    pub fn invert_unit(&self, e: &Element) -> Option<Element> {
        if e.len() != 1 {
            return None;
        }
        let (m, c) = e.terms().next()?;
        if m.xm != 0 || m.xp != 0 || m.has_forms() {
            return None;
        }
        let word: Vec<Letter> = m.letters().into_iter().rev().map(|l| Letter { slot: l.slot, inv: !l.inv }).collect();
        let inv = self.normalize_word(c.inv().ok()?, &word);
        Some(inv.alpha_shift(-m.alpha))
    }

    /// `α^k`.
    pub fn alpha_pow(&self, k: i32) -> Element {
        Element::monomial(Monomial::alpha_pow(k))
    }
}

#[cfg(test)]
mod tests;
