//! Differential forms on top of the rewrite engine: the invariant 1-forms,
//! both exterior differentials, tensors of 1-forms, the generalized flips
//! and the metric.

mod tensor;

pub use tensor::{
    form, form_letter, form_slot, push_through, slot_name, split_one_form, split_two_form, Tensor,
    TensorBi, TensorTri,
};

use crate::ncalg::{Algebra, Element};
use crate::qscalar::Scalar;
use crate::rmat::{Constants, Mat};
use std::fmt;
use std::str::FromStr;

/// The two flips admitted by the conformal compatibility condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaChoice {
    /// `S = q R̂`.
    QR,
    /// `S = (q R̂)⁻¹`.
    QRInv,
}

impl SigmaChoice {
    pub const ALL: [SigmaChoice; 2] = [SigmaChoice::QR, SigmaChoice::QRInv];

    pub fn matrix(self, c: &Constants) -> Mat {
        match self {
            SigmaChoice::QR => c.rhat.m.scale(&Scalar::q()),
            SigmaChoice::QRInv => c.rhat_inv.m.scale(&Scalar::q_pow(-1)),
        }
    }

    pub fn other(self) -> SigmaChoice {
        match self {
            SigmaChoice::QR => SigmaChoice::QRInv,
            SigmaChoice::QRInv => SigmaChoice::QR,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SigmaChoice::QR => "qR",
            SigmaChoice::QRInv => "qRinv",
        }
    }
}

impl fmt::Display for SigmaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SigmaChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "qR" => Ok(SigmaChoice::QR),
            "qRinv" => Ok(SigmaChoice::QRInv),
            _ => Err(format!("unknown sigma `{s}` (expected qR or qRinv)")),
        }
    }
}

/// Which bimodule of 1-forms a construction lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Calculus {
    Unbarred,
    Barred,
    Enlarged,
}

impl Calculus {
    pub const ALL: [Calculus; 3] = [Calculus::Unbarred, Calculus::Barred, Calculus::Enlarged];

    pub fn name(self) -> &'static str {
        match self {
            Calculus::Unbarred => "unbarred",
            Calculus::Barred => "barred",
            Calculus::Enlarged => "enlarged",
        }
    }

    /// Slot values (see [`form_letter`]) spanned by the calculus.
    pub fn slots(self) -> std::ops::Range<u8> {
        match self {
            Calculus::Unbarred => 0..3,
            Calculus::Barred => 3..6,
            Calculus::Enlarged => 0..6,
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Calculus {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unbarred" => Ok(Calculus::Unbarred),
            "barred" => Ok(Calculus::Barred),
            "enlarged" => Ok(Calculus::Enlarged),
            _ => Err(format!("unknown calculus `{s}` (expected unbarred, barred or enlarged)")),
        }
    }
}

/// Constant matrices of a generalized flip on the rank-6 bimodule:
/// `S` on unbarred pairs, `S̄` on barred pairs, `V` on (unbarred, barred)
/// and `V̄` on (barred, unbarred). The mixed blocks exchange the bar
/// pattern of the two slots.
#[derive(Debug, Clone)]
pub struct Sigma {
    pub s: Mat,
    pub sbar: Mat,
    pub v: Mat,
    pub vbar: Mat,
}

impl Sigma {
    pub fn new(s: SigmaChoice, sbar: SigmaChoice) -> Sigma {
        let c = Constants::get();
        let q = Scalar::q();
        Sigma {
            s: s.matrix(c),
            sbar: sbar.matrix(c),
            v: parity_twist(&c.rhat_inv.m.scale(&q)),
            vbar: parity_twist(&c.rhat.m.scale(&q.pow(-1))),
        }
    }

    /// The pairing under which the enlarged calculus is exactly compatible.
    pub fn enlarged() -> Sigma {
        Sigma::new(SigmaChoice::QR, SigmaChoice::QRInv)
    }

    /// Image of the pair of slot values `(a, b)` as `(coefficient, (c, d))`.
    pub fn on_pair(&self, a: u8, b: u8) -> Vec<(Scalar, [u8; 2])> {
        let (ba, bb) = (a >= 3, b >= 3);
        let (m, oa, ob) = match (ba, bb) {
            (false, false) => (&self.s, 0, 0),
            (true, true) => (&self.sbar, 3, 3),
            (false, true) => (&self.v, 3, 0),
            (true, false) => (&self.vbar, 0, 3),
        };
        let row = 3 * (a % 3) as usize + (b % 3) as usize;
        let mut out = Vec::new();
        for k in 0..3u8 {
            for l in 0..3u8 {
                let c = &m[(row, 3 * k as usize + l as usize)];
                if !c.is_zero() {
                    out.push((c.clone(), [k + oa, l + ob]));
                }
            }
        }
        out
    }

    pub fn apply(&self, t: &TensorBi) -> TensorBi {
        let mut out = TensorBi::zero();
        for (s, c) in t.terms() {
            for (k, d) in self.on_pair(s[0], s[1]) {
                out.add(d, &c.scale(&k));
            }
        }
        out
    }

    pub fn apply12(&self, t: &TensorTri) -> TensorTri {
        let mut out = TensorTri::zero();
        for (s, c) in t.terms() {
            for (k, d) in self.on_pair(s[0], s[1]) {
                out.add([d[0], d[1], s[2]], &c.scale(&k));
            }
        }
        out
    }

    pub fn apply23(&self, t: &TensorTri) -> TensorTri {
        let mut out = TensorTri::zero();
        for (s, c) in t.terms() {
            for (k, d) in self.on_pair(s[1], s[2]) {
                out.add([s[0], d[0], d[1]], &c.scale(&k));
            }
        }
        out
    }
}

/// `(-1)^(a+d) M^{ab}_{cd}`, the conjugation of `M` by `diag(1, -1, 1)` on
/// the first input and the second output slot.
pub fn parity_twist(m: &Mat) -> Mat {
    Mat::from_fn(9, 9, |r, c| if (r / 3 + c % 3) % 2 == 0 { m[(r, c)].clone() } else { -m[(r, c)].clone() })
}

/// The invariant 1-forms `η = g_ij x^i ξ^j`, `η̄`, and the Dirac operators
/// `θ`, `θ̄` of the two calculi.
#[derive(Debug, Clone)]
pub struct InvariantForms {
    pub eta: Element,
    pub eta_bar: Element,
    pub theta: Element,
    pub theta_bar: Element,
}

impl InvariantForms {
    pub fn new(alg: &Algebra) -> InvariantForms {
        let g = &alg.consts.g;
        let mut eta = Element::zero();
        let mut eta_bar = Element::zero();
        for i in 0..3 {
            for j in 0..3 {
                let c = g.g(i, j);
                if c.is_zero() {
                    continue;
                }
                eta.add_scaled(&alg.mul(&alg.x(i), &alg.xi(j)), c);
                eta_bar.add_scaled(&alg.mul(&alg.x(i), &alg.bxi(j)), c);
            }
        }
        let q = Scalar::q();
        let one = Scalar::one();
        let rr = alg.r_pow(-2);
        let k = &q.pow(2) / &(&q - &one);
        let kbar = (&(&q.pow(-1) - &one) * &q.pow(2)).inv().expect("nonzero");
        let theta = alg.mul(&rr, &eta).scale(&k);
        let theta_bar = alg.mul(&rr, &eta_bar).scale(&kbar);
        InvariantForms { eta, eta_bar, theta, theta_bar }
    }

    /// `d` (unbarred) or `d̄` (barred).
    pub fn differential(&self, alg: &Algebra, a: &Element, barred: bool) -> Element {
        let th = if barred { &self.theta_bar } else { &self.theta };
        let mut out = Element::zero();
        for ((_, p), part) in a.grade_split() {
            let left = alg.mul(th, &part);
            let right = alg.mul(&part, th);
            let comm = if p % 2 == 0 { &left - &right } else { &left + &right };
            out -= &comm;
        }
        out
    }

    pub fn d(&self, alg: &Algebra, a: &Element) -> Element {
        self.differential(alg, a, false)
    }

    pub fn dbar(&self, alg: &Algebra, a: &Element) -> Element {
        self.differential(alg, a, true)
    }
}

/// A bilinear metric, stored by its values on pairs of basis forms.
#[derive(Debug, Clone)]
pub struct Metric {
    pub table: Vec<Vec<Element>>,
}

impl Metric {
    /// Values on the coordinate-form basis: `g^{ij} α² q⁻¹ r² Λ²` on
    /// unbarred pairs and `g^{ij} α² q r² Λ⁻²` on barred pairs. The mixed
    /// entries are supplied separately (see `geom`), zero here.
    pub fn xi_basis(alg: &Algebra, alpha2: &Element) -> Metric {
        let g = &alg.consts.g;
        let q = Scalar::q();
        let ub = alg.mul(&alg.mul(alpha2, &alg.r_pow(2)), &alg.lam_pow(2)).scale(&q.pow(-1));
        let bb = alg.mul(&alg.mul(alpha2, &alg.r_pow(2)), &alg.lam_pow(-2)).scale(&q);
        let mut table = vec![vec![Element::zero(); 6]; 6];
        for i in 0..3 {
            for j in 0..3 {
                let c = g.ginv(i, j);
                table[i][j] = ub.scale(c);
                table[i + 3][j + 3] = bb.scale(c);
            }
        }
        Metric { table }
    }

    pub fn eval(&self, alg: &Algebra, t: &TensorBi) -> Element {
        let mut out = Element::zero();
        for (s, c) in t.terms() {
            out += &alg.mul(c, &self.table[s[0] as usize][s[1] as usize]);
        }
        out
    }

    /// Contraction of the last two slots, a 1-form.
    pub fn eval23(&self, alg: &Algebra, t: &TensorTri) -> Element {
        let mut out = Element::zero();
        for (s, c) in t.terms() {
            let v = &self.table[s[1] as usize][s[2] as usize];
            if v.is_zero() {
                continue;
            }
            let w = alg.mul(&alg.mul(c, &form(s[0])), v);
            out += &w;
        }
        out
    }
}

/// `(f ω ⊗ ω')* = σ(ω'* ⊗ ω*) f*`.
pub fn tensor_involution(alg: &Algebra, sigma: &Sigma, t: &TensorBi) -> TensorBi {
    let mut out = TensorBi::zero();
    for (s, c) in t.terms() {
        let a = alg.star(&form(s[1]));
        let b = alg.star(&form(s[0]));
        let flipped = sigma.apply(&TensorBi::from_forms(alg, [&a, &b]));
        out = &out + &flipped.mul_right(alg, &alg.star(c));
    }
    out
}

#[cfg(test)]
mod tests;
