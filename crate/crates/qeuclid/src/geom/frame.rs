//! The frames of both calculi, their dual inner derivations and the
//! vielbein matrix.

use crate::ncalg::{Algebra, Element};
use crate::omega::{form, split_one_form};
use crate::qscalar::Scalar;
use std::fmt;

/// The frame normalization: a central symbol or a fixed nonzero scalar.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Alpha {
    #[default]
    Symbolic,
    Value(Scalar),
}

impl Alpha {
    /// `α^k` as an element.
    pub fn pow(&self, alg: &Algebra, k: i32) -> Element {
        match self {
            Alpha::Symbolic => alg.alpha_pow(k),
            Alpha::Value(c) => Element::scalar(c.pow(k as i64)),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Symbolic => f.write_str("alpha"),
            Alpha::Value(c) => write!(f, "{c}"),
        }
    }
}

/// Both frames, written in the coordinate-form basis.
///
/// Frame index `A` runs over `0..6`: `θ^-, θ^0, θ^+, θ̄^-, θ̄^0, θ̄^+`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub alpha: Alpha,
    /// `θ^a_i` with `θ^a = Λ⁻¹ θ^a_i ξ^i`.
    pub coeff: [[Element; 3]; 3],
    /// `θ̄^a_i` with `θ̄^a = Λ θ̄^a_i ξ̄^i`.
    pub coeff_bar: [[Element; 3]; 3],
    /// The six frame forms.
    pub theta: [Element; 6],
    /// `T^A_I` with `θ^A = Σ_I T^A_I ω^I`.
    pub left: [[Element; 6]; 6],
    /// `ε^I_A` with `ω^I = Σ_A ε^I_A θ^A`.
    pub inv: [[Element; 6]; 6],
    /// `λ_-, λ_0, λ_+, λ̄_-, λ̄_0, λ̄_+`.
    pub lambda: [Element; 6],
    /// `e^i_a`, stored as `e[a][i]`.
    pub e: [[Element; 3]; 3],
}

fn prod(alg: &Algebra, c: Scalar, fs: &[&Element]) -> Element {
    alg.product(fs).scale(&c)
}

impl Frame {
    pub fn new(alg: &Algebra, alpha: Alpha) -> Frame {
        let s = Scalar::s();
        let q = Scalar::q();
        let one = Scalar::one();
        let h = Scalar::h();
        let qp1 = &q + &one;
        let qi = q.pow(-1);
        let qip1 = &qi + &one;
        let (xm, xz, xp) = (alg.x(0), alg.x(1), alg.x(2));
        let x0i = alg.x0_pow(-1);
        let r1 = alg.r_pow(-1);
        let r2 = alg.r_pow(-2);
        let ai = alpha.pow(alg, -1);
        let aqi = ai.scale(&qi);
        let z = Element::zero;

        let coeff = [
            [prod(alg, one.clone(), &[&ai, &x0i]), z(), z()],
            [prod(alg, &s * &qp1, &[&ai, &r1, &x0i, &xp]), prod(alg, one.clone(), &[&ai, &r1]), z()],
            [
                prod(alg, -(&(&s * &q) * &qp1), &[&ai, &r2, &x0i, &xp, &xp]),
                prod(alg, -qp1.clone(), &[&ai, &r2, &xp]),
                prod(alg, one.clone(), &[&ai, &r2, &xz]),
            ],
        ];
        let si = s.pow(-1);
        let coeff_bar = [
            [
                prod(alg, one.clone(), &[&aqi, &r2, &xz]),
                prod(alg, -qip1.clone(), &[&aqi, &r2, &xm]),
                prod(alg, -(&(&si * &qi) * &qip1), &[&aqi, &r2, &x0i, &xm, &xm]),
            ],
            [z(), prod(alg, one.clone(), &[&aqi, &r1]), prod(alg, &si * &qip1, &[&aqi, &r1, &x0i, &xm])],
            [z(), z(), prod(alg, one.clone(), &[&aqi, &x0i])],
        ];

        let lam_m = alg.lam_pow(-1);
        let lam_p = alg.lam_pow(1);
        let mut left: [[Element; 6]; 6] = Default::default();
        for a in 0..3 {
            for i in 0..3 {
                left[a][i] = alg.mul(&lam_m, &coeff[a][i]);
                left[a + 3][i + 3] = alg.mul(&lam_p, &coeff_bar[a][i]);
            }
        }
        let theta: [Element; 6] = std::array::from_fn(|a| {
            let mut t = Element::zero();
            for (i, c) in left[a].iter().enumerate() {
                t += &alg.mul(c, &form(i as u8));
            }
            t
        });
        let inv = invert_triangular(alg, &left);

        let a1 = alpha.pow(alg, 1);
        let hi = h.inv().expect("h is nonzero");
        let lm = prod(alg, &hi * &q, &[&lam_p, &x0i, &a1, &xp]);
        let l0 = prod(alg, -(&hi * &s), &[&lam_p, &a1, &x0i, &alg.r_pow(1)]);
        let lp = prod(alg, -hi.clone(), &[&lam_p, &a1, &x0i, &xm]);
        let l2 = alg.lam_pow(-2);
        let lambda = [
            lm.clone(),
            l0.clone(),
            lp.clone(),
            alg.mul(&l2, &lm),
            -alg.mul(&l2, &l0),
            alg.mul(&l2, &lp),
        ];

        let e = [
            [
                prod(alg, one.clone(), &[&a1, &xz]),
                prod(alg, -(&s + &si), &[&a1, &xp]),
                prod(alg, -(&s * &qp1), &[&a1, &x0i, &xp, &xp]),
            ],
            [z(), prod(alg, one.clone(), &[&a1, &alg.r_pow(1)]), prod(alg, qp1.clone(), &[&a1, &alg.r_pow(1), &x0i, &xp])],
            [z(), z(), prod(alg, one, &[&a1, &alg.r_pow(2), &x0i])],
        ];

        Frame { alpha, coeff, coeff_bar, theta, left, inv, lambda, e }
    }

    /// Frame components `c_A` of a 1-form, `ω = Σ_A c_A θ^A`.
    pub fn to_frame(&self, alg: &Algebra, w: &Element) -> [Element; 6] {
        let parts = split_one_form(w);
        std::array::from_fn(|a| {
            let mut c = Element::zero();
            for (i, f) in parts.iter().enumerate() {
                if !f.is_zero() && !self.inv[i][a].is_zero() {
                    c += &alg.mul(f, &self.inv[i][a]);
                }
            }
            c
        })
    }

    /// `Σ_A c_A θ^A`.
    pub fn from_frame(&self, alg: &Algebra, c: &[Element; 6]) -> Element {
        let mut out = Element::zero();
        for (a, f) in c.iter().enumerate() {
            if !f.is_zero() {
                out += &alg.mul(f, &self.theta[a]);
            }
        }
        out
    }

    /// The Dirac operator `θ = -λ_a θ^a` (or its barred analogue) in frame components.
    pub fn dirac(&self, barred: bool) -> [Element; 6] {
        let range = if barred { 3..6 } else { 0..3 };
        std::array::from_fn(|a| if range.contains(&a) { -&self.lambda[a] } else { Element::zero() })
    }
}

/// Solves `Σ_A ε^I_A T^A_J = δ^I_J` for the two triangular blocks.
fn invert_triangular(alg: &Algebra, t: &[[Element; 6]; 6]) -> [[Element; 6]; 6] {
    let mut inv: [[Element; 6]; 6] = Default::default();
    let orders: [[usize; 3]; 2] = [[0, 1, 2], [5, 4, 3]];
    for order in orders {
        for (pos, &i) in order.iter().enumerate() {
            let d = alg.invert_unit(&t[i][i]).expect("diagonal frame entries are units");
            let mut row: [Element; 6] = Default::default();
            row[i] = d.clone();
            for &j in &order[..pos] {
                let c = alg.mul(&d, &t[i][j]);
                if c.is_zero() {
                    continue;
                }
                for a in 0..6 {
                    if !inv[j][a].is_zero() {
                        row[a] -= &alg.mul(&c, &inv[j][a]);
                    }
                }
            }
            inv[i] = row;
        }
    }
    inv
}
