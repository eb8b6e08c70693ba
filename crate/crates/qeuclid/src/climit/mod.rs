//! The commutative limit `q → 1`: `Λ → 1`, both `ξ^i` and `ξ̄^i` become
//! `dx^i`, and coefficients are evaluated at `s = 1`.

mod real;

pub use real::{real_coordinate_frame, real_image, stated_real_frame, Coef, RealExpr, RealMono};

use crate::geom::Alpha;
use crate::ncalg::{Algebra, Element, Monomial};
use crate::omega::Metric;
use crate::qscalar::{eval_limit, expand_at_one, LimitError, Scalar, Series};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClimitError {
    #[error("divergent at q = 1: coefficient of {term} has a pole of order {order}")]
    Divergent { term: String, order: usize },
}

/// A commutative monomial `α^a r^k (x0)^m (x-)^u (x+)^v dx^…`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ClassicalMono {
    pub alpha: i32,
    pub r: i32,
    pub x0: i32,
    pub xm: u32,
    pub xp: u32,
    /// Bit `i` is `dx^i` (`-`, `0`, `+`).
    pub dx: u8,
}

impl ClassicalMono {
    /// The image of an engine monomial with its sign, `None` if a
    /// differential repeats.
    pub fn from_monomial(m: &Monomial) -> Option<(ClassicalMono, i32)> {
        let mut order = Vec::new();
        for b in 0..6 {
            if m.forms & (1 << b) != 0 {
                order.push(b % 3);
            }
        }
        let mut sign = 1;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if order[i] == order[j] {
                    return None;
                }
                if order[i] > order[j] {
                    sign = -sign;
                }
            }
        }
        let dx = order.iter().fold(0u8, |acc, b| acc | (1 << b));
        Some((ClassicalMono { alpha: m.alpha, r: m.r, x0: m.x0, xm: m.xm, xp: m.xp, dx }, sign))
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |name: &str, k: i64| match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        };
        push("alpha", self.alpha as i64);
        push("r", self.r as i64);
        push("x0", self.x0 as i64);
        push("xm", self.xm as i64);
        push("xp", self.xp as i64);
        let forms: Vec<&str> = ["dxm", "dx0", "dxp"].iter().enumerate().filter(|(i, _)| self.dx & (1 << i) != 0).map(|(_, n)| *n).collect();
        if !forms.is_empty() {
            parts.push(forms.join("^"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

/// A commutative expression with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassicalExpr {
    pub terms: BTreeMap<ClassicalMono, BigRational>,
}

impl ClassicalExpr {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(m: ClassicalMono, c: BigRational) -> ClassicalExpr {
        let mut e = ClassicalExpr::default();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }
}

impl fmt::Display for ClassicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let body = m.render();
            if a.is_one() {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} * {body}")?;
            }
        }
        Ok(())
    }
}

/// Sums the coefficients of all engine monomials with the same image.
fn grouped(a: &Element) -> BTreeMap<ClassicalMono, Scalar> {
    let mut out: BTreeMap<ClassicalMono, Scalar> = BTreeMap::new();
    for (m, c) in a.terms() {
        if let Some((cm, sign)) = ClassicalMono::from_monomial(m) {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            let slot = out.entry(cm).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The `q → 1` value of an element.
pub fn classical_limit(a: &Element) -> Result<ClassicalExpr, ClimitError> {
    let mut out = ClassicalExpr::default();
    for (m, c) in grouped(a) {
        match eval_limit(&c) {
            Ok(v) => {
                if !v.is_zero() {
                    out.terms.insert(m, v);
                }
            }
            Err(LimitError::Pole { order }) => {
                return Err(ClimitError::Divergent { term: m.render(), order });
            }
        }
    }
    Ok(out)
}

/// Truncated expansions in `t = s - 1` of every coefficient.
pub fn limit_series(a: &Element, order: usize) -> Vec<(ClassicalMono, Series)> {
    grouped(a).into_iter().rev().map(|(m, c)| (m, expand_at_one(&c, order))).collect()
}

/// `lim g(ξ^i ⊗ ξ^j)` for the coordinate-form metric.
pub fn line_element_limit(alg: &Algebra, alpha: &Alpha) -> Result<[[ClassicalExpr; 3]; 3], ClimitError> {
    let metric = Metric::xi_basis(alg, &alpha.pow(alg, 2));
    let mut out: [[ClassicalExpr; 3]; 3] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = classical_limit(&metric.table[i][j])?;
        }
    }
    Ok(out)
}

/// `α² r² δ^{i,-j}`, the expected limit of the metric.
pub fn expected_line_element(alpha: &Alpha) -> [[ClassicalExpr; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i + j != 2 {
                return ClassicalExpr::default();
            }
            match alpha {
                Alpha::Symbolic => ClassicalExpr::term(ClassicalMono { alpha: 2, r: 2, ..Default::default() }, BigRational::one()),
                Alpha::Value(v) => {
                    let v = eval_limit(v).expect("alpha is finite at q = 1");
                    ClassicalExpr::term(ClassicalMono { r: 2, ..Default::default() }, &v * &v)
                }
            }
        })
    })
}

#[cfg(test)]
mod tests;
