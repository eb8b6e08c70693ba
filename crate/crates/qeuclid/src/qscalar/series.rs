//! Laurent expansion around `s = 1` in the variable `t = s - 1`.

use super::{Poly, Scalar};
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("pole of order {order} at q = 1")]
    Pole { order: usize },
}

/// A truncated Laurent series `sum_k coeffs[k] t^(k - pole_order)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    /// Coefficients from `t^(-pole_order)` up to `t^order` inclusive.
    pub coeffs: Vec<BigRational>,
    /// Highest power of `t` that is kept.
    pub order: usize,
    /// Order of the pole at `t = 0`; zero for regular values.
    pub pole_order: usize,
}

impl Series {
    /// Coefficient of `t^k`, zero outside the stored window.
    pub fn coeff(&self, k: i64) -> BigRational {
        let idx = k + self.pole_order as i64;
        if idx < 0 || k > self.order as i64 {
            return BigRational::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, o: &Series) -> Series {
        let order = self.order.min(o.order);
        let pole = self.pole_order + o.pole_order;
        let low = -(pole as i64);
        let mut coeffs = Vec::new();
        for k in low..=order as i64 {
            let mut acc = BigRational::zero();
            for i in -(self.pole_order as i64)..=self.order as i64 {
                let j = k - i;
                if j < -(o.pole_order as i64) || j > o.order as i64 {
                    continue;
                }
                acc += self.coeff(i) * o.coeff(j);
            }
            coeffs.push(acc);
        }
        Series { coeffs, order, pole_order: pole }.trimmed()
    }

    /// Drop vanishing leading terms so that `pole_order` is exact.
    fn trimmed(mut self) -> Series {
        while self.pole_order > 0 && self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.pole_order -= 1;
        }
        self
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = i as i64 - self.pole_order as i64;
            let neg = c < &BigRational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let one = a == BigRational::from_integer(1.into());
            match k {
                0 => write!(f, "{}", a)?,
                1 if one => write!(f, "t")?,
                1 => write!(f, "{}*t", a)?,
                _ if one => write!(f, "t^{}", k)?,
                _ => write!(f, "{}*t^{}", a, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

/// Power series quotient `n / d` with `d(0) != 0`, to `terms` coefficients.
fn divide(n: &Poly, d: &Poly, terms: usize) -> Vec<BigRational> {
    let dc: Vec<BigRational> =
        d.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let nc: Vec<BigRational> =
        n.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut out: Vec<BigRational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = nc.get(k).cloned().unwrap_or_else(BigRational::zero);
        for j in 1..=k.min(dc.len().saturating_sub(1)) {
            acc -= &dc[j] * &out[k - j];
        }
        out.push(acc / &dc[0]);
    }
    out
}

/// Laurent expansion of `a` in `t = s - 1`, keeping powers up to `t^order`.
pub fn expand_at_one(a: &Scalar, order: usize) -> Series {
    if a.is_zero() {
        return Series { coeffs: vec![BigRational::zero(); order + 1], order, pole_order: 0 };
    }
    let n = a.numerator().shift_at_one();
    let d = a.denominator().shift_at_one();
    let vn = n.low_order();
    let vd = d.low_order();
    let n = n.shift_down(vn);
    let d = d.shift_down(vd);
    let lowest = vn as i64 - vd as i64;
    let pole_order = (-lowest).max(0) as usize;
    let terms = (order as i64 - lowest + 1).max(0) as usize;
    let body = divide(&n, &d, terms);
    let mut coeffs = Vec::new();
    for k in -(pole_order as i64)..=order as i64 {
        let idx = k - lowest;
        if idx < 0 {
            coeffs.push(BigRational::zero());
        } else {
            coeffs.push(body.get(idx as usize).cloned().unwrap_or_else(BigRational::zero));
        }
    }
    Series { coeffs, order, pole_order }
}

/// Value at `s = 1`, or the order of the pole there.
pub fn eval_limit(a: &Scalar) -> Result<BigRational, LimitError> {
    let d = a.denominator().eval_one();
    if d.is_zero() {
        let order = a.denominator().shift_at_one().low_order()
            - a.numerator().shift_at_one().low_order();
        return Err(LimitError::Pole { order });
    }
    Ok(BigRational::new(a.numerator().eval_one(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn q_is_binomial() {
        let s = expand_at_one(&Scalar::q(), 3);
        assert_eq!(s.pole_order, 0);
        assert_eq!(s.coeffs, vec![ratio(1, 1), ratio(2, 1), ratio(1, 1), ratio(0, 1)]);
    }

    #[test]
    fn h_expansion_matches_geometric_series() {
        // Oracle: s - 1/(1+t) = 1 + t - sum_k (-t)^k.
        let s = expand_at_one(&Scalar::h(), 5);
        let oracle: Vec<BigRational> = (0..=5)
            .map(|k| {
                let geo = if k % 2 == 0 { 1 } else { -1 };
                let lin = match k {
                    0 | 1 => 1,
                    _ => 0,
                };
                ratio(lin - geo, 1)
            })
            .collect();
        assert_eq!(s.coeffs, oracle);
    }

    #[test]
    fn inverse_h_has_simple_pole() {
        let s = expand_at_one(&Scalar::h().inv().unwrap(), 2);
        assert_eq!(s.pole_order, 1);
        assert_eq!(s.coeff(-1), ratio(1, 2));
    }

    #[test]
    fn limits() {
        let qi = Scalar::q().inv().unwrap();
        assert_eq!(eval_limit(&(Scalar::q() + Scalar::one() + qi)), Ok(ratio(3, 1)));
        assert_eq!(eval_limit(&Scalar::h()), Ok(ratio(0, 1)));
        assert_eq!(eval_limit(&Scalar::h().inv().unwrap()), Err(LimitError::Pole { order: 1 }));
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        (prop::collection::vec(-3i64..=3, 1..4), prop::collection::vec(-3i64..=3, 1..4), -2i64..3)
            .prop_filter_map("nonzero", |(n, d, k)| {
                let d = Poly::from_i64(&d);
                if d.is_zero() {
                    return None;
                }
                Some(Scalar::from_parts(Poly::from_i64(&n), d) * Scalar::s_pow(k))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn expansion_is_multiplicative(a in scalar(), b in scalar(), order in 0usize..5) {
            let lhs = expand_at_one(&(&a * &b), order);
            let ea = expand_at_one(&a, order + 4);
            let eb = expand_at_one(&b, order + 4);
            let rhs = ea.mul(&eb);
            prop_assert_eq!(lhs.pole_order, rhs.pole_order);
            for k in -(lhs.pole_order as i64)..=order as i64 {
                prop_assert_eq!(lhs.coeff(k), rhs.coeff(k));
            }
        }

        #[test]
        fn limit_is_constant_term(a in scalar()) {
            let s = expand_at_one(&a, 0);
            match eval_limit(&a) {
                Ok(v) => {
                    prop_assert_eq!(s.pole_order, 0);
                    prop_assert_eq!(s.coeff(0), v);
                }
                Err(LimitError::Pole { order }) => prop_assert_eq!(order, s.pole_order),
            }
        }
    }
}
