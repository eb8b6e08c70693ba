//! The coefficient field ℚ(s) with s² = q.
//!
//! A [`Scalar`] is a reduced fraction of integer polynomials in `s`. The
//! reduction is canonical: numerator and denominator share no polynomial
//! factor, their integer contents are coprime and the leading coefficient of
//! the denominator is positive. Structural equality is therefore equality in
//! the field.

mod poly;
mod render;
mod series;

pub use poly::Poly;
pub use series::{eval_limit, expand_at_one, LimitError, Series};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(v: i64) -> Self {
        Scalar { num: Poly::constant(BigInt::from(v)), den: Poly::one() }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::int(n).div(&Scalar::int(d))
    }

    pub fn from_bigrational(r: &BigRational) -> Self {
        Scalar::from_parts(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    /// The root `s = √q`.
    pub fn s() -> Self {
        Scalar::s_pow(1)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar { num: Poly::monomial(BigInt::one(), k as usize), den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: Poly::monomial(BigInt::one(), (-k) as usize) }
        }
    }

    pub fn q() -> Self {
        Scalar::s_pow(2)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::s_pow(2 * k)
    }

    /// `h = s - 1/s`.
    pub fn h() -> Self {
        Scalar::laurent(-1, &[-1, 0, 1])
    }

    /// `sum_i c[i] s^(low + i)`.
    pub fn laurent(low: i64, c: &[i64]) -> Self {
        let p = Poly::from_i64(c);
        if low >= 0 {
            Scalar::from_parts(p.shift_up(low as usize), Poly::one())
        } else {
            Scalar::from_parts(p, Poly::monomial(BigInt::one(), (-low) as usize))
        }
    }

    /// Build and reduce `num / den`. Panics if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar::reduce(num, den)
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (mut num, mut den) = if den.degree() == Some(0) {
            (num, den)
        } else if den.is_monomial() {
            let k = num.low_order().min(den.low_order());
            (num.shift_down(k), den.shift_down(k))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        Scalar { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is `c * s^k` for a rational `c`.
    pub fn is_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    /// True when the value does not depend on `s`.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// The rational value, when the scalar does not depend on `s`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
        Some(BigRational::new(n, self.den.coeffs()[0].clone()))
    }

    /// Sign of the leading numerator coefficient; used when rendering sums.
    pub fn leading_is_negative(&self) -> bool {
        self.num.leading().is_some_and(|c| c.is_negative())
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.degree() == Some(0) && o.den.degree() == Some(0) {
            let a = &self.den.coeffs()[0];
            let b = &o.den.coeffs()[0];
            return Scalar::reduce(
                self.num.scale(b).add(&o.num.scale(a)),
                Poly::constant(a * b),
            );
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        Scalar::reduce(self.num.mul(&b).add(&o.num.mul(&a)), a.mul(&o.den))
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            return Scalar::reduce(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Scalar::reduce(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Division; panics on a zero divisor. Use [`Scalar::checked_div`] when the
    /// divisor may vanish.
    pub fn div(&self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Scalar { num: base.num.pow(e), den: base.den.pow(e) }
    }

    /// `q`-integer `[n]_{z} = 1 + z + ... + z^{n-1}`.
    pub fn geometric_sum(z: &Scalar, n: u32) -> Scalar {
        let mut acc = Scalar::zero();
        let mut p = Scalar::one();
        for _ in 0..n {
            acc = acc.add(&p);
            p = p.mul(z);
        }
        acc
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$m(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar::$m(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$m(&self, o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn inverse_of_q() {
        assert!((q() * q().inv().unwrap()).is_one());
    }

    #[test]
    fn quotient_by_long_division() {
        let qi = q().inv().unwrap();
        let a = Scalar::one() - qi.pow(2);
        let b = Scalar::one() + qi.clone();
        // Oracle: 1 - q^-2 = (1 - q^-1)(1 + q^-1) term by term.
        assert_eq!(a / b, Scalar::one() - qi);
    }

    #[test]
    fn h_times_bracket_two() {
        let two = Scalar::s() + Scalar::s_pow(-1);
        assert_eq!(Scalar::h() * two, q() - q().inv().unwrap());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Scalar::from_parts(Poly::from_i64(&[-2, 0, 2]), Poly::from_i64(&[2, 2]));
        let b = Scalar::from_parts(Poly::from_i64(&[-1, 1]), Poly::one());
        assert_eq!(a, b);
        let c = Scalar::from_parts(Poly::from_i64(&[1]), Poly::from_i64(&[0, -3]));
        assert_eq!(c.denominator(), &Poly::from_i64(&[0, 3]));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| Poly::from_i64(&c))
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        (small_poly(), small_poly(), 0i64..3).prop_filter_map("nonzero den", |(n, d, k)| {
            if d.is_zero() {
                None
            } else {
                Some(Scalar::from_parts(n, d) * Scalar::s_pow(-k))
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a / &a).is_one());
            }
        }
    }
}
