//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first and the vector never carries
//! trailing zeros, so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        Poly::from_coeffs(vec![v])
    }

    /// `v * s^k`.
    pub fn monomial(v: BigInt, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k];
        c.push(v);
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Number of trailing zero coefficients, i.e. the order of vanishing at 0.
    pub fn low_order(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    /// True when the polynomial is `v * s^k` for a single `k`.
    pub fn is_monomial(&self) -> bool {
        !self.c.is_empty() && self.low_order() + 1 == self.c.len()
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        Poly { c: self.c[k.min(self.c.len())..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar(&self, k: &BigInt) -> Poly {
        Poly { c: self.c.iter().map(|x| x / k).collect() }
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            c.push(v);
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of the coefficients, the value at `s = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.c.iter().sum()
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self mod d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let g = lr.gcd(&lc);
            let mr = &lc / &g;
            let md = &lr / &g;
            r = r.scale(&mr).sub(&d.shift_up(dr - dd).scale(&md));
        }
        r
    }

    /// Exact quotient `self / d` if `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (qc, rem) = r.leading().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&d.shift_up(dr - dd).scale(&qc));
            q[dr - dd] = qc;
        }
        Some(Poly::from_coeffs(q))
    }

    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let k = self.low_order().min(o.low_order());
        let mut a = self.shift_down(self.low_order()).primitive();
        let mut b = o.shift_down(o.low_order()).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = Poly::one();
                break;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().shift_up(k)
    }

    /// Substitute `s = 1 + t`, returning the polynomial in `t`.
    pub fn shift_at_one(&self) -> Poly {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let v = c[j + 1].clone();
                c[j] += v;
            }
        }
        Poly::from_coeffs(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = p(&[-1, 0, 1]).mul(&p(&[1, 0, 1]));
        let b = p(&[1, 1]).mul(&p(&[3, 0, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[0, 0, 2]).gcd(&p(&[0, 4, 4])), p(&[0, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 0, 1])), Some(p(&[1, 0, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
    }

    #[test]
    fn taylor_shift() {
        // s^2 = 1 + 2t + t^2
        assert_eq!(p(&[0, 0, 1]).shift_at_one(), p(&[1, 2, 1]));
        assert_eq!(p(&[-1, 1]).shift_at_one(), p(&[0, 1]));
    }
}
