//! Text rendering of scalars in terms of `q`, `sqrtq` and `h`.
//!
//! The output is valid input for the expression parser: powers of `s` become
//! `q^k` or `sqrtq*q^k`, sums are written without inner spaces and a quotient
//! is printed as `num/den` with parentheses around multi-term parts. Among a
//! few equivalent spellings the shortest one is chosen, ties broken
//! lexicographically, so the rendering is a function of the value alone.

use super::{Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// `s^k` as text; empty for `k = 0`.
fn s_power(k: i64) -> String {
    if k % 2 == 0 {
        match k / 2 {
            0 => String::new(),
            1 => "q".into(),
            m => format!("q^{m}"),
        }
    } else {
        let m = (k - 1).div_euclid(2);
        match m {
            0 => "sqrtq".into(),
            1 => "sqrtq*q".into(),
            m => format!("sqrtq*q^{m}"),
        }
    }
}

/// Sum of `c_k s^k` for the given (power, coefficient) pairs, highest power first.
fn laurent_text(terms: &[(i64, BigRational)]) -> String {
    let mut out = String::new();
    let mut sorted: Vec<&(i64, BigRational)> = terms.iter().filter(|t| !t.1.is_zero()).collect();
    sorted.sort_by_key(|t| std::cmp::Reverse(t.0));
    if sorted.is_empty() {
        return "0".into();
    }
    for (i, (k, c)) in sorted.into_iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let a = c.abs();
        let p = s_power(*k);
        if p.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&p);
        } else {
            out.push_str(&format!("{a}*{p}"));
        }
    }
    out
}

fn poly_terms(p: &Poly, shift: i64, scale: &BigRational) -> Vec<(i64, BigRational)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64 + shift, BigRational::from_integer(c.clone()) * scale))
        .collect()
}

/// True if `t` contains a `+`, `/` or a binary minus (a `-` that is neither
/// leading nor part of an exponent).
fn has_sum_or_quotient(t: &str) -> bool {
    let b = t.as_bytes();
    b.iter().enumerate().any(|(i, &c)| match c {
        b'+' | b'/' => true,
        b'-' => i > 0 && b[i - 1] != b'^' && b[i - 1] != b'(',
        _ => false,
    })
}

/// True if `t` has a binary `+` or `-` outside parentheses.
fn has_top_level_sum(t: &str) -> bool {
    let b = t.as_bytes();
    let mut depth = 0i32;
    for (i, &c) in b.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' if depth == 0 => return true,
            b'-' if depth == 0 && i > 0 && b[i - 1] != b'^' => return true,
            _ => {}
        }
    }
    false
}

fn is_atom(t: &str) -> bool {
    !t.starts_with('-') && !t.contains('*') && !has_sum_or_quotient(t)
}

fn wrap(t: &str) -> String {
    if is_atom(t) {
        t.to_string()
    } else {
        format!("({t})")
    }
}

/// True if the text is a single product that can be multiplied without parentheses.
fn is_product(t: &str) -> bool {
    !has_sum_or_quotient(t)
}

/// Plain spelling: a Laurent polynomial when the denominator is `c s^k`,
/// otherwise `num/den`.
fn plain(a: &Scalar) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let den = a.denominator();
    if den.is_monomial() {
        let k = den.low_order() as i64;
        let c = BigRational::new(BigInt::one(), den.leading().unwrap().clone());
        return laurent_text(&poly_terms(a.numerator(), -k, &c));
    }
    let one = BigRational::one();
    let num = laurent_text(&poly_terms(a.numerator(), 0, &one));
    let d = laurent_text(&poly_terms(den, 0, &one));
    let num = if is_product(&num) { num } else { format!("({num})") };
    format!("{num}/{}", wrap(&d))
}

/// Multiplicity of `s^2 - 1` in `p`.
fn h_multiplicity(p: &Poly) -> u32 {
    let f = Poly::from_i64(&[-1, 0, 1]);
    let mut k = 0;
    let mut cur = p.clone();
    while let Some(next) = cur.div_exact(&f) {
        if cur.is_zero() {
            break;
        }
        cur = next;
        k += 1;
    }
    k
}

fn with_h(a: &Scalar) -> Option<String> {
    let kn = h_multiplicity(a.numerator()) as i64;
    let kd = h_multiplicity(a.denominator()) as i64;
    let k = kn - kd;
    if k == 0 {
        return None;
    }
    let mut rest = a * &Scalar::h().pow(-k);
    let sign = if rest.leading_is_negative() {
        rest = -rest;
        "-"
    } else {
        ""
    };
    let hp = if k == 1 { "h".to_string() } else { format!("h^{k}") };
    let r = plain(&rest);
    Some(if rest.is_one() {
        format!("{sign}{hp}")
    } else if !has_top_level_sum(&r) {
        format!("{sign}{hp}*{r}")
    } else {
        format!("{sign}{hp}*({r})")
    })
}

/// The canonical text of a scalar.
pub fn render(a: &Scalar) -> String {
    let p = plain(a);
    match with_h(a) {
        Some(hf) if hf.len() < p.len() || (hf.len() == p.len() && hf < p) => hf,
        _ => p,
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl Scalar {
    /// Canonical text; see the module documentation.
    pub fn render(&self) -> String {
        render(self)
    }

    /// True when the rendering is a single signed product, so it can be
    /// juxtaposed with other factors without parentheses.
    pub fn renders_as_product(&self) -> bool {
        is_product(&render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_the_root() {
        assert_eq!(Scalar::q().render(), "q");
        assert_eq!(Scalar::s().render(), "sqrtq");
        assert_eq!(Scalar::s_pow(3).render(), "sqrtq*q");
        assert_eq!(Scalar::s_pow(-1).render(), "sqrtq*q^-1");
        assert_eq!(Scalar::q_pow(-2).render(), "q^-2");
    }

    #[test]
    fn sums_and_quotients() {
        assert_eq!((Scalar::q() - Scalar::one()).render(), "q-1");
        assert_eq!(Scalar::h().render(), "h");
        assert_eq!((Scalar::h() * Scalar::h()).render(), "h^2");
        let x = Scalar::one().div(&(Scalar::q() + Scalar::one()));
        assert_eq!(x.render(), "1/(q+1)");
        assert_eq!(Scalar::rational(-1, 2).render(), "-1/2");
        assert_eq!(Scalar::zero().render(), "0");
    }

    #[test]
    fn h_is_extracted_when_shorter() {
        let a = -(Scalar::h() * (Scalar::q() + Scalar::one()));
        assert_eq!(a.render(), "-h*(q+1)");
        assert_eq!(Scalar::h().inv().unwrap().render(), "h^-1");
    }
}
