//! Linear combinations of normal-ordered monomials.

use super::monomial::{Letter, Monomial};
use crate::qscalar::Scalar;
use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// A finite sum `Σ c_m m` with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.render())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Element {
        Element::term(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial) -> Element {
        Element::term(m, Scalar::one())
    }

    pub fn letter(l: Letter) -> Element {
        Element::monomial(Monomial::letter(l))
    }

    pub fn term(m: Monomial, c: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Monomial, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar value if the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (m, v) in &other.terms {
            self.add_term(*m, if c.is_one() { v.clone() } else { v * c });
        }
    }

    /// `self += c * α^k * other`.
    pub fn add_scaled_shifted(&mut self, other: &Element, c: &Scalar, alpha: i32) {
        for (m, v) in &other.terms {
            let mut m = *m;
            m.alpha += alpha;
            self.add_term(m, if c.is_one() { v.clone() } else { v * c });
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut e = Element::zero();
        for (m, v) in &self.terms {
            e.add_term(*m, f(v));
        }
        e
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, v)| (*m, v.clone())).collect() }
    }

    /// Multiplies every monomial by `α^k`, which is central.
    pub fn alpha_shift(&self, k: i32) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut m = *m;
                    m.alpha += k;
                    (m, v.clone())
                })
                .collect(),
        }
    }

    /// Components by (grading degree, form degree); they sum to `self`.
    pub fn grade_split(&self) -> BTreeMap<(i32, u32), Element> {
        let mut out: BTreeMap<(i32, u32), Element> = BTreeMap::new();
        for (m, v) in &self.terms {
            out.entry((m.degree(), m.form_degree())).or_default().add_term(*m, v.clone());
        }
        out
    }

    /// Largest form degree present, zero for the zero element.
    pub fn max_form_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::form_degree).max().unwrap_or(0)
    }

    /// Homogeneous form degree, `None` for mixed elements.
    pub fn form_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::form_degree);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// Canonical text, e.g. `h * xim*xip` or `q * x0 * xm - xm * x0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.leading_is_negative();
            let a = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ct = a.render();
            let bare = a.renders_as_product() || (m.is_one() && !neg);
            let ct = if bare { ct } else { format!("({ct})") };
            if m.is_one() {
                out.push_str(&ct);
            } else if a.is_one() {
                out.push_str(&m.render());
            } else {
                out.push_str(&format!("{ct} * {}", m.render()));
            }
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut e = self.clone();
        e += o;
        e
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, o: Element) -> Element {
        self += &o;
        self
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, o: &Element) {
        for (m, v) in &o.terms {
            self.add_term(*m, v.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, o: &Element) {
        for (m, v) in &o.terms {
            self.add_term(*m, -v.clone());
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(o, &-Scalar::one());
        e
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, o: Element) -> Element {
        &self - &o
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl From<Scalar> for Element {
    fn from(c: Scalar) -> Element {
        Element::scalar(c)
    }
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Element {
        Element::monomial(m)
    }
}

impl From<Letter> for Element {
    fn from(l: Letter) -> Element {
        Element::letter(l)
    }
}
