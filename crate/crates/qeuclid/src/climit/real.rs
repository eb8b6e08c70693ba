//! Real coordinates `x, y, z` at `q = 1`, with `x- = (x - iz)/√2`,
//! `x0 = y`, `x+ = (x + iz)/√2` and the same for the differentials.

use super::{classical_limit, ClassicalExpr, ClimitError};
use crate::geom::Frame;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element `a + b√2 + i(c + d√2)` of `ℚ(√2, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coef(pub [BigRational; 4]);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Coef {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Coef {
        Coef([a, b, c, d])
    }

    pub fn rational(v: BigRational) -> Coef {
        Coef::new(v, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn int(v: i64) -> Coef {
        Coef::rational(rat(v, 1))
    }

    pub fn i() -> Coef {
        Coef::new(BigRational::zero(), BigRational::zero(), BigRational::one(), BigRational::zero())
    }

    /// `1/√2`.
    pub fn inv_sqrt2() -> Coef {
        Coef::new(BigRational::zero(), rat(1, 2), BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Coef {
        let [a, b, c, d] = self.0.clone();
        Coef::new(a, b, -c, -d)
    }

    pub fn is_real(&self) -> bool {
        self.0[2].is_zero() && self.0[3].is_zero()
    }
}

fn surd_mul(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> (BigRational, BigRational) {
    (a * c + rat(2, 1) * b * d, a * d + b * c)
}

impl Mul for &Coef {
    type Output = Coef;
    fn mul(self, o: &Coef) -> Coef {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        let (re1, re2) = surd_mul(a, b, e, f);
        let (im1, im2) = surd_mul(c, d, g, h);
        let (x1, x2) = surd_mul(a, b, g, h);
        let (y1, y2) = surd_mul(c, d, e, f);
        Coef::new(re1 - im1, re2 - im2, x1 + y1, x2 + y2)
    }
}

impl Add for &Coef {
    type Output = Coef;
    fn add(self, o: &Coef) -> Coef {
        Coef(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }
}

impl Neg for &Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef(std::array::from_fn(|k| -&self.0[k]))
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "sqrt2", "i", "i*sqrt2"];
        let mut first = true;
        for (c, n) in self.0.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (a.is_one(), n.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => f.write_str(n)?,
                (false, false) => write!(f, "{a}*{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `α^a r^k x^u y^m z^v` times a product of `dx, dy, dz` (bits 0, 1, 2).
/// Canonical forms keep `u ≤ 1` by `x² = r² - y² - z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RealMono {
    pub alpha: i32,
    pub r: i32,
    pub x: u32,
    pub y: i32,
    pub z: u32,
    pub d: u8,
}

impl RealMono {
    fn render(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |name: &str, k: i64| match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        };
        push("alpha", self.alpha as i64);
        push("r", self.r as i64);
        push("x", self.x as i64);
        push("y", self.y as i64);
        push("z", self.z as i64);
        let forms: Vec<&str> =
            ["dx", "dy", "dz"].iter().enumerate().filter(|(i, _)| self.d & (1 << i) != 0).map(|(_, n)| *n).collect();
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

/// Sign of `ω_a ∧ ω_b` relative to the ordered product, `0` if they share a factor.
fn wedge_sign(a: u8, b: u8) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut sign = 1;
    for i in 0..3 {
        if b & (1 << i) != 0 {
            let above = (a >> (i + 1)).count_ones();
            if above % 2 == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// A polynomial differential form in real coordinates over `ℚ(√2, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RealExpr {
    pub terms: BTreeMap<RealMono, Coef>,
}

impl RealExpr {
    pub fn zero() -> RealExpr {
        RealExpr::default()
    }

    pub fn mono(m: RealMono, c: Coef) -> RealExpr {
        let mut e = RealExpr::zero();
        e.add_term(m, c);
        e
    }

    pub fn constant(c: Coef) -> RealExpr {
        RealExpr::mono(RealMono::default(), c)
    }

    pub fn var(name: char) -> RealExpr {
        let mut m = RealMono::default();
        match name {
            'x' => m.x = 1,
            'y' => m.y = 1,
            'z' => m.z = 1,
            'r' => m.r = 1,
            'a' => m.alpha = 1,
            _ => panic!("unknown variable {name}"),
        }
        RealExpr::mono(m, Coef::int(1))
    }

    /// `dx`, `dy` or `dz` for `k = 0, 1, 2`.
    pub fn d(k: usize) -> RealExpr {
        RealExpr::mono(RealMono { d: 1 << k, ..Default::default() }, Coef::int(1))
    }

    /// `dr = (x dx + y dy + z dz) / r`.
    pub fn dr() -> RealExpr {
        let rinv = RealExpr::mono(RealMono { r: -1, ..Default::default() }, Coef::int(1));
        let sum = &(&(&RealExpr::var('x') * &RealExpr::d(0)) + &(&RealExpr::var('y') * &RealExpr::d(1)))
            + &(&RealExpr::var('z') * &RealExpr::d(2));
        &rinv * &sum
    }

    pub fn add_term(&mut self, m: RealMono, c: Coef) {
        if c.is_zero() {
            return;
        }
        if m.x >= 2 {
            let base = RealMono { x: m.x - 2, ..m };
            self.add_term(RealMono { r: base.r + 2, ..base }, c.clone());
            self.add_term(RealMono { y: base.y + 2, ..base }, -&c);
            self.add_term(RealMono { z: base.z + 2, ..base }, -&c);
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coef) -> RealExpr {
        let mut out = RealExpr::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Complex conjugation; coordinates and their differentials are real.
    pub fn conj(&self) -> RealExpr {
        RealExpr { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// `(e - e*) / 2i`.
    pub fn imaginary_part(&self) -> RealExpr {
        let half_i = Coef::new(BigRational::zero(), BigRational::zero(), rat(-1, 2), BigRational::zero());
        (self - &self.conj()).scale(&half_i)
    }
}

impl Add for &RealExpr {
    type Output = RealExpr;
    fn add(self, o: &RealExpr) -> RealExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &RealExpr {
    type Output = RealExpr;
    fn sub(self, o: &RealExpr) -> RealExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &RealExpr {
    type Output = RealExpr;
    fn mul(self, o: &RealExpr) -> RealExpr {
        let mut out = RealExpr::zero();
        for (a, c) in &self.terms {
            for (b, e) in &o.terms {
                let sign = wedge_sign(a.d, b.d);
                if sign == 0 {
                    continue;
                }
                let m = RealMono {
                    alpha: a.alpha + b.alpha,
                    r: a.r + b.r,
                    x: a.x + b.x,
                    y: a.y + b.y,
                    z: a.z + b.z,
                    d: a.d | b.d,
                };
                let k = c * e;
                out.add_term(m, if sign < 0 { -&k } else { k });
            }
        }
        out
    }
}

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("({c}) * {}", m.render())).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn pow(e: &RealExpr, k: u32) -> RealExpr {
    (0..k).fold(RealExpr::constant(Coef::int(1)), |acc, _| &acc * e)
}

/// `(a ∓ i b)/√2` for `-` and `+`.
fn light_cone(a: RealExpr, b: RealExpr, plus: bool) -> RealExpr {
    let ib = b.scale(&Coef::i());
    let s = if plus { &a + &ib } else { &a - &ib };
    s.scale(&Coef::inv_sqrt2())
}

/// Substitutes real coordinates into a classical expression.
pub fn real_image(e: &ClassicalExpr) -> RealExpr {
    let x = RealExpr::var('x');
    let z = RealExpr::var('z');
    let xm = light_cone(x.clone(), z.clone(), false);
    let xp = light_cone(x, z, true);
    let dxs = [light_cone(RealExpr::d(0), RealExpr::d(2), false), RealExpr::d(1), light_cone(RealExpr::d(0), RealExpr::d(2), true)];
    let mut out = RealExpr::zero();
    for (m, c) in &e.terms {
        let base = RealMono { alpha: m.alpha, r: m.r, y: m.x0, ..Default::default() };
        let mut t = RealExpr::mono(base, Coef::rational(c.clone()));
        t = &(&t * &pow(&xm, m.xm)) * &pow(&xp, m.xp);
        for (k, dx) in dxs.iter().enumerate() {
            if m.dx & (1 << k) != 0 {
                t = &t * dx;
            }
        }
        out = &out + &t;
    }
    out
}

/// The limit frame in real coordinates:
/// `θ¹ = (θ⁻ + θ⁺)/√2`, `θ² = θ⁰`, `θ³ = i(θ⁻ - θ⁺)/√2`.
pub fn real_coordinate_frame(frame: &Frame) -> Result<[RealExpr; 3], ClimitError> {
    let t: Vec<RealExpr> =
        (0..3).map(|a| classical_limit(&frame.theta[a]).map(|e| real_image(&e))).collect::<Result<_, _>>()?;
    let s = Coef::inv_sqrt2();
    let is = &Coef::i() * &s;
    Ok([(&t[0] + &t[2]).scale(&s), t[1].clone(), (&t[0] - &t[2]).scale(&is)])
}

/// The closed forms `(α y r)⁻¹ (r dx - x dr + i z dr)`,
/// `(α y r)⁻¹ (r dr - i x dz + i z dx)` and `(α y r)⁻¹ (r dz - i x dr - z dr)`.
pub fn stated_real_frame() -> [RealExpr; 3] {
    let pre = RealExpr::mono(RealMono { alpha: -1, y: -1, r: -1, ..Default::default() }, Coef::int(1));
    let (x, z, r) = (RealExpr::var('x'), RealExpr::var('z'), RealExpr::var('r'));
    let dr = RealExpr::dr();
    let i = Coef::i();
    let t1 = &(&(&r * &RealExpr::d(0)) - &(&x * &dr)) + &(&z * &dr).scale(&i);
    let t2 = &(&(&r * &dr) - &(&x * &RealExpr::d(2)).scale(&i)) + &(&z * &RealExpr::d(0)).scale(&i);
    let t3 = &(&(&r * &RealExpr::d(2)) - &(&x * &dr).scale(&i)) - &(&z * &dr);
    [&pre * &t1, &pre * &t2, &pre * &t3]
}
