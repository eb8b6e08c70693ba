//! Generators, letters and normal-ordered monomials.

use serde::Serialize;
use std::fmt;

/// Slot numbers of the generators in the term order
/// `Λ < r < x0 < x- < x+ < ξ- < ξ0 < ξ+ < ξ̄- < ξ̄0 < ξ̄+`.
pub const LAM: u8 = 0;
pub const R: u8 = 1;
pub const X0: u8 = 2;
pub const XM: u8 = 3;
pub const XP: u8 = 4;
pub const XI: u8 = 5;
pub const BXI: u8 = 8;

/// Static description of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorInfo {
    pub slot: u8,
    pub symbol: &'static str,
    /// Grading degree in `{-1, 0, +1}`.
    pub degree: i32,
    pub form_degree: u32,
    pub barred: bool,
    pub invertible: bool,
}

pub const GENERATORS: [GeneratorInfo; 11] = [
    GeneratorInfo { slot: LAM, symbol: "Lam", degree: 0, form_degree: 0, barred: false, invertible: true },
    GeneratorInfo { slot: R, symbol: "r", degree: 0, form_degree: 0, barred: false, invertible: true },
    GeneratorInfo { slot: X0, symbol: "x0", degree: 0, form_degree: 0, barred: false, invertible: true },
    GeneratorInfo { slot: XM, symbol: "xm", degree: -1, form_degree: 0, barred: false, invertible: false },
    GeneratorInfo { slot: XP, symbol: "xp", degree: 1, form_degree: 0, barred: false, invertible: false },
    GeneratorInfo { slot: XI, symbol: "xim", degree: -1, form_degree: 1, barred: false, invertible: false },
    GeneratorInfo { slot: XI + 1, symbol: "xiz", degree: 0, form_degree: 1, barred: false, invertible: false },
    GeneratorInfo { slot: XI + 2, symbol: "xip", degree: 1, form_degree: 1, barred: false, invertible: false },
    GeneratorInfo { slot: BXI, symbol: "bxim", degree: -1, form_degree: 1, barred: true, invertible: false },
    GeneratorInfo { slot: BXI + 1, symbol: "bxiz", degree: 0, form_degree: 1, barred: true, invertible: false },
    GeneratorInfo { slot: BXI + 2, symbol: "bxip", degree: 1, form_degree: 1, barred: true, invertible: false },
];

/// A generator or the inverse of an invertible generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub slot: u8,
    pub inv: bool,
}

impl Letter {
    pub const fn new(slot: u8) -> Letter {
        Letter { slot, inv: false }
    }

    pub const fn inverse(slot: u8) -> Letter {
        Letter { slot, inv: true }
    }

    /// The coordinate `x^i` for an index `i` in `{0, 1, 2}` = `{-, 0, +}`.
    pub const fn x(i: usize) -> Letter {
        Letter::new([XM, X0, XP][i])
    }

    pub const fn xi(i: usize) -> Letter {
        Letter::new(XI + i as u8)
    }

    pub const fn bxi(i: usize) -> Letter {
        Letter::new(BXI + i as u8)
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i32 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn info(self) -> &'static GeneratorInfo {
        &GENERATORS[self.slot as usize]
    }

    pub fn is_form(self) -> bool {
        self.slot >= XI
    }

    pub fn is_barred(self) -> bool {
        self.slot >= BXI
    }

    /// Index `{0, 1, 2}` of a coordinate or form letter.
    pub fn index(self) -> usize {
        match self.slot {
            XM => 0,
            X0 => 1,
            XP => 2,
            s if s >= BXI => (s - BXI) as usize,
            s if s >= XI => (s - XI) as usize,
            _ => panic!("letter has no index"),
        }
    }

    /// Every letter, generators before inverses within a slot.
    pub fn all() -> Vec<Letter> {
        let mut v = Vec::new();
        for g in &GENERATORS {
            v.push(Letter::new(g.slot));
            if g.invertible {
                v.push(Letter::inverse(g.slot));
            }
        }
        v
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.info().symbol;
        if self.inv {
            write!(f, "{s}^-1")
        } else {
            f.write_str(s)
        }
    }
}

/// A normal-ordered word `α^a Λ^l r^k x0^m x-^u x+^v ω` where `ω` is an
/// ordered product of distinct forms encoded as a bit mask
/// (bit `i` is slot `XI + i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub forms: u8,
    pub xp: u32,
    pub xm: u32,
    pub x0: i32,
    pub r: i32,
    pub lam: i32,
    pub alpha: i32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn letter(l: Letter) -> Monomial {
        Monomial::one().with(l)
    }

    pub fn alpha_pow(k: i32) -> Monomial {
        Monomial { alpha: k, ..Monomial::one() }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::one()
    }

    /// The same word without its α factor.
    pub fn without_alpha(&self) -> Monomial {
        Monomial { alpha: 0, ..*self }
    }

    pub fn form_degree(&self) -> u32 {
        self.forms.count_ones()
    }

    pub fn has_forms(&self) -> bool {
        self.forms != 0
    }

    pub fn has_barred(&self) -> bool {
        self.forms & 0b111000 != 0
    }

    pub fn has_unbarred(&self) -> bool {
        self.forms & 0b000111 != 0
    }

    /// Grading degree: x+ and the `+` forms count `+1`, x- and the `-` forms `-1`.
    pub fn degree(&self) -> i32 {
        let mut d = self.xp as i32 - self.xm as i32;
        for b in 0..6 {
            if self.forms & (1 << b) != 0 {
                d += b % 3 - 1;
            }
        }
        d
    }

    /// Coordinate part, i.e. the monomial with the forms removed.
    pub fn coordinate_part(&self) -> Monomial {
        Monomial { forms: 0, ..*self }
    }

    /// Forms part only.
    pub fn form_part(&self) -> Monomial {
        Monomial { forms: self.forms, ..Monomial::one() }
    }

    /// Slot of the right-most letter, ignoring α.
    pub fn last_slot(&self) -> Option<u8> {
        if self.forms != 0 {
            return Some(XI + 7 - self.forms.leading_zeros() as u8);
        }
        if self.xp > 0 {
            Some(XP)
        } else if self.xm > 0 {
            Some(XM)
        } else if self.x0 != 0 {
            Some(X0)
        } else if self.r != 0 {
            Some(R)
        } else if self.lam != 0 {
            Some(LAM)
        } else {
            None
        }
    }

    /// Splits off the right-most letter.
    pub fn pop_last(&self) -> Option<(Monomial, Letter)> {
        let slot = self.last_slot()?;
        let mut m = *self;
        let l = match slot {
            LAM => {
                let l = Letter { slot, inv: m.lam < 0 };
                m.lam -= l.sign();
                l
            }
            R => {
                let l = Letter { slot, inv: m.r < 0 };
                m.r -= l.sign();
                l
            }
            X0 => {
                let l = Letter { slot, inv: m.x0 < 0 };
                m.x0 -= l.sign();
                l
            }
            XM => {
                m.xm -= 1;
                Letter::new(XM)
            }
            XP => {
                m.xp -= 1;
                Letter::new(XP)
            }
            s => {
                m.forms &= !(1 << (s - XI));
                Letter::new(s)
            }
        };
        Some((m, l))
    }

    /// Appends a letter without any reordering. The caller guarantees that
    /// the letter is not smaller than the last slot, or is a same-slot
    /// power of an invertible or commuting generator.
    pub fn with(mut self, l: Letter) -> Monomial {
        match l.slot {
            LAM => self.lam += l.sign(),
            R => self.r += l.sign(),
            X0 => self.x0 += l.sign(),
            XM => self.xm += 1,
            XP => self.xp += 1,
            s => self.forms |= 1 << (s - XI),
        }
        self
    }

    /// The letters of the word in order, α excluded.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v = Vec::new();
        let mut push = |slot: u8, e: i32| {
            let l = if e < 0 { Letter::inverse(slot) } else { Letter::new(slot) };
            for _ in 0..e.unsigned_abs() {
                v.push(l);
            }
        };
        push(LAM, self.lam);
        push(R, self.r);
        push(X0, self.x0);
        push(XM, self.xm as i32);
        push(XP, self.xp as i32);
        for b in 0..6 {
            if self.forms & (1 << b) != 0 {
                v.push(Letter::new(XI + b));
            }
        }
        v
    }

    /// Number of letters, α excluded.
    pub fn length(&self) -> u32 {
        self.lam.unsigned_abs() + self.r.unsigned_abs() + self.x0.unsigned_abs() + self.xm + self.xp
            + self.form_degree()
    }

    /// Text such as `Lam^-1 * r^-2 * x0^-1 * xp^2 * xim`; the forms are
    /// written as one `*`-joined factor.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut pw = |s: &str, e: i64| {
            if e == 1 {
                parts.push(s.to_string());
            } else if e != 0 {
                parts.push(format!("{s}^{e}"));
            }
        };
        pw("alpha", self.alpha as i64);
        pw("Lam", self.lam as i64);
        pw("r", self.r as i64);
        pw("x0", self.x0 as i64);
        pw("xm", self.xm as i64);
        pw("xp", self.xp as i64);
        if self.forms != 0 {
            let w: Vec<&str> = (0..6)
                .filter(|b| self.forms & (1 << b) != 0)
                .map(|b| GENERATORS[(XI + b) as usize].symbol)
                .collect();
            parts.push(w.join("*"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_follows_term_order() {
        let m = Monomial { lam: -1, r: -2, x0: -1, xp: 2, forms: 1, ..Monomial::one() };
        assert_eq!(m.render(), "Lam^-1 * r^-2 * x0^-1 * xp^2 * xim");
        let w = Monomial { forms: 0b101, ..Monomial::one() };
        assert_eq!(w.render(), "xim*xip");
    }

    #[test]
    fn pop_and_push_are_inverse() {
        let m = Monomial { lam: 2, r: -1, x0: 3, xm: 1, forms: 0b100010, alpha: 1, ..Monomial::one() };
        let mut cur = m;
        let mut popped = Vec::new();
        while let Some((p, l)) = cur.pop_last() {
            popped.push(l);
            cur = p;
        }
        popped.reverse();
        assert_eq!(popped, m.letters());
        let rebuilt = popped.iter().fold(Monomial::alpha_pow(1), |acc, &l| acc.with(l));
        assert_eq!(rebuilt, m);
    }

    #[test]
    fn degrees() {
        let m = Monomial::letter(Letter::new(XP)).with(Letter::xi(0));
        assert_eq!(m.degree(), 0);
        assert_eq!(m.form_degree(), 1);
    }
}
