//! Lexer, parser and evaluator for algebra expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?
//! exponent:= ['-' | '+'] INT | '(' ['-' | '+'] INT ')'
//! atom    := INT | SYMBOL | '(' sum ')'
//! ```
//!
//! Products are evaluated in the order written, so `xp*xm` and `xm*xp`
//! differ. Division `a / b` means `a * b⁻¹` and needs `b` to be a unit:
//! a single monomial in `α, Λ, r, x0` with a nonzero coefficient.

use crate::ncalg::{Algebra, Element, Letter, Monomial, LAM, R, X0};
use crate::qscalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unexpected character `{ch}` at byte {offset}")]
    UnexpectedChar { offset: usize, ch: char },
    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { offset: usize, name: String },
    #[error("expected {expected} at byte {offset}, found {found}")]
    Expected { offset: usize, expected: &'static str, found: String },
    #[error("exponent at byte {offset} is out of range")]
    ExponentRange { offset: usize },
    #[error("the value at byte {offset} is not invertible")]
    NotInvertible { offset: usize },
}

impl ExprError {
    /// Byte offset into the input where the problem was detected.
    pub fn offset(&self) -> usize {
        match self {
            ExprError::UnexpectedChar { offset, .. }
            | ExprError::UnknownSymbol { offset, .. }
            | ExprError::Expected { offset, .. }
            | ExprError::ExponentRange { offset }
            | ExprError::NotInvertible { offset } => *offset,
        }
    }
}

/// Named atoms of the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Xm,
    X0,
    Xp,
    X0Inv,
    R,
    RInv,
    Lam,
    LamInv,
    Xi(usize),
    Bxi(usize),
    Alpha,
    Q,
    SqrtQ,
    H,
    I,
}

/// Token, atom and meaning, in the order shown by `--help`.
pub const SYMBOLS: [(&str, Symbol, &str); 20] = [
    ("xm", Symbol::Xm, "coordinate x^-"),
    ("xz", Symbol::X0, "coordinate x^0"),
    ("x0", Symbol::X0, "coordinate x^0 (alias of xz)"),
    ("xp", Symbol::Xp, "coordinate x^+"),
    ("xzinv", Symbol::X0Inv, "inverse of x^0"),
    ("r", Symbol::R, "radius r"),
    ("rinv", Symbol::RInv, "inverse radius r^-1"),
    ("Lam", Symbol::Lam, "dilatator Lambda"),
    ("Laminv", Symbol::LamInv, "inverse dilatator Lambda^-1"),
    ("xim", Symbol::Xi(0), "1-form xi^-"),
    ("xiz", Symbol::Xi(1), "1-form xi^0"),
    ("xip", Symbol::Xi(2), "1-form xi^+"),
    ("bxim", Symbol::Bxi(0), "barred 1-form xibar^-"),
    ("bxiz", Symbol::Bxi(1), "barred 1-form xibar^0"),
    ("bxip", Symbol::Bxi(2), "barred 1-form xibar^+"),
    ("alpha", Symbol::Alpha, "central frame normalization alpha"),
    ("q", Symbol::Q, "deformation parameter q"),
    ("sqrtq", Symbol::SqrtQ, "square root of q"),
    ("h", Symbol::H, "sqrtq - sqrtq^-1"),
    ("i", Symbol::I, "imaginary unit"),
];

fn lookup(name: &str) -> Option<Symbol> {
    SYMBOLS.iter().find(|(t, _, _)| *t == name).map(|(_, s, _)| *s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A parsed expression with the byte offset at which each node starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub node: Node,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    Sym(Symbol),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = p + 1;
                it.next();
            }
            let n: BigInt = text[pos..end].parse().expect("digits");
            out.push((Tok::Int(n), pos));
        } else if ch.is_ascii_alphabetic() {
            let mut end = pos;
            while let Some(&(p, c)) = it.peek() {
                if !c.is_ascii_alphanumeric() {
                    break;
                }
                end = p + 1;
                it.next();
            }
            out.push((Tok::Ident(text[pos..end].to_string()), pos));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Punct(ch), pos));
            it.next();
        } else {
            return Err(ExprError::UnexpectedChar { offset: pos, ch });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expected(&self, what: &'static str) -> ExprError {
        let (t, off) = self.peek();
        ExprError::Expected { offset: *off, expected: what, found: t.describe() }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek().0 {
                Tok::Punct('+') => BinOp::Add,
                Tok::Punct('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            let offset = lhs.offset;
            lhs = Expr { node: Node::Bin(op, Box::new(lhs), Box::new(rhs)), offset };
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().0 {
                Tok::Punct('*') => BinOp::Mul,
                Tok::Punct('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let offset = lhs.offset;
            lhs = Expr { node: Node::Bin(op, Box::new(lhs), Box::new(rhs)), offset };
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        let offset = self.peek().1;
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr { node: Node::Neg(Box::new(inner)), offset });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if self.peek().0 == Tok::Punct('^') {
            return Err(self.expected("an operator other than `^`"));
        }
        let offset = base.offset;
        Ok(Expr { node: Node::Pow(Box::new(base), e), offset })
    }

    fn exponent(&mut self) -> Result<i64, ExprError> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let (tok, off) = self.peek().clone();
        let Tok::Int(n) = tok else {
            return Err(self.expected("an integer exponent"));
        };
        self.bump();
        let v = n.to_i64().filter(|v| *v <= i32::MAX as i64).ok_or(ExprError::ExponentRange { offset: off })?;
        if paren && !self.eat(')') {
            return Err(self.expected("`)`"));
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let (tok, offset) = self.peek().clone();
        match tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr { node: Node::Int(n), offset })
            }
            Tok::Ident(name) => {
                let sym = lookup(&name).ok_or(ExprError::UnknownSymbol { offset, name })?;
                self.bump();
                Ok(Expr { node: Node::Sym(sym), offset })
            }
            Tok::Punct('(') => {
                self.bump();
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.expected("`)`"));
                }
                Ok(Expr { offset, ..inner })
            }
            _ => Err(self.expected("a number, a symbol or `(`")),
        }
    }
}

/// Parses a complete expression.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.sum()?;
    if p.peek().0 != Tok::End {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(e)
}

/// `re + i·im` with both parts in the real algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Value {
    pub re: Element,
    pub im: Element,
}

impl Value {
    pub fn real(re: Element) -> Value {
        Value { re, im: Element::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// The real part if the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Element> {
        self.im.is_zero().then_some(&self.re)
    }

    /// A nonzero scalar with no generators and no imaginary part.
    pub fn as_scalar(&self) -> Option<Scalar> {
        self.as_real()?.as_scalar().filter(|c| !c.is_zero())
    }

    fn add(&self, o: &Value) -> Value {
        Value { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Value) -> Value {
        Value { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn neg(&self) -> Value {
        Value { re: self.re.scale(&-Scalar::one()), im: self.im.scale(&-Scalar::one()) }
    }

    fn mul(&self, alg: &Algebra, o: &Value) -> Value {
        let re = &alg.mul(&self.re, &o.re) - &alg.mul(&self.im, &o.im);
        let im = &alg.mul(&self.re, &o.im) + &alg.mul(&self.im, &o.re);
        Value { re, im }
    }

    /// Inverse of `c m` with `m` a unit monomial and `c` a nonzero complex scalar.
    fn inverse(&self, alg: &Algebra) -> Option<Value> {
        let mut monos: Vec<Monomial> = self.re.terms().chain(self.im.terms()).map(|(m, _)| *m).collect();
        monos.sort();
        monos.dedup();
        let [m] = monos[..] else { return None };
        let minv = alg.invert_unit(&Element::monomial(m))?;
        let (a, b) = (self.re.coeff(&m), self.im.coeff(&m));
        let norm = (&a * &a + &b * &b).inv().ok()?;
        Some(Value { re: minv.scale(&(&a * &norm)), im: minv.scale(&-(&b * &norm)) })
    }

    fn pow(&self, alg: &Algebra, e: i64) -> Option<Value> {
        let mut base = if e < 0 { self.inverse(alg)? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Value::real(Element::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(alg, &base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(alg, &base);
            }
        }
        Some(acc)
    }

    /// Canonical text; the imaginary part, if any, is written `i * (...)`.
    pub fn render(&self) -> String {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => self.re.render(),
            (true, false) => format!("i * ({})", self.im.render()),
            (false, false) => format!("{} + i * ({})", self.re.render(), self.im.render()),
        }
    }
}

fn symbol_value(sym: Symbol) -> Value {
    let letter = |l: Letter| Value::real(Element::letter(l));
    let scalar = |c: Scalar| Value::real(Element::scalar(c));
    match sym {
        Symbol::Xm => letter(Letter::x(0)),
        Symbol::X0 => letter(Letter::new(X0)),
        Symbol::Xp => letter(Letter::x(2)),
        Symbol::X0Inv => letter(Letter::inverse(X0)),
        Symbol::R => letter(Letter::new(R)),
        Symbol::RInv => letter(Letter::inverse(R)),
        Symbol::Lam => letter(Letter::new(LAM)),
        Symbol::LamInv => letter(Letter::inverse(LAM)),
        Symbol::Xi(i) => letter(Letter::xi(i)),
        Symbol::Bxi(i) => letter(Letter::bxi(i)),
        Symbol::Alpha => Value::real(Element::monomial(Monomial::alpha_pow(1))),
        Symbol::Q => scalar(Scalar::q()),
        Symbol::SqrtQ => scalar(Scalar::s()),
        Symbol::H => scalar(Scalar::h()),
        Symbol::I => Value { re: Element::zero(), im: Element::one() },
    }
}

/// Evaluates an expression to its normal form.
pub fn eval(alg: &Algebra, e: &Expr) -> Result<Value, ExprError> {
    Ok(match &e.node {
        Node::Int(n) => Value::real(Element::scalar(Scalar::from_bigrational(&BigRational::from_integer(n.clone())))),
        Node::Sym(s) => symbol_value(*s),
        Node::Neg(a) => eval(alg, a)?.neg(),
        Node::Bin(op, a, b) => {
            let x = eval(alg, a)?;
            let y = eval(alg, b)?;
            match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(alg, &y),
                BinOp::Div => x.mul(alg, &y.inverse(alg).ok_or(ExprError::NotInvertible { offset: b.offset })?),
            }
        }
        Node::Pow(a, k) => eval(alg, a)?.pow(alg, *k).ok_or(ExprError::NotInvertible { offset: a.offset })?,
    })
}

/// Parses and evaluates.
pub fn evaluate(alg: &Algebra, text: &str) -> Result<Value, ExprError> {
    eval(alg, &parse(text)?)
}

/// Normal form of `text`, rendered.
pub fn normalize(alg: &Algebra, text: &str) -> Result<String, ExprError> {
    Ok(evaluate(alg, text)?.render())
}
