//! Coefficient expression language.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' exponent)?
//! base   := number | 'pi' | 'i' | var | func '(' expr ')' | '(' expr ')'
//! var    := 'xi' | 'xi1' .. 'xi9'
//! func   := 'sin' | 'cos' | 'exp' | 'atan' | 'jbracket' | 'conj'
//! exponent := signed rational, optionally parenthesized, e.g. 2, -1, 1/2, (-3/2)
//! number := decimal or rational 'p/q'
//! ```
//!
//! `jbracket(e)` is the Japanese bracket (1 + e^2)^(1/2); `xi` is the sole
//! coordinate in dimension one. Division reports poles instead of
//! producing NaN, and expressions differentiate symbolically.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::freq::{rational_to_f64, Rational};

/// Highest symbolic derivative order handed out before erroring.
pub const MAX_DERIVATIVE_ORDER: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rational),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    Atan(Box<Expr>),
    Jbracket(Box<Expr>),
    Conj(Box<Expr>),
}

impl Expr {
    pub fn constant(c: Complex64) -> Expr {
        Expr::Const(c)
    }

    pub fn zero() -> Expr {
        Expr::Const(Complex64::ZERO)
    }

    pub fn one() -> Expr {
        Expr::Const(Complex64::ONE)
    }

    pub fn is_const_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.re == 0.0 && c.im == 0.0)
    }

    pub fn is_const_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.re == 1.0 && c.im == 0.0)
    }

    /// Smart constructors folding constants and dropping trivial factors.
    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
            (a, b) if a.is_const_zero() => b,
            (a, b) if b.is_const_zero() => a,
            (a, b) => Expr::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
            (a, b) if b.is_const_zero() => a,
            (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
            (a, _) if a.is_const_zero() => Expr::zero(),
            (_, b) if b.is_const_zero() => Expr::zero(),
            (a, b) if a.is_const_one() => b,
            (a, b) if b.is_const_one() => a,
            (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (a, b) if b.is_const_one() => a,
            (a, _) if a.is_const_zero() => Expr::zero(),
            (a, b) => Expr::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(base: Expr, p: Rational) -> Expr {
        if p.is_zero() {
            Expr::one()
        } else if p == Rational::from_integer(1) {
            base
        } else {
            Expr::Pow(Box::new(base), p)
        }
    }

    /// Evaluate at a real point xi.
    pub fn eval(&self, xi: &[f64]) -> Result<Complex64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var(k) => Complex64::new(xi[*k], 0.0),
            Expr::Add(a, b) => a.eval(xi)? + b.eval(xi)?,
            Expr::Sub(a, b) => a.eval(xi)? - b.eval(xi)?,
            Expr::Mul(a, b) => a.eval(xi)? * b.eval(xi)?,
            Expr::Div(a, b) => {
                let den = b.eval(xi)?;
                if den.norm_sqr() == 0.0 {
                    return Err(Error::Pole {
                        at: xi.to_vec(),
                        what: "division by zero".into(),
                    });
                }
                a.eval(xi)? / den
            }
            Expr::Pow(b, p) => {
                let base = b.eval(xi)?;
                if base.norm_sqr() == 0.0 && p.is_negative() {
                    return Err(Error::Pole {
                        at: xi.to_vec(),
                        what: format!("zero raised to {p}"),
                    });
                }
                complex_pow(base, *p)
            }
            Expr::Sin(a) => a.eval(xi)?.sin(),
            Expr::Cos(a) => a.eval(xi)?.cos(),
            Expr::Exp(a) => a.eval(xi)?.exp(),
            Expr::Atan(a) => a.eval(xi)?.atan(),
            Expr::Jbracket(a) => {
                let z = a.eval(xi)?;
                (Complex64::ONE + z * z).sqrt()
            }
            Expr::Conj(a) => a.eval(xi)?.conj(),
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Pole {
                at: xi.to_vec(),
                what: "non-finite value".into(),
            })
        }
    }

    /// Symbolic partial derivative in coordinate `var` (coordinates are real).
    pub fn diff(&self, var: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Var(k) => {
                if *k == var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Add(a, b) => Expr::add(a.diff(var), b.diff(var)),
            Expr::Sub(a, b) => Expr::sub(a.diff(var), b.diff(var)),
            Expr::Mul(a, b) => Expr::add(
                Expr::mul(a.diff(var), (**b).clone()),
                Expr::mul((**a).clone(), b.diff(var)),
            ),
            Expr::Div(a, b) => Expr::div(
                Expr::sub(
                    Expr::mul(a.diff(var), (**b).clone()),
                    Expr::mul((**a).clone(), b.diff(var)),
                ),
                Expr::pow((**b).clone(), Rational::from_integer(2)),
            ),
            Expr::Pow(b, p) => Expr::mul(
                Expr::mul(
                    Expr::constant(Complex64::new(rational_to_f64(*p), 0.0)),
                    Expr::pow((**b).clone(), p - Rational::from_integer(1)),
                ),
                b.diff(var),
            ),
            Expr::Sin(a) => Expr::mul(Expr::Cos(a.clone()), a.diff(var)),
            Expr::Cos(a) => Expr::mul(
                Expr::mul(Expr::constant(-Complex64::ONE), Expr::Sin(a.clone())),
                a.diff(var),
            ),
            Expr::Exp(a) => Expr::mul(Expr::Exp(a.clone()), a.diff(var)),
            Expr::Atan(a) => Expr::div(
                a.diff(var),
                Expr::add(
                    Expr::one(),
                    Expr::mul((**a).clone(), (**a).clone()),
                ),
            ),
            Expr::Jbracket(a) => Expr::div(
                Expr::mul((**a).clone(), a.diff(var)),
                Expr::Jbracket(a.clone()),
            ),
            Expr::Conj(a) => Expr::Conj(Box::new(a.diff(var))),
        }
    }

    /// Render back into the coefficient grammar. Round-trips through
    /// `CoeffFn::parse` to an expression with identical values.
    pub fn to_text(&self, dim: usize) -> String {
        self.render(dim, 0)
    }

    fn render(&self, dim: usize, parent_prec: u8) -> String {
        let (text, prec) = match self {
            Expr::Const(c) => return render_const(*c, parent_prec),
            Expr::Var(k) => {
                let name = if dim == 1 {
                    "xi".to_string()
                } else {
                    format!("xi{}", k + 1)
                };
                (name, 4)
            }
            Expr::Add(a, b) => (
                format!("{} + {}", a.render(dim, 1), b.render(dim, 1)),
                1,
            ),
            Expr::Sub(a, b) => (
                format!("{} - {}", a.render(dim, 1), b.render(dim, 2)),
                1,
            ),
            Expr::Mul(a, b) => (
                format!("{} * {}", a.render(dim, 2), b.render(dim, 2)),
                2,
            ),
            Expr::Div(a, b) => (
                format!("{} / {}", a.render(dim, 2), b.render(dim, 3)),
                2,
            ),
            Expr::Pow(b, p) => (
                format!("{}^({})", b.render(dim, 4), p),
                3,
            ),
            Expr::Sin(a) => (format!("sin({})", a.render(dim, 0)), 4),
            Expr::Cos(a) => (format!("cos({})", a.render(dim, 0)), 4),
            Expr::Exp(a) => (format!("exp({})", a.render(dim, 0)), 4),
            Expr::Atan(a) => (format!("atan({})", a.render(dim, 0)), 4),
            Expr::Jbracket(a) => (format!("jbracket({})", a.render(dim, 0)), 4),
            Expr::Conj(a) => (format!("conj({})", a.render(dim, 0)), 4),
        };
        if prec < parent_prec {
            format!("({text})")
        } else {
            text
        }
    }

    /// True when no variable occurs in the tree.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var(_) => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
            Expr::Pow(a, _) => a.is_constant(),
            Expr::Sin(a)
            | Expr::Cos(a)
            | Expr::Exp(a)
            | Expr::Atan(a)
            | Expr::Jbracket(a)
            | Expr::Conj(a) => a.is_constant(),
        }
    }
}

fn render_float(v: f64) -> String {
    let s = format!("{v}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

fn render_const(c: Complex64, parent_prec: u8) -> String {
    let wrap = |s: String, needed: bool| {
        if needed && parent_prec > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    if c.im == 0.0 {
        if c.re >= 0.0 {
            render_float(c.re)
        } else {
            wrap(format!("0 - {}", render_float(-c.re)), true)
        }
    } else if c.re == 0.0 && c.im == 1.0 {
        "i".to_string()
    } else if c.re == 0.0 {
        if c.im >= 0.0 {
            wrap(format!("{}*i", render_float(c.im)), parent_prec > 2)
        } else {
            wrap(format!("0 - {}*i", render_float(-c.im)), true)
        }
    } else {
        let sign = if c.im >= 0.0 { "+" } else { "-" };
        wrap(
            format!("{} {sign} {}*i", render_float(c.re), render_float(c.im.abs())),
            true,
        )
    }
}

fn complex_pow(base: Complex64, p: Rational) -> Complex64 {
    if p.is_integer() {
        let n = *p.numer();
        if let Ok(n32) = i32::try_from(n) {
            return base.powi(n32);
        }
    }
    base.powf(p.to_f64().unwrap_or(f64::NAN))
}

/// A Bohr--Fourier coefficient function of xi.
///
/// Wraps an expression tree together with an evaluation offset (the
/// argument translate accumulated by symbol translation, adjoints and
/// composition) and a conjugation flag. Keeping shift and conjugation
/// outside the tree makes the adjoint an exact structural involution.
#[derive(Debug, Clone)]
pub struct CoeffFn {
    tree: Arc<Expr>,
    offset: Vec<f64>,
    conjugated: bool,
}

impl PartialEq for CoeffFn {
    fn eq(&self, other: &Self) -> bool {
        self.conjugated == other.conjugated
            && self.offset == other.offset
            && *self.tree == *other.tree
    }
}

impl CoeffFn {
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let tree = Parser::new(text, dim).parse()?;
        Ok(Self::from_expr(tree, dim))
    }

    pub fn from_expr(tree: Expr, dim: usize) -> Self {
        Self {
            tree: Arc::new(tree),
            offset: vec![0.0; dim],
            conjugated: false,
        }
    }

    pub fn constant(c: Complex64, dim: usize) -> Self {
        Self::from_expr(Expr::constant(c), dim)
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(Complex64::ZERO, dim)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(Complex64::ONE, dim)
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.tree.is_const_zero()
    }

    /// True when the coefficient does not depend on xi.
    pub fn is_constant_in_xi(&self) -> bool {
        self.tree.is_constant()
    }

    pub fn eval(&self, xi: &[f64]) -> Result<Complex64> {
        debug_assert_eq!(xi.len(), self.offset.len());
        let shifted: Vec<f64> = xi.iter().zip(&self.offset).map(|(x, o)| x + o).collect();
        let v = self.tree.eval(&shifted)?;
        Ok(if self.conjugated { v.conj() } else { v })
    }

    /// The function xi -> f(xi + dxi).
    pub fn shift(&self, dxi: &[f64]) -> Self {
        let mut out = self.clone();
        for (o, d) in out.offset.iter_mut().zip(dxi) {
            *o += d;
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        out.conjugated = !out.conjugated;
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::ONE {
            return self.clone();
        }
        Self::from_expr(
            Expr::mul(Expr::constant(c), self.materialize()),
            self.dim(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_expr(
            Expr::add(self.materialize(), other.materialize()),
            self.dim(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_expr(
            Expr::mul(self.materialize(), other.materialize()),
            self.dim(),
        )
    }

    /// Partial derivative in coordinate `var`; the offset passes through.
    pub fn derivative(&self, var: usize) -> Self {
        Self {
            tree: Arc::new(self.tree.diff(var)),
            offset: self.offset.clone(),
            conjugated: self.conjugated,
        }
    }

    /// Repeated partials per the multi-index alpha, guarded by the
    /// symbolic order cap.
    pub fn derivative_multi(&self, alpha: &[u32]) -> Result<Self> {
        let total: u32 = alpha.iter().sum();
        if total > MAX_DERIVATIVE_ORDER {
            return Err(Error::DerivativeOrder {
                requested: total,
                max: MAX_DERIVATIVE_ORDER,
            });
        }
        let mut cur = self.clone();
        for (var, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                cur = cur.derivative(var);
            }
        }
        Ok(cur)
    }

    /// Grammar text that parses back to an equivalent coefficient.
    pub fn to_text(&self) -> String {
        self.materialize().to_text(self.dim())
    }

    /// Bake offset and conjugation into a plain tree.
    pub fn materialize(&self) -> Expr {
        let mut tree = (*self.tree).clone();
        if self.offset.iter().any(|&o| o != 0.0) {
            tree = substitute_shift(&tree, &self.offset);
        }
        if self.conjugated {
            tree = Expr::Conj(Box::new(tree));
        }
        tree
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.tree)
    }
}

fn substitute_shift(e: &Expr, offset: &[f64]) -> Expr {
    match e {
        Expr::Const(c) => Expr::Const(*c),
        Expr::Var(k) => Expr::add(
            Expr::Var(*k),
            Expr::constant(Complex64::new(offset[*k], 0.0)),
        ),
        Expr::Add(a, b) => Expr::add(substitute_shift(a, offset), substitute_shift(b, offset)),
        Expr::Sub(a, b) => Expr::sub(substitute_shift(a, offset), substitute_shift(b, offset)),
        Expr::Mul(a, b) => Expr::mul(substitute_shift(a, offset), substitute_shift(b, offset)),
        Expr::Div(a, b) => Expr::div(substitute_shift(a, offset), substitute_shift(b, offset)),
        Expr::Pow(a, p) => Expr::pow(substitute_shift(a, offset), *p),
        Expr::Sin(a) => Expr::Sin(Box::new(substitute_shift(a, offset))),
        Expr::Cos(a) => Expr::Cos(Box::new(substitute_shift(a, offset))),
        Expr::Exp(a) => Expr::Exp(Box::new(substitute_shift(a, offset))),
        Expr::Atan(a) => Expr::Atan(Box::new(substitute_shift(a, offset))),
        Expr::Jbracket(a) => Expr::Jbracket(Box::new(substitute_shift(a, offset))),
        Expr::Conj(a) => Expr::Conj(Box::new(substitute_shift(a, offset))),
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, dim: usize) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            dim,
        }
    }

    fn parse(mut self) -> Result<Expr> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::sub(Expr::zero(), self.term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' {
                Expr::add(acc, rhs)
            } else {
                Expr::sub(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                Expr::mul(acc, rhs)
            } else {
                Expr::div(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let p = self.exponent()?;
            return Ok(Expr::pow(base, p));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Rational> {
        let parenthesized = self.peek() == Some(b'(');
        if parenthesized {
            self.pos += 1;
        }
        let sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1i64
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        let numer = self.integer()?;
        // a '/' belongs to the exponent only when a digit follows;
        // otherwise it is term-level division (e.g. x^2 / (1 + x))
        let mut denom = 1;
        if self.peek() == Some(b'/') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.integer()?;
                if d == 0 {
                    return Err(self.err("zero denominator in exponent"));
                }
                denom = d;
            } else {
                self.pos = save;
            }
        }
        if parenthesized {
            self.expect(b')')?;
        }
        Ok(Rational::new(sign * numer, denom))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.err(&format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // optional exponent part such as 1.5e-3
        if self.pos < self.bytes.len()
            && (self.bytes[self.pos] == b'e' || self.bytes[self.pos] == b'E')
        {
            let mut ahead = self.pos + 1;
            if ahead < self.bytes.len() && (self.bytes[ahead] == b'+' || self.bytes[ahead] == b'-')
            {
                ahead += 1;
            }
            if ahead < self.bytes.len() && self.bytes[ahead].is_ascii_digit() {
                self.pos = ahead;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = &self.src[start..self.pos];
        if text.is_empty() {
            return Err(self.err("expected a number"));
        }
        let v: f64 = text
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: format!("malformed number '{text}'"),
            })?;
        Ok(Expr::constant(Complex64::new(v, 0.0)))
    }

    fn identifier(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        match name {
            "pi" => Ok(Expr::constant(Complex64::new(std::f64::consts::PI, 0.0))),
            "i" => Ok(Expr::constant(Complex64::I)),
            "xi" => {
                if self.dim != 1 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "'xi' is only valid in dimension 1; use xi1..xi9".into(),
                    });
                }
                Ok(Expr::Var(0))
            }
            _ if name.starts_with("xi") && name.len() == 3 => {
                let k = (name.as_bytes()[2] as char)
                    .to_digit(10)
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Parse {
                        pos: start,
                        msg: format!("unknown identifier '{name}'"),
                    })? as usize;
                if k > self.dim {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("variable '{name}' exceeds dimension {}", self.dim),
                    });
                }
                Ok(Expr::Var(k - 1))
            }
            "sin" | "cos" | "exp" | "atan" | "jbracket" | "conj" => {
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(match name {
                    "sin" => Expr::Sin(Box::new(arg)),
                    "cos" => Expr::Cos(Box::new(arg)),
                    "exp" => Expr::Exp(Box::new(arg)),
                    "atan" => Expr::Atan(Box::new(arg)),
                    "jbracket" => Expr::Jbracket(Box::new(arg)),
                    _ => Expr::Conj(Box::new(arg)),
                })
            }
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("unknown identifier '{name}'"),
            }),
        }
    }
}
