//! Exact coefficients: multivariate Laurent polynomials with rational coefficients.
//!
//! Variables live in a process-wide registry (`q` and `t` are registered by
//! default). Exponent vectors are dense over the registry, so two scalars can
//! always be combined and equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum number of formal variables.
pub const MAX_VARS: usize = 4;

fn registry() -> &'static RwLock<Vec<String>> {
    static REGISTRY: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(vec!["q".to_string(), "t".to_string()]))
}

/// Names of the registered variables, in registry order.
pub fn variables() -> Vec<String> {
    registry().read().unwrap().clone()
}

/// Registers a new variable (idempotent) and returns its slot.
pub fn register_variable(name: &str) -> Result<usize> {
    if !is_identifier(name) {
        return Err(Error::ScalarParse {
            input: name.to_string(),
            reason: "variable names are alphabetic identifiers".into(),
        });
    }
    let mut reg = registry().write().unwrap();
    if let Some(i) = reg.iter().position(|v| v == name) {
        return Ok(i);
    }
    if reg.len() == MAX_VARS {
        return Err(Error::RegistryFull(MAX_VARS));
    }
    reg.push(name.to_string());
    Ok(reg.len() - 1)
}

fn variable_index(name: &str) -> Result<usize> {
    let reg = registry().read().unwrap();
    reg.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string(), reg.join(", ")))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector over the variable registry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        Monomial(out)
    }

    fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }
}

/// An exact Laurent polynomial over the rationals.
///
/// Terms are kept sorted by monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(Monomial, BigRational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::monomial(c, Monomial::ONE)
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        if c.is_zero() {
            Scalar::zero()
        } else {
            Scalar {
                terms: vec![(m, c)],
            }
        }
    }

    /// The registered variable `name` raised to `exp`.
    pub fn var_pow(name: &str, exp: i32) -> Result<Self> {
        let i = variable_index(name)?;
        let mut m = Monomial::ONE;
        m.0[i] = exp;
        Ok(Scalar::monomial(BigRational::one(), m))
    }

    pub fn var(name: &str) -> Result<Self> {
        Scalar::var_pow(name, 1)
    }

    /// `q^exp`; `q` is always registered.
    pub fn q_pow(exp: i32) -> Self {
        let mut m = Monomial::ONE;
        m.0[0] = exp;
        Scalar::monomial(BigRational::one(), m)
    }

    /// `t^exp`; `t` is always registered.
    pub fn t_pow(exp: i32) -> Self {
        let mut m = Monomial::ONE;
        m.0[1] = exp;
        Scalar::monomial(BigRational::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Constant term if the scalar has no variable part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Inverse of a nonzero single-term scalar.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [(m, c)] => Ok(Scalar::monomial(c.recip(), m.pow(-1))),
            _ => Err(Error::NotInvertible),
        }
    }

    /// Integer power; negative exponents require a single-term scalar.
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return Ok(Scalar::monomial(
                num_traits::pow(c.clone(), k as usize),
                m.pow(k),
            ));
        }
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    fn from_unsorted(mut raw: Vec<(Monomial, BigRational)>) -> Self {
        raw.sort_unstable_by_key(|a| a.0);
        let mut terms: Vec<(Monomial, BigRational)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        Scalar { terms }
    }

    fn merge(a: &[(Monomial, BigRational)], b: &[(Monomial, BigRational)], negate_b: bool) -> Self {
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigRational| if negate_b { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push((b[j].0, sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        terms.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().map(|(m, c)| (*m, sign(c))));
        Scalar { terms }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        Scalar::merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                raw.push((ma.mul(mb), ca * cb));
            }
        }
        if raw.len() == 1 {
            return Scalar { terms: raw };
        }
        Scalar::from_unsorted(raw)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        // single-term fast path keeps accumulation loops allocation-light
        if let [(m, c)] = rhs.terms.as_slice() {
            match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
                Ok(i) => {
                    self.terms[i].1 += c;
                    if self.terms[i].1.is_zero() {
                        self.terms.remove(i);
                    }
                }
                Err(i) => self.terms.insert(i, (*m, c.clone())),
            }
            return;
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = variables();
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(fmt_rational(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names.get(i).map(String::as_str).unwrap_or("?");
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Scalar::from_int(n)),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `(q - q^-1)*t^2 + 1/3` style expressions.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser {
            input: s,
            tokens,
            pos: 0,
        };
        let value = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(value)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::ScalarParse {
                input: s.to_string(),
                reason: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::ScalarParse {
            input: self.input.to_string(),
            reason: reason.to_string(),
        }
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token::Sym(x)) if *x == c)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc += self.term()?;
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = acc * self.unary()?;
            } else if self.peek_sym('/') {
                self.pos += 1;
                let d = self.unary()?;
                acc = acc
                    * d.inv()
                        .map_err(|_| self.error("divisor must be a nonzero monomial"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek_sym('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek_sym('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.exponent()?;
        base.pow(exp)
            .map_err(|_| self.error("negative powers need a monomial base"))
    }

    fn exponent(&mut self) -> Result<i32> {
        let mut sign = 1;
        if self.peek_sym('(') {
            self.pos += 1;
            let e = self.exponent()?;
            if !self.peek_sym(')') {
                return Err(self.error("expected `)` after exponent"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if self.peek_sym('-') {
            self.pos += 1;
            sign = -1;
        }
        match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => {
                let e: i32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
                self.pos += 1;
                Ok(sign * e)
            }
            _ => Err(self.error("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Scalar::var(&name)
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.error("unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}
