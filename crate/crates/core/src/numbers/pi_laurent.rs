//! Exact numbers of the form `Σ q_k π^k` with rational `q_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::float::{exponent_of, float_to_f64, pi, rational_to_float, DEFAULT_PRECISION, RM};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Laurent polynomial in π with rational coefficients. Zero coefficients are
/// never stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl PiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `q · π^k`
    pub fn monomial(q: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(k, q);
        }
        Self { terms }
    }

    /// `π^k`
    pub fn pi_pow(k: i64) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(k, q_k)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    pub fn coefficient(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational value if no power of π is involved.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// `(q, k)` if the value is a single term.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, q)| (q, *k))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, q)| (*k, q * c)).collect() }
    }

    /// Multiplication by `π^s`.
    pub fn shift(&self, s: i64) -> Self {
        Self { terms: self.terms.iter().map(|(k, q)| (k + s, q.clone())).collect() }
    }

    /// Division by a single-term value.
    pub fn div_monomial(&self, divisor: &PiLaurent) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, k) = divisor.as_monomial().ok_or_else(|| Error::NonMonomialDivisor(divisor.to_string()))?;
        Ok(self.scale(&q.recip()).shift(-k))
    }

    pub fn div_rational(&self, d: &Rational) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&d.recip()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value rounded to `precision` bits (at least 53).
    ///
    /// Terms are summed with guard bits that grow until cancellation between
    /// terms is absorbed, so the returned value meets the relative bound
    /// `2^{1−precision}` whenever the true value is nonzero.
    pub fn to_float(&self, precision: usize) -> BigFloat {
        let precision = precision.max(53);
        if self.is_zero() {
            return BigFloat::from_word(0, precision);
        }
        let mut guard = 32usize;
        loop {
            let work = precision + guard;
            let pi_w = pi(work);
            let mut sum = BigFloat::from_word(0, work);
            let mut max_exp = i64::MIN;
            for (k, q) in &self.terms {
                let mut t = rational_to_float(q, work);
                if *k != 0 {
                    let pk = pi_w.powi(k.unsigned_abs() as usize, work, RM);
                    t = if *k > 0 { t.mul(&pk, work, RM) } else { t.div(&pk, work, RM) };
                }
                if let Some(e) = exponent_of(&t) {
                    max_exp = max_exp.max(e);
                }
                sum = sum.add(&t, work, RM);
            }
            let lost = match exponent_of(&sum) {
                Some(e) => max_exp - e,
                None => i64::MAX,
            };
            // Each term carries relative error about 2^{-work+log2(|k|+2)}; the
            // sum keeps `work − lost` good bits.
            let need = 8 + (self.terms.len() as i64).ilog2_ceil() + self.max_abs_exponent().ilog2_ceil();
            if lost != i64::MAX && (guard as i64) >= lost + need {
                let mut out = sum;
                out.set_precision(precision, RM).expect("precision change");
                return out;
            }
            if guard > 1 << 20 {
                // Exact cancellation that did not show up structurally cannot
                // happen for a nonzero Laurent polynomial in a transcendental,
                // but guard against pathological sizes anyway.
                let mut out = sum;
                out.set_precision(precision, RM).expect("precision change");
                return out;
            }
            guard = if lost == i64::MAX { guard * 4 } else { (lost as usize + need as usize + 32).max(guard * 2) };
        }
    }

    /// Value as `f64`, evaluated at the default precision.
    pub fn to_f64(&self) -> f64 {
        float_to_f64(&self.to_float(DEFAULT_PRECISION))
    }

    fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0) + 1
    }

    /// Sign of the value (π is transcendental, so a nonzero polynomial never
    /// evaluates to zero).
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let f = self.to_float(64);
        if f.is_negative() {
            -1
        } else {
            1
        }
    }
}

trait ILog2Ceil {
    fn ilog2_ceil(self) -> i64;
}

impl ILog2Ceil for i64 {
    fn ilog2_ceil(self) -> i64 {
        if self <= 1 {
            0
        } else {
            64 - ((self - 1) as u64).leading_zeros() as i64
        }
    }
}

impl From<Rational> for PiLaurent {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for PiLaurent {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl AddAssign<&PiLaurent> for PiLaurent {
    fn add_assign(&mut self, rhs: &PiLaurent) {
        for (k, q) in &rhs.terms {
            let entry = self.terms.entry(*k).or_insert_with(Rational::zero);
            *entry += q;
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }
}

impl SubAssign<&PiLaurent> for PiLaurent {
    fn sub_assign(&mut self, rhs: &PiLaurent) {
        for (k, q) in &rhs.terms {
            let entry = self.terms.entry(*k).or_insert_with(Rational::zero);
            *entry -= q;
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }
}

impl MulAssign<&PiLaurent> for PiLaurent {
    fn mul_assign(&mut self, rhs: &PiLaurent) {
        *self = &*self * rhs;
    }
}

impl<'a> Mul<&'a PiLaurent> for &'a PiLaurent {
    type Output = PiLaurent;
    fn mul(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out = PiLaurent::zero();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                out += &PiLaurent::monomial(qa * qb, ka + kb);
            }
        }
        out
    }
}

impl<'a> Add<&'a PiLaurent> for &'a PiLaurent {
    type Output = PiLaurent;
    fn add(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a PiLaurent> for &'a PiLaurent {
    type Output = PiLaurent;
    fn sub(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PiLaurent> for PiLaurent {
            type Output = PiLaurent;
            fn $m(self, rhs: PiLaurent) -> PiLaurent {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PiLaurent> for PiLaurent {
            type Output = PiLaurent;
            fn $m(self, rhs: &PiLaurent) -> PiLaurent {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        Self { terms: self.terms.into_iter().map(|(k, q)| (k, -q)).collect() }
    }
}

impl Neg for &PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        -(self.clone())
    }
}

impl std::iter::Sum for PiLaurent {
    fn sum<I: Iterator<Item = PiLaurent>>(iter: I) -> Self {
        let mut acc = PiLaurent::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

fn pi_power_text(k: u64) -> String {
    if k == 1 {
        "pi".to_string()
    } else {
        format!("pi^{k}")
    }
}

/// Renders `|q| π^k`; the sign is handled by the caller.
fn term_text(q: &Rational, k: i64) -> String {
    let n = q.numer().abs();
    let d = q.denom();
    let one = BigInt::one();
    match k.cmp(&0) {
        std::cmp::Ordering::Equal => {
            if *d == one {
                n.to_string()
            } else {
                format!("{n}/{d}")
            }
        }
        std::cmp::Ordering::Greater => {
            let p = pi_power_text(k as u64);
            let head = if n == one { p } else { format!("{n}*{p}") };
            if *d == one {
                head
            } else {
                format!("{head}/{d}")
            }
        }
        std::cmp::Ordering::Less => {
            let p = pi_power_text(k.unsigned_abs());
            if *d == one {
                format!("{n}/{p}")
            } else {
                format!("{n}/({d}*{p})")
            }
        }
    }
}

impl fmt::Display for PiLaurent {
    /// Terms in decreasing exponent order, e.g. `3/2 - 2/pi - 2/pi^2` or `pi^2/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, q)) in self.terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&term_text(q, *k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiLaurent({self})")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Pi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{b7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '\u{3c0}' => {
                out.push(Tok::Pi);
                i += 1
            }
            'p' if chars.get(i + 1) == Some(&'i') => {
                out.push(Tok::Pi);
                i += 2
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Int(text.parse().expect("digits")));
            }
            other => return Err(Error::parse(s, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, reason: &str) -> Error {
        Error::parse(self.src, reason)
    }

    // sum := ['-'] product (('+'|'-') product)*
    fn sum(&mut self) -> Result<PiLaurent> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            neg = true;
        }
        let first = self.product()?;
        let mut acc = if neg { -first } else { first };
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc += &self.product()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc -= &self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // product := factor (('*'|'/') factor)*
    fn product(&mut self) -> Result<PiLaurent> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div_monomial(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := atom ['^' ['-'] int]
    fn factor(&mut self) -> Result<PiLaurent> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            neg = true;
        }
        let e = match self.next() {
            Some(Tok::Int(n)) => u32::try_from(n).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent")),
        };
        let p = base.pow(e);
        if neg {
            PiLaurent::one().div_monomial(&p)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<PiLaurent> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(PiLaurent::from_rational(Rational::from_integer(n))),
            Some(Tok::Pi) => Ok(PiLaurent::pi_pow(1)),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("unbalanced parenthesis")),
                }
            }
            _ => Err(self.err("expected number, pi or parenthesis")),
        }
    }
}

impl FromStr for PiLaurent {
    type Err = Error;

    /// Accepts the rendered form plus ordinary arithmetic on integers and `pi`
    /// (`*`, `/` by single terms, `^` with integer exponents, parentheses).
    fn from_str(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::parse(s, "empty input"));
        }
        let mut p = Parser { src: s, toks, pos: 0 };
        let v = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for PiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PiLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(s: &str) -> PiLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(PiLaurent::monomial(rat(1, 3), 2).to_string(), "pi^2/3");
        assert_eq!(pl("2/pi + 2/pi^2").to_string(), "2/pi + 2/pi^2");
        assert_eq!(pl("3/2 - 2/pi - 2/pi^2").to_string(), "3/2 - 2/pi - 2/pi^2");
        assert_eq!(PiLaurent::monomial(rat(-1, 6), 2).to_string(), "-pi^2/6");
        assert_eq!(PiLaurent::monomial(rat(1, 2), -1).to_string(), "1/(2*pi)");
        assert_eq!(PiLaurent::monomial(rat(2, 45), 4).to_string(), "2*pi^4/45");
        assert_eq!(PiLaurent::zero().to_string(), "0");
        assert_eq!(PiLaurent::pi_pow(1).to_string(), "pi");
    }

    #[test]
    fn parsing_accepts_looser_forms() {
        assert_eq!(pl("(1/2)*pi^2"), PiLaurent::monomial(rat(1, 2), 2));
        assert_eq!(pl("(pi^2/6)^0"), PiLaurent::one());
        assert_eq!(pl("pi^-2 * 4"), PiLaurent::monomial(rat(4, 1), -2));
        assert_eq!(pl("-(1 - pi)"), pl("pi - 1"));
        assert!("pi +".parse::<PiLaurent>().is_err());
        assert!("1/(1+pi)".parse::<PiLaurent>().is_err());
        assert!("1/0".parse::<PiLaurent>().is_err());
    }

    #[test]
    fn documented_arithmetic() {
        let v = pl("pi^2/3");
        assert_eq!(&v * &v, pl("pi^4/9"));
        assert_eq!(pl("2/pi + 2/pi^2") + pl("3/2 - 2/pi - 2/pi^2"), pl("3/2"));
        assert_eq!(pl("pi^2/6").pow(0), PiLaurent::one());
    }

    #[test]
    fn division_rules() {
        let a = pl("pi^2/3 + 1");
        assert_eq!(a.div_monomial(&pl("pi^2/3")).unwrap(), pl("1 + 3/pi^2"));
        assert_eq!(a.div_monomial(&PiLaurent::zero()), Err(Error::DivisionByZero));
        assert!(matches!(a.div_monomial(&pl("1 + pi")), Err(Error::NonMonomialDivisor(_))));
    }

    #[test]
    fn float_values() {
        assert_eq!(PiLaurent::zero().to_f64(), 0.0);
        assert!((pl("pi^2/3").to_f64() - 3.289868133696453).abs() < 1e-15);
        assert!((pl("pi^2/12").to_f64() - 0.8224670334241132).abs() < 1e-15);
        // Heavy cancellation: 3/2 - 2/pi - 2/pi^2 ≈ 0.6605...
        let c = pl("3/2 - 2/pi - 2/pi^2");
        let direct = 1.5 - 2.0 / std::f64::consts::PI - 2.0 / std::f64::consts::PI.powi(2);
        assert!((c.to_f64() - direct).abs() < 1e-15);
    }
}
