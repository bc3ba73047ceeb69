//! Integer Laurent polynomials in `q^{1/2}`.
//!
//! Exponents are stored in half units: the stored exponent `e` stands for
//! `q^{e/2}`. Coefficients are arbitrary precision and zero coefficients are
//! never stored, so two polynomials are equal iff their term lists are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("quantum integer [{0}] is undefined for negative arguments")]
    NegativeQuantumInt(i64),
    #[error("evaluation point q = 0 is not allowed")]
    ZeroPoint,
    #[error("sqrt_q0 = {sqrt} does not square to q0 = {q0}")]
    BadSquareRoot {
        q0: Box<BigRational>,
        sqrt: Box<BigRational>,
    },
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // strictly increasing half-exponents, nonzero coefficients
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c · q^{half_exp/2}`.
    pub fn monomial(half_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(half_exp, c)],
            }
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `q^k` for an integer power `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(2 * k, 1)
    }

    /// `q^{e/2}`.
    pub fn q_half_pow(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_inv() -> Self {
        Self::q_pow(-1)
    }

    /// Builds a polynomial from `(half_exp, coeff)` pairs in any order;
    /// repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<i64, BigInt>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms as `(half_exp, coeff)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, half_exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&half_exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// True iff every exponent is an integer power of `q`.
    pub fn has_integer_powers(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `q^{e/2}`.
    pub fn shift_half(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The substitution `q ↦ q⁻¹`.
    pub fn invert_q(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q^{1/2} := sqrt_q0` and returns the exact value.
    pub fn eval_at(&self, q0: &BigRational, sqrt_q0: &BigRational) -> Result<BigRational, LaurentError> {
        if q0.is_zero() {
            return Err(LaurentError::ZeroPoint);
        }
        if &(sqrt_q0 * sqrt_q0) != q0 {
            return Err(LaurentError::BadSquareRoot {
                q0: Box::new(q0.clone()),
                sqrt: Box::new(sqrt_q0.clone()),
            });
        }
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let base = if *e < 0 { sqrt_q0.recip() } else { sqrt_q0.clone() };
            let mut p = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                p *= &base;
            }
            sum += p * BigRational::from_integer(c.clone());
        }
        Ok(sum)
    }

    /// `[m] = q^{m-1} + q^{m-3} + … + q^{1-m}`; `[0] = 0`.
    pub fn quantum_int(m: i64) -> Result<Self, LaurentError> {
        if m < 0 {
            return Err(LaurentError::NegativeQuantumInt(m));
        }
        Ok(Self {
            terms: (0..m).map(|j| (2 * (1 - m + 2 * j), BigInt::one())).collect(),
        })
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sgn = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, sgn(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + sgn(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, sgn(c))));
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return Self {
                terms: self.terms.iter().map(|(x, d)| (x + e, d * c)).collect(),
            };
        }
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Self::from_map(acc)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a.merge(b, false));
forward_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a.merge(b, true));
forward_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.product(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, false);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = self.merge(&rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, true);
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.product(rhs);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for p in iter {
            for (e, c) in p.terms {
                *acc.entry(e).or_insert_with(BigInt::zero) += c;
            }
        }
        Self::from_map(acc)
    }
}

fn monomial_str(e: i64) -> String {
    match e {
        0 => String::new(),
        2 => "q".to_string(),
        e if e % 2 == 0 => format!("q^{}", e / 2),
        e => format!("q^({e}/2)"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let m = monomial_str(*e);
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&m)?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn signed_i64(&mut self) -> Result<i64, LaurentError> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let v = self.unsigned().ok_or_else(|| self.err("expected integer exponent"))?;
        let v: i64 = i64::try_from(v).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    // exponent after '^', returned in half units
    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if self.eat(b'(') {
            let k = self.signed_i64()?;
            let e = if self.eat(b'/') {
                let d = self.signed_i64()?;
                if d != 2 {
                    return Err(self.err("only the denominator 2 is supported"));
                }
                k
            } else {
                2 * k
            };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(e)
        } else {
            Ok(2 * self.signed_i64()?)
        }
    }

    fn term(&mut self) -> Result<(i64, BigInt), LaurentError> {
        let coeff = self.unsigned();
        let has_q = if coeff.is_some() {
            if self.eat(b'*') {
                if self.peek() != Some(b'q') {
                    return Err(self.err("expected 'q' after '*'"));
                }
                true
            } else {
                false
            }
        } else {
            if self.peek() != Some(b'q') {
                return Err(self.err("expected a coefficient or 'q'"));
            }
            true
        };
        let mut e = 0;
        if has_q {
            self.pos += 1;
            e = if self.eat(b'^') { self.exponent()? } else { 2 };
        }
        Ok((e, coeff.unwrap_or_else(BigInt::one)))
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut terms = Vec::new();
        let mut neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        loop {
            let (e, c) = self.term()?;
            terms.push((e, if neg { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Parses the display grammar, e.g. `q^-2 + 2 + q^2` or `3*q^(1/2) - q^(3/2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        p.poly()
    }
}
