//! Exact rational and quadratic-surd arithmetic.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator and prints as `p/q` (or `p` when
//! `q = 1`). [`Surd`] is a rational multiple of the square root of a squarefree
//! positive integer, the value type of 6j-symbols.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact `x op y`; division by zero is an error rather than a panic.
pub fn rat_arith(x: &Rational, y: &Rational, op: RatOp) -> Result<Rational> {
    Ok(match op {
        RatOp::Add => x + y,
        RatOp::Sub => x - y,
        RatOp::Mul => x * y,
        RatOp::Div => {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            x / y
        }
    })
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fallback for numerators/denominators beyond f64 range.
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000) as usize;
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// serde adapter for the `"p/q"` string form.
pub mod rational_serde {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Half-integers

/// A half-integer `j`, stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn to_rational(self) -> Rational {
        ratio(self.0, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"k"` or `"k/2"`; decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        match s.split_once('/') {
            Some((k, "2")) => Ok(HalfInt(k.trim().parse().map_err(|_| bad())?)),
            Some(_) => Err(bad()),
            None => Ok(HalfInt::from_int(s.parse().map_err(|_| bad())?)),
        }
    }
}

// ---------------------------------------------------------------------------
// Factorials

const DEFAULT_FACTORIAL_BOUND: usize = 200;

/// Memoized factorials `0!..=bound!`. Immutable after construction, so shared
/// reads need no locking.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    values: Vec<BigUint>,
}

impl FactorialTable {
    pub fn new(bound: usize) -> Self {
        let mut values = Vec::with_capacity(bound + 1);
        values.push(BigUint::one());
        for k in 1..=bound {
            let next = &values[k - 1] * BigUint::from(k);
            values.push(next);
        }
        FactorialTable { values }
    }

    pub fn bound(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Cow<'_, BigUint> {
        match self.values.get(k) {
            Some(v) => Cow::Borrowed(v),
            None => {
                let top = self.bound();
                let mut acc = self.values[top].clone();
                for i in top + 1..=k {
                    acc *= BigUint::from(i);
                }
                Cow::Owned(acc)
            }
        }
    }
}

static FACTORIALS: Lazy<FactorialTable> = Lazy::new(|| FactorialTable::new(DEFAULT_FACTORIAL_BOUND));

pub fn factorials() -> &'static FactorialTable {
    &FACTORIALS
}

pub fn factorial(k: i64) -> Result<BigUint> {
    if k < 0 {
        return Err(Error::NegativeFactorial(k));
    }
    Ok(FACTORIALS.get(k as usize).into_owned())
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// Squarefree decomposition

/// Writes `n = s²·q` with `q` squarefree and returns `(s, q)`.
///
/// Trial division; the radicands produced here are products of small
/// factorials and short polynomials, so all prime factors are small.
pub fn square_free_decompose(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(small) = n.to_u64() {
        let (s, q) = square_free_u64(small);
        return (BigUint::from(s), BigUint::from(q));
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    loop {
        if let Some(small) = rest.to_u64() {
            let (s, q) = square_free_u64(small);
            return (square * s, free * q);
        }
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (quo, rem) = rest.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            e += 1;
        }
        if e > 0 {
            square *= bp.pow(e / 2);
            if e % 2 == 1 {
                free *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * rest)
}

fn square_free_u64(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * n)
}

// ---------------------------------------------------------------------------
// Surds

/// An exact value `coefficient · √radicand` with a squarefree radicand ≥ 1.
/// Zero is always `0·√1`, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    coefficient: Rational,
    radicand: BigUint,
}

impl Surd {
    pub fn zero() -> Self {
        Surd {
            coefficient: Rational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Surd {
            coefficient: c,
            radicand: BigUint::one(),
        }
    }

    /// `c·√q` in canonical form; `√(p/r)` is rationalized as `√(pr)/r`.
    pub fn normalize(c: &Rational, q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeRadicand(q.to_string()));
        }
        if c.is_zero() || q.is_zero() {
            return Ok(Surd::zero());
        }
        let p = q.numer().magnitude();
        let r = q.denom().magnitude();
        let (square, free) = square_free_decompose(&(p * r));
        let scale = Rational::new(BigInt::from(square), BigInt::from(r.clone()));
        Ok(Surd {
            coefficient: c * scale,
            radicand: free,
        })
    }

    /// `√q` for a non-negative rational `q`.
    pub fn sqrt(q: &Rational) -> Result<Self> {
        Surd::normalize(&Rational::one(), q)
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// Sum of two surds with the same radicand (or where one is zero).
    pub fn checked_add(&self, other: &Surd) -> Result<Surd> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::IncompatibleRadicands(self.to_string(), other.to_string()));
        }
        let c = &self.coefficient + &other.coefficient;
        Ok(if c.is_zero() {
            Surd::zero()
        } else {
            Surd {
                coefficient: c,
                radicand: self.radicand.clone(),
            }
        })
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        if self.is_zero() || other.is_zero() {
            return Surd::zero();
        }
        let g = self.radicand.gcd(&other.radicand);
        let radicand = (&self.radicand / &g) * (&other.radicand / &g);
        Surd {
            coefficient: &self.coefficient * &other.coefficient * Rational::from_integer(BigInt::from(g)),
            radicand,
        }
    }

    pub fn scale(&self, k: &Rational) -> Surd {
        if k.is_zero() {
            return Surd::zero();
        }
        Surd {
            coefficient: &self.coefficient * k,
            radicand: self.radicand.clone(),
        }
    }

    /// The rational number `self²`.
    pub fn square(&self) -> Rational {
        &self.coefficient * &self.coefficient * Rational::from_integer(BigInt::from(self.radicand.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coefficient) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn signum(&self) -> i32 {
        match self.coefficient.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            coefficient: -self.coefficient,
            radicand: self.radicand,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coefficient)
        } else {
            write!(f, "{}*sqrt({})", self.coefficient, self.radicand)
        }
    }
}

impl FromStr for Surd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once("*sqrt(") {
            Some((c, rest)) => {
                let q = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("not a surd: {s:?}")))?;
                Surd::normalize(&parse_rational(c)?, &parse_rational(q)?)
            }
            None => Ok(Surd::from_rational(parse_rational(s)?)),
        }
    }
}

impl serde::Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite sum of surds grouped by radicand. Square roots of distinct
/// squarefree integers are linearly independent over ℚ, so the sum is zero
/// iff every group is.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigUint, Rational>,
}

impl SurdSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: &Surd) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(s.radicand.clone()).or_insert_with(Rational::zero);
        *slot += &s.coefficient;
        if slot.is_zero() {
            self.terms.remove(&s.radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Surd> + '_ {
        self.terms.iter().map(|(q, c)| Surd {
            coefficient: c.clone(),
            radicand: q.clone(),
        })
    }

    /// The sum as a single surd, if at most one radicand survives.
    pub fn to_surd(&self) -> Option<Surd> {
        match self.terms.len() {
            0 => Some(Surd::zero()),
            1 => self.terms().next(),
            _ => None,
        }
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
