//! Exact arithmetic in the real field Q(√2, √3).
//!
//! Every element is stored as `a + b·√2 + c·√3 + d·√6` with reduced
//! big-integer fractions, so equality is component-wise. Signs are decided
//! by outward-rounded fixed-point interval evaluation with doubling
//! precision; because {1, √2, √3, √6} is linearly independent over Q, a
//! nonzero component vector always has a nonzero value and the refinement
//! terminates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.732_050_807_568_877_2;
const SQRT6: f64 = 2.449_489_742_783_178;

static START_PRECISION_BITS: AtomicU32 = AtomicU32::new(128);

/// Sets the starting precision (in bits) of the sign refinement loop.
pub fn set_sign_start_precision(bits: u32) {
    START_PRECISION_BITS.store(bits.clamp(8, 1 << 16), AtomicOrdering::Relaxed);
}

pub fn sign_start_precision() -> u32 {
    START_PRECISION_BITS.load(AtomicOrdering::Relaxed)
}

/// An exact element of Q(√2, √3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QF {
    // coefficients of 1, √2, √3, √6
    c: [BigRational; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surd {
    One,
    R2,
    R3,
    R6,
}

impl Surd {
    fn index(self) -> usize {
        match self {
            Surd::One => 0,
            Surd::R2 => 1,
            Surd::R3 => 2,
            Surd::R6 => 3,
        }
    }

    fn radicand(self) -> u32 {
        match self {
            Surd::One => 1,
            Surd::R2 => 2,
            Surd::R3 => 3,
            Surd::R6 => 6,
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QF {
    pub fn from_components(c: [BigRational; 4]) -> Self {
        QF { c }
    }

    pub fn zero() -> Self {
        QF {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut q = Self::zero();
        q.c[0] = r;
        q
    }

    /// `coef · surd`
    pub fn surd(coef: BigRational, s: Surd) -> Self {
        let mut q = Self::zero();
        q.c[s.index()] = coef;
        q
    }

    pub fn sqrt2() -> Self {
        Self::surd(BigRational::one(), Surd::R2)
    }

    pub fn sqrt3() -> Self {
        Self::surd(BigRational::one(), Surd::R3)
    }

    pub fn sqrt6() -> Self {
        Self::surd(BigRational::one(), Surd::R6)
    }

    pub fn components(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.c[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.c[0].is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.c[0]) + f(&self.c[1]) * SQRT2 + f(&self.c[2]) * SQRT3 + f(&self.c[3]) * SQRT6
    }

    /// Conjugate under √3 ↦ −√3 (fixes Q(√2)).
    fn conj3(&self) -> Self {
        QF {
            c: [
                self.c[0].clone(),
                self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x·conj3(x) lies in Q(√2); finish with the √2-conjugate.
        let c3 = self.conj3();
        let n1 = self * &c3;
        let (s, t) = (n1.c[0].clone(), n1.c[1].clone());
        let norm = &s * &s - BigRational::from_integer(BigInt::from(2)) * &t * &t;
        let mut partner = QF::zero();
        partner.c[0] = s;
        partner.c[1] = -t;
        let num = &c3 * &partner;
        let inv_norm = norm.recip();
        Ok(num.scale(&inv_norm))
    }

    pub fn checked_div(&self, rhs: &QF) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QF {
            c: [
                &self.c[0] * r,
                &self.c[1] * r,
                &self.c[2] * r,
                &self.c[3] * r,
            ],
        }
    }

    /// Common positive denominator and the integer numerators.
    fn integer_form(&self) -> (BigInt, [BigInt; 4]) {
        let den = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let nums = std::array::from_fn(|i| {
            let r = &self.c[i];
            r.numer() * (&den / r.denom())
        });
        (den, nums)
    }

    /// Outward-rounded bounds: the value lies in `[lo, hi] / (den · 2^bits)`.
    fn bounds(&self, bits: u32) -> (BigInt, BigInt, BigInt) {
        let (den, nums) = self.integer_form();
        let mut lo = &nums[0] << bits;
        let mut hi = lo.clone();
        for (k, s) in [Surd::R2, Surd::R3, Surd::R6].into_iter().enumerate() {
            let coef = &nums[k + 1];
            if coef.is_zero() {
                continue;
            }
            // floor(√r · 2^bits) ≤ √r · 2^bits < floor + 1
            let root_lo = (BigInt::from(s.radicand()) << (2 * bits)).sqrt();
            let root_hi = &root_lo + 1;
            if coef.is_positive() {
                lo += coef * &root_lo;
                hi += coef * &root_hi;
            } else {
                lo += coef * &root_hi;
                hi += coef * &root_lo;
            }
        }
        (lo, hi, den)
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.c[0].is_positive() { 1 } else { -1 };
        }
        let mut bits = sign_start_precision();
        loop {
            let (lo, hi, _) = self.bounds(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits = bits.saturating_mul(2);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.c[0].floor().to_integer();
        }
        let mut bits = sign_start_precision();
        loop {
            let (lo, hi, den) = self.bounds(bits);
            let scale = den << bits;
            let f_lo = lo.div_floor(&scale);
            let f_hi = hi.div_floor(&scale);
            if f_lo == f_hi {
                return f_lo;
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Representative of `self mod m` in `[0, m)`; `m` must be positive.
    pub fn rem_euclid(&self, m: &QF) -> QF {
        let q = self.checked_div(m).expect("modulus must be nonzero").floor();
        self - &(m * &QF::from_bigint(q))
    }

    /// Rational parts with a common denominator removed; used to embed
    /// vectors of QF values into Q^4 coordinates.
    pub fn rationalize(&self) -> [BigRational; 4] {
        self.c.clone()
    }
}

impl Default for QF {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QF {
    fn from(n: i64) -> Self {
        QF::from_int(n)
    }
}

impl From<BigRational> for QF {
    fn from(r: BigRational) -> Self {
        QF::from_rational(r)
    }
}

impl PartialOrd for QF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QF {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a QF> for &'a QF {
    type Output = QF;
    fn add(self, rhs: &QF) -> QF {
        QF {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl<'a> Sub<&'a QF> for &'a QF {
    type Output = QF;
    fn sub(self, rhs: &QF) -> QF {
        QF {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl<'a> Mul<&'a QF> for &'a QF {
    type Output = QF;
    fn mul(self, rhs: &QF) -> QF {
        let [a, b, c, d] = &self.c;
        let [e, f, g, h] = &rhs.c;
        let two = BigRational::from_integer(BigInt::from(2));
        let three = BigRational::from_integer(BigInt::from(3));
        let six = BigRational::from_integer(BigInt::from(6));
        QF {
            c: [
                a * e + &two * (b * f) + &three * (c * g) + &six * (d * h),
                a * f + b * e + &three * (c * h + d * g),
                a * g + c * e + &two * (b * h + d * f),
                a * h + d * e + b * g + c * f,
            ],
        }
    }
}

impl<'a> Div<&'a QF> for &'a QF {
    type Output = QF;
    /// Panics on division by zero; use [`QF::checked_div`] to get an error.
    fn div(self, rhs: &QF) -> QF {
        self.checked_div(rhs).expect("QF division by zero")
    }
}

impl Neg for &QF {
    type Output = QF;
    fn neg(self) -> QF {
        QF {
            c: std::array::from_fn(|i| -self.c[i].clone()),
        }
    }
}

impl Neg for QF {
    type Output = QF;
    fn neg(self) -> QF {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QF> for QF {
            type Output = QF;
            fn $m(self, rhs: QF) -> QF {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QF> for QF {
            type Output = QF;
            fn $m(self, rhs: &QF) -> QF {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QF> for &'a QF {
            type Output = QF;
            fn $m(self, rhs: QF) -> QF {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QF> for QF {
    fn add_assign(&mut self, rhs: &QF) {
        for i in 0..4 {
            self.c[i] += &rhs.c[i];
        }
    }
}

impl SubAssign<&QF> for QF {
    fn sub_assign(&mut self, rhs: &QF) {
        for i in 0..4 {
            self.c[i] -= &rhs.c[i];
        }
    }
}

impl MulAssign<&QF> for QF {
    fn mul_assign(&mut self, rhs: &QF) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for QF {
    fn sum<I: Iterator<Item = QF>>(iter: I) -> QF {
        iter.fold(QF::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QF {
    /// Writes the canonical literal form, e.g. `1 - 1/2*r6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["", "r2", "r3", "r6"];
        let mut first = true;
        for (i, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            let body = if i == 0 {
                fmt_rational(&mag)
            } else if mag.is_one() {
                NAMES[i].to_string()
            } else {
                format!("{}*{}", fmt_rational(&mag), NAMES[i])
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QF({self})")
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn surd(&mut self) -> Result<Surd> {
        if self.peek() != Some(b'r') {
            return self.err("expected r2, r3 or r6");
        }
        self.pos += 1;
        let s = match self.peek() {
            Some(b'2') => Surd::R2,
            Some(b'3') => Surd::R3,
            Some(b'6') => Surd::R6,
            _ => return self.err("expected r2, r3 or r6"),
        };
        self.pos += 1;
        Ok(s)
    }

    fn term(&mut self) -> Result<QF> {
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
            self.skip_ws();
        }
        let value = if self.peek() == Some(b'r') {
            QF::surd(BigRational::one(), self.surd()?)
        } else {
            let num = self.digits()?;
            let mut r = BigRational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.digits()?;
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                r = r / BigRational::from_integer(den);
            }
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                QF::surd(r, self.surd()?)
            } else {
                self.pos = save;
                QF::from_rational(r)
            }
        };
        Ok(if negative { -value } else { value })
    }

    fn expr(&mut self) -> Result<QF> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                Some(_) => return self.err("expected `+`, `-` or end of literal"),
            }
        }
    }
}

impl FromStr for QF {
    type Err = Error;

    /// Parses the literal grammar `1/2`, `1/2*r3`, `1 - 1/2*r6`, `-r2`.
    fn from_str(s: &str) -> Result<Self> {
        Lexer {
            s: s.as_bytes(),
            pos: 0,
        }
        .expr()
    }
}

impl Serialize for QF {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QF {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = QF;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an exact literal string such as \"1/2*r3\" or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<QF, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<QF, E> {
                Ok(QF::from_int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<QF, E> {
                Ok(QF::from_bigint(BigInt::from(v)))
            }
            fn visit_f64<E: serde::de::Error>(self, _: f64) -> std::result::Result<QF, E> {
                Err(E::custom("floating-point values are not accepted; use an exact literal"))
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// Shorthand for parsing a literal in code and tests; panics on bad input.
pub fn qf(s: &str) -> QF {
    s.parse().unwrap_or_else(|e| panic!("bad QF literal {s:?}: {e}"))
}
