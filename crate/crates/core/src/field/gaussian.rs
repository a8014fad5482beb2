use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{qarith, fmt_rational, parse_rational, rational_sqrt, Rational, Scalar};
use crate::error::{Error, Result};

/// An element `re + im*i` of `Q(i)`.
///
/// `Ord` is the lexicographic order on `(re, im)`. It exists only to pick
/// canonical representatives and has nothing to do with the field ordering
/// of the real subfield (see [`compare_fixed`]).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(a/b) + (c/d) i` from small integers.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(
            Rational::new(a.into(), b.into()),
            Rational::new(c.into(), d.into()),
        )
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The involution `a + bi -> a - bi`.
    pub fn conjugate(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `x * conj(x) = re^2 + im^2`, the exact stand-in for `|x|^2`.
    pub fn modulus_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.modulus_squared();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// A square root inside `Q(i)`, if one exists. Of the two roots the
    /// lexicographically larger one is returned.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let two = Rational::from_integer(BigInt::from(2));
        let r = rational_sqrt(&self.modulus_squared())?;
        let u = rational_sqrt(&((&r + &self.re) / &two))?;
        let root = if u.is_zero() {
            let v = rational_sqrt(&((&r - &self.re) / &two))?;
            Self::new(u, v)
        } else {
            let v = &self.im / (&two * &u);
            Self::new(u, v)
        };
        debug_assert_eq!(root.clone() * &root, *self);
        let neg = -root.clone();
        Some(if neg > root { neg } else { root })
    }
}

/// `x * conj(x)`.
pub fn modulus_squared(x: &GaussianRational) -> Rational {
    x.modulus_squared()
}

/// The (unique) field ordering on the real subfield `Q`.
pub fn compare_fixed(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::real(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        self.recip()
    }

    fn conj(&self) -> Self {
        self.conjugate()
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        g.clone()
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        Some(self.clone())
    }

    fn sqrt_rational(q: &Rational) -> Option<Self> {
        rational_sqrt(q).map(Self::real)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: qarith::add(&self.re, &rhs.re), im: qarith::add(&self.im, &rhs.im) }
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        Self { re: qarith::add(&self.re, &rhs.re), im: qarith::add(&self.im, &rhs.im) }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: qarith::sub(&self.re, &rhs.re), im: qarith::sub(&self.im, &rhs.im) }
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        Self { re: qarith::sub(&self.re, &rhs.re), im: qarith::sub(&self.im, &rhs.im) }
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(qarith::mul(&self.re, &rhs.re));
        }
        let re = qarith::sub(&qarith::mul(&self.re, &rhs.re), &qarith::mul(&self.im, &rhs.im));
        let im = qarith::add(&qarith::mul(&self.re, &rhs.im), &qarith::mul(&self.im, &rhs.re));
        Self { re, im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like the integer operators.
    fn div(self, rhs: Self) -> Self {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let im = if self.im.is_one() {
            String::new()
        } else if (-self.im.clone()).is_one() {
            "-".to_string()
        } else {
            fmt_rational(&self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if self.im.is_negative() {
            write!(f, "{}{im}i", fmt_rational(&self.re))
        } else {
            write!(f, "{}+{im}i", fmt_rational(&self.re))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Grammar: `INT`, `INT/POSINT`, optionally followed (or replaced) by a
    /// signed imaginary part ending in `i`, e.g. `-3/2+1/5i`, `i`, `-2i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar `{s}`"));
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(s)?));
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_part, im_part) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t)).map_err(|_| bad())?,
        };
        let re = if re_part.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_part).map_err(|_| bad())?
        };
        Ok(Self { re, im })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
