//! Exact scalar domains.
//!
//! Everything in this crate computes over one of two fields:
//!
//! * [`GaussianRational`], the field `Q(i)` with complex conjugation as its
//!   involution. The fixed field is `Q`, ordered in the usual way.
//! * [`TowerElement`], the multi-quadratic extension `Q(i)(sqrt m1, ..., sqrt mt)`,
//!   used only when a canonical summand needs square roots of integers.
//!
//! Both implement [`Scalar`], the interface the matrix and pencil code is
//! generic over.

mod gaussian;
mod qarith;
mod tower;

pub use gaussian::{compare_fixed, modulus_squared, GaussianRational};
pub use tower::{square_free_part, TowerContext, TowerElement};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number (always stored in lowest terms).
pub type Rational = BigRational;

/// An element of the fixed field of the involution.
pub type FixedFieldElement = Rational;

/// Exact field arithmetic shared by every scalar domain.
pub trait Scalar:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// The involution (complex conjugation on the `i` component).
    fn conj(&self) -> Self;

    fn from_gaussian(g: &GaussianRational) -> Self;

    /// Projection back to `Q(i)` when the value lies there.
    fn to_gaussian(&self) -> Option<GaussianRational>;

    /// A square root of a nonnegative rational, if this domain contains one.
    fn sqrt_rational(q: &Rational) -> Option<Self>;

    /// Images of a coefficient vector under every automorphism of the
    /// smallest subfield containing it that fixes `Q(i)`. The identity image
    /// comes first. Domains without radicals return the input unchanged.
    fn galois_images(values: &[Self]) -> Vec<Vec<Self>> {
        vec![values.to_vec()]
    }

    fn from_int(n: i64) -> Self {
        Self::from_gaussian(&GaussianRational::from_int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * &inv)
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            exp >>= 1;
        }
        acc
    }
}

/// Exact square root of a rational, if it is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Parse `INT` or `INT/POSINT`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    if num.is_empty() {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Ordering used for tie-breaking between scalars. Lexicographic on
/// `(re, im)`; not a field ordering.
pub fn total_cmp(a: &GaussianRational, b: &GaussianRational) -> Ordering {
    a.cmp(b)
}
