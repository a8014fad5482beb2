//! Faster rational kernels for the hot paths of `Q(i)` arithmetic.
//!
//! `BigRational`'s operators reduce every result with a full gcd of the
//! (already multiplied) numerator and denominator. The versions here keep
//! the operands' lowest-terms invariant in mind and only take gcds of the
//! smaller factors, so results come out reduced without the final pass.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// Binary gcd on machine words.
fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Euclid's algorithm until both operands fit in a machine word pair, then
/// the binary algorithm on `u128`.
pub(crate) fn gcd_nat(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = if a >= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        if b.is_zero() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.to_u128(), b.to_u128()) {
            return BigUint::from(gcd_u128(x, y));
        }
        let r = &a % &b;
        a = b;
        b = r;
    }
}

pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from_biguint(Sign::Plus, gcd_nat(a.magnitude(), b.magnitude()))
}

/// `a * b` for reduced operands: cancel across before multiplying.
pub(crate) fn mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if a.is_integer() && b.is_integer() {
        return Rational::from_integer(a.numer() * b.numer());
    }
    let g1 = gcd(a.numer(), b.denom());
    let g2 = gcd(b.numer(), a.denom());
    let (n1, d2) = if g1.is_one() { (a.numer().clone(), b.denom().clone()) } else { (a.numer() / &g1, b.denom() / &g1) };
    let (n2, d1) = if g2.is_one() { (b.numer().clone(), a.denom().clone()) } else { (b.numer() / &g2, a.denom() / &g2) };
    Rational::new_raw(n1 * n2, d1 * d2)
}

/// `a + sign * b` for reduced operands (Henrici's method).
fn add_signed(a: &Rational, b: &Rational, negate: bool) -> Rational {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b.clone() } else { b.clone() };
    }
    let bn = if negate { -b.numer() } else { b.numer().clone() };
    if a.is_integer() && b.is_integer() {
        return Rational::from_integer(a.numer() + bn);
    }
    let (ad, bd) = (a.denom(), b.denom());
    let g = gcd(ad, bd);
    if g.is_one() {
        // coprime denominators: the sum is already in lowest terms
        return Rational::new_raw(a.numer() * bd + bn * ad, ad * bd);
    }
    let (ad_g, bd_g) = (ad / &g, bd / &g);
    let t = a.numer() * &bd_g + bn * &ad_g;
    if t.is_zero() {
        return Rational::zero();
    }
    let g2 = gcd(&t, &g);
    if g2.is_one() {
        Rational::new_raw(t, ad * bd_g)
    } else {
        Rational::new_raw(t / &g2, (ad / &g2) * bd_g)
    }
}

pub(crate) fn add(a: &Rational, b: &Rational) -> Rational {
    add_signed(a, b, false)
}

pub(crate) fn sub(a: &Rational, b: &Rational) -> Rational {
    add_signed(a, b, true)
}

/// Lowest-terms check used by the tests.
#[cfg(test)]
fn is_reduced(q: &Rational) -> bool {
    use num_integer::Integer;
    q.denom() > &BigInt::zero() && q.numer().gcd(q.denom()).is_one() || (q.numer().is_zero() && q.denom().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&BigInt::from(12), &BigInt::from(-18)), BigInt::from(6));
        assert_eq!(gcd(&BigInt::zero(), &BigInt::from(-5)), BigInt::from(5));
        let big = BigInt::from(3u8).pow(200) * BigInt::from(7);
        let other = BigInt::from(3u8).pow(150) * BigInt::from(11);
        assert_eq!(gcd(&big, &other), BigInt::from(3u8).pow(150));
    }

    proptest! {
        #[test]
        fn gcd_matches_num_integer(a in any::<i128>(), b in any::<i128>(), k in 0u32..4) {
            let scale = BigInt::from(u64::MAX).pow(k);
            let (x, y) = (BigInt::from(a) * &scale, BigInt::from(b) * &scale + 1);
            prop_assert_eq!(gcd(&x, &y), x.gcd(&y));
        }

        #[test]
        fn ops_match_big_rational(a in -1000i128..1000, b in 1i128..500, c in -1000i128..1000, d in 1i128..500) {
            let (x, y) = (q(a, b), q(c, d));
            for (got, want) in [(mul(&x, &y), &x * &y), (add(&x, &y), &x + &y), (sub(&x, &y), &x - &y)] {
                prop_assert!(is_reduced(&got));
                prop_assert_eq!(got, want);
            }
        }
    }
}
