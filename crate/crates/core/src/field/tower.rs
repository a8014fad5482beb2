use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fmt_rational, parse_rational, GaussianRational, Rational, Scalar};
use crate::error::{Error, Result};

/// Square-free part of a positive integer: the unique square-free `d` with
/// `m = d * s^2`.
pub fn square_free_part(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mut rest = m;
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out * rest
}

fn prime_factors(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= d {
        if d % p == 0 {
            out.push(p);
            while d % p == 0 {
                d /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// The set of radicals a computation is allowed to use.
///
/// Elements themselves do not point at a context: every [`TowerElement`] is
/// keyed by square-free integers, so two elements built in different
/// contexts still multiply correctly. The context is the caller-visible
/// record of which extension a result lives in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerContext {
    radicals: Vec<u64>,
}

impl TowerContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn radicals(&self) -> &[u64] {
        &self.radicals
    }

    /// Add `sqrt(m)` (reduced to its square-free part). Perfect squares and
    /// radicals already present leave the context unchanged.
    pub fn adjoin(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("cannot adjoin sqrt(0)".into()));
        }
        let d = square_free_part(m);
        let mut out = self.clone();
        if d > 1 && !out.radicals.contains(&d) {
            out.radicals.push(d);
        }
        Ok(out)
    }

    /// Whether every radical used by `x` is a product of declared radicals.
    pub fn contains(&self, x: &TowerElement) -> bool {
        let primes: BTreeSet<u64> = self.radicals.iter().flat_map(|&d| prime_factors(d)).collect();
        x.terms.keys().all(|&d| prime_factors(d).iter().all(|p| primes.contains(p)))
    }

    /// `sqrt(m)` as an element, adjoining as needed.
    pub fn sqrt(&mut self, m: u64) -> Result<TowerElement> {
        *self = self.adjoin(m)?;
        Ok(TowerElement::sqrt_int(m))
    }
}

/// An element `sum_d c_d * sqrt(d)` of `Q(i)(sqrt 2, sqrt 3, sqrt 5, ...)`,
/// with `d` ranging over square-free positive integers (`d = 1` is the
/// `Q(i)` part) and no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TowerElement {
    terms: BTreeMap<u64, GaussianRational>,
}

impl TowerElement {
    pub fn from_gaussian(g: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !Scalar::is_zero(&g) {
            terms.insert(1, g);
        }
        Self { terms }
    }

    /// `sqrt(m)` for a nonnegative integer `m`.
    pub fn sqrt_int(m: u64) -> Self {
        if m == 0 {
            return Self::default();
        }
        let d = square_free_part(m);
        let s = ((m / d) as f64).sqrt().round() as u64;
        debug_assert_eq!(s * s * d, m);
        Self::term(d, GaussianRational::from_int(s as i64))
    }

    pub fn term(d: u64, c: GaussianRational) -> Self {
        assert!(d > 0 && square_free_part(d) == d, "radicand must be square-free");
        let mut terms = BTreeMap::new();
        if !Scalar::is_zero(&c) {
            terms.insert(d, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussianRational)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    fn primes(&self) -> BTreeSet<u64> {
        self.terms.keys().flat_map(|&d| prime_factors(d)).collect()
    }

    /// The automorphism `sqrt p -> -sqrt p` (fixing the other primes and `i`).
    pub fn flip_prime(&self, p: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&d, c)| (d, if d % p == 0 { -c.clone() } else { c.clone() }))
            .collect();
        Self { terms }
    }

    fn scale(&self, k: &GaussianRational) -> Self {
        if Scalar::is_zero(k) {
            return Self::default();
        }
        Self { terms: self.terms.iter().map(|(&d, c)| (d, c.clone() * k)).collect() }
    }

    fn add_term(&mut self, d: u64, c: GaussianRational) {
        let entry = self.terms.entry(d).or_default();
        *entry = std::mem::take(entry) + c;
        if Scalar::is_zero(entry) {
            self.terms.remove(&d);
        }
    }

    /// Inverse by repeated multiplication with Galois conjugates: for each
    /// prime `p` in play, `x * flip_p(x)` no longer involves `sqrt p`.
    pub fn invert(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return None;
        }
        let mut x = self.clone();
        let mut acc = Self::one();
        for p in self.primes() {
            let c = x.flip_prime(p);
            x = x * &c;
            acc = acc * &c;
        }
        let g = x.to_gaussian().expect("norm descends to Q(i)");
        Some(acc.scale(&g.recip()?))
    }
}

impl Scalar for TowerElement {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::from_gaussian(GaussianRational::from_int(1))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn inv(&self) -> Option<Self> {
        self.invert()
    }

    fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&d, c)| (d, c.conjugate())).collect() }
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        TowerElement::from_gaussian(g.clone())
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::default()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    fn sqrt_rational(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        // sqrt(a/b) = sqrt(a*b) / b
        let ab = (q.numer() * q.denom()).to_u64()?;
        let root = Self::sqrt_int(ab);
        let inv_b = GaussianRational::real(Rational::new(BigInt::one(), q.denom().clone()));
        Some(root.scale(&inv_b))
    }

    fn galois_images(values: &[Self]) -> Vec<Vec<Self>> {
        let primes: Vec<u64> = values
            .iter()
            .flat_map(|v| v.primes())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut out = Vec::with_capacity(1 << primes.len());
        for mask in 0u32..(1 << primes.len()) {
            let image = values
                .iter()
                .map(|v| {
                    primes
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .fold(v.clone(), |acc, (_, &p)| acc.flip_prime(p))
                })
                .collect();
            out.push(image);
        }
        out
    }
}

impl Add for TowerElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a> Add<&'a TowerElement> for TowerElement {
    type Output = Self;
    fn add(mut self, rhs: &'a Self) -> Self {
        for (&d, c) in &rhs.terms {
            self.add_term(d, c.clone());
        }
        self
    }
}

impl Sub for TowerElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a> Sub<&'a TowerElement> for TowerElement {
    type Output = Self;
    fn sub(mut self, rhs: &'a Self) -> Self {
        for (&d, c) in &rhs.terms {
            self.add_term(d, -c.clone());
        }
        self
    }
}

impl<'a> Mul<&'a TowerElement> for TowerElement {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        let mut out = Self::default();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                // sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2), g = gcd(d1, d2)
                let g = d1.gcd(&d2);
                let d = (d1 / g) * (d2 / g);
                let c = c1.clone() * c2 * &GaussianRational::from_int(g as i64);
                out.add_term(d, c);
            }
        }
        out
    }
}

impl Mul for TowerElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl Neg for TowerElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect() }
    }
}

impl From<GaussianRational> for TowerElement {
    fn from(g: GaussianRational) -> Self {
        Self::from_gaussian(g)
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&d, c) in &self.terms {
            let parts = [(c.re.clone(), ""), (c.im.clone(), "i")];
            for (q, unit) in parts {
                if q.is_zero() {
                    continue;
                }
                let neg = q.is_negative();
                let mag = q.abs();
                if neg {
                    f.write_str("-")?;
                } else if !first {
                    f.write_str("+")?;
                }
                first = false;
                let coeff = if mag.is_one() && (d != 1 || !unit.is_empty()) {
                    String::new()
                } else {
                    fmt_rational(&mag)
                };
                let head = format!("{coeff}{unit}");
                match (d, head.is_empty()) {
                    (1, _) => f.write_str(&head)?,
                    (_, true) => write!(f, "sqrt({d})")?,
                    (_, false) => write!(f, "{head}*sqrt({d})")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TowerElement {
    type Err = Error;

    /// Sums of terms `coeff*sqrt(m1*m2*...)`, `sqrt(m)`, or plain scalars,
    /// e.g. `1/2*sqrt(2)+3i*sqrt(6)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid tower scalar `{s}`"));
        let s = s.trim();
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        // split into signed terms at top-level + and -
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    terms.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        let mut out = Self::default();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_txt, radical) = if let Some(pos) = body.find("sqrt(") {
                let inner = body[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
                let mut m: u64 = 1;
                for factor in inner.split('*') {
                    let f: u64 = factor.parse().map_err(|_| bad())?;
                    m = m.checked_mul(f).ok_or_else(bad)?;
                }
                let head = &body[..pos];
                let head = if head.is_empty() { "1" } else { head.strip_suffix('*').ok_or_else(bad)? };
                (head, Some(m))
            } else {
                (body, None)
            };
            let coeff = parse_coeff(coeff_txt).ok_or_else(bad)?;
            let coeff = if sign < 0 { -coeff } else { coeff };
            let value = match radical {
                Some(m) => Self::sqrt_int(m).scale(&coeff),
                None => Self::from_gaussian(coeff),
            };
            out = out + &value;
        }
        Ok(out)
    }
}

/// A rational optionally suffixed with `i` (or `i` alone).
fn parse_coeff(t: &str) -> Option<GaussianRational> {
    if t.is_empty() {
        return None;
    }
    match t.strip_suffix('i') {
        Some("") => Some(GaussianRational::i()),
        Some(r) => Some(GaussianRational::new(Rational::zero(), parse_rational(r).ok()?)),
        None => Some(GaussianRational::real(parse_rational(t).ok()?)),
    }
}
