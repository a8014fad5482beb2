//! Exact roots in `Q(i)` of polynomials over `Q(i)` or the radical tower.
//!
//! Candidates are `u * d0 / dn` with `d0 | a0`, `dn | an` in `Z[i]` and `u` a
//! unit; divisors come from the Gaussian prime factorisation, which is read
//! off the rational factorisation of the norm.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{GaussianRational, Rational, Scalar};
use crate::poly::Poly;

/// Gaussian integer `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        Self { re, im }
    }

    fn from_i(re: i64, im: i64) -> Self {
        Self::new(re.into(), im.into())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Exact quotient when `o` divides `self`.
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        let num = self.mul(&o.conj());
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| Self::new(qr, qi))
    }

    /// Euclidean remainder with rounded quotient.
    fn rem(&self, o: &Self) -> Self {
        let n = o.norm();
        let num = self.mul(&o.conj());
        let round = |x: &BigInt| -> BigInt {
            let two = BigInt::from(2);
            (x * &two + &n).div_floor(&(&n * &two))
        };
        let q = Self::new(round(&num.re), round(&num.im));
        let qo = q.mul(o);
        Self::new(&self.re - qo.re, &self.im - qo.im)
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::new(Rational::from_integer(self.re.clone()), Rational::from_integer(self.im.clone()))
    }
}

fn units() -> [GInt; 4] {
    [GInt::from_i(1, 0), GInt::from_i(0, 1), GInt::from_i(-1, 0), GInt::from_i(0, -1)]
}

/// The Gaussian primes lying over a rational prime `p`.
fn gaussian_primes_over(p: &BigInt) -> Vec<GInt> {
    let two = BigInt::from(2);
    if *p == two {
        return vec![GInt::from_i(1, 1)];
    }
    let four = BigInt::from(4);
    if p.mod_floor(&four) == BigInt::from(3) {
        return vec![GInt::new(p.clone(), BigInt::zero())];
    }
    // p = 1 mod 4: x^2 = -1 mod p from a quadratic non-residue, then
    // gcd(p, x + i) is a prime of norm p.
    let e = (p - 1u32) / 4u32;
    let mut c = BigInt::from(2);
    let x = loop {
        let x = c.modpow(&e, p);
        if (&x * &x + 1u32).mod_floor(p).is_zero() {
            break x;
        }
        c += 1u32;
    };
    let pi = GInt::gcd(&GInt::new(p.clone(), BigInt::zero()), &GInt::new(x, BigInt::one()));
    debug_assert_eq!(pi.norm(), *p);
    vec![pi.clone(), pi.conj()]
}

/// All divisors of a nonzero Gaussian integer up to units.
fn divisors(z: &GInt) -> Vec<GInt> {
    let norm = z.norm().to_biguint().expect("positive norm");
    let mut out = vec![GInt::from_i(1, 0)];
    if norm.is_one() {
        return out;
    }
    let factors: BTreeMap<BigUint, usize> = num_prime::nt_funcs::factorize(norm);
    let mut rest = z.clone();
    for p in factors.keys() {
        let p = BigInt::from_biguint(Sign::Plus, p.clone());
        for pi in gaussian_primes_over(&p) {
            let mut e = 0;
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e += 1;
            }
            let mut next = Vec::with_capacity(out.len() * (e + 1));
            for d in &out {
                let mut pw = d.clone();
                next.push(pw.clone());
                for _ in 0..e {
                    pw = pw.mul(&pi);
                    next.push(pw.clone());
                }
            }
            out = next;
        }
    }
    debug_assert!(rest.norm().is_one());
    out
}

/// Scale a `Q(i)` polynomial to primitive Gaussian-integer coefficients.
fn to_gaussian_integers(p: &Poly<GaussianRational>) -> Vec<GInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let ints: Vec<GInt> = p
        .coeffs()
        .iter()
        .map(|c| {
            let re = (&c.re * Rational::from_integer(l.clone())).to_integer();
            let im = (&c.im * Rational::from_integer(l.clone())).to_integer();
            GInt::new(re, im)
        })
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(&c.re).gcd(&c.im);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.iter().map(|c| GInt::new(&c.re / &g, &c.im / &g)).collect()
}

/// Distinct roots in `Q(i)` of a polynomial over `Q(i)`.
fn distinct_gaussian_roots(p: &Poly<GaussianRational>) -> Vec<GaussianRational> {
    let mut sf = p.square_free();
    let mut roots = Vec::new();
    if sf.degree().unwrap_or(0) == 0 {
        return roots;
    }
    if sf.coeffs()[0].is_zero() {
        roots.push(GaussianRational::default());
        sf = sf.divrem(&Poly::linear_root(&GaussianRational::default())).0;
    }
    let Some(deg) = sf.degree().filter(|&d| d > 0) else {
        return roots;
    };
    if deg == 1 {
        roots.push(-sf.coeffs()[0].clone() * &sf.coeffs()[1].inv().unwrap());
        return roots;
    }
    let ints = to_gaussian_integers(&sf);
    let d0 = divisors(&ints[0]);
    let dn = divisors(ints.last().unwrap());
    let mut seen = BTreeSet::new();
    let mut found = 0;
    'outer: for a in &d0 {
        for b in &dn {
            let base = a.to_gaussian() * &b.to_gaussian().inv().unwrap();
            for u in units() {
                let cand = base.clone() * &u.to_gaussian();
                if !seen.insert(cand.clone()) {
                    continue;
                }
                if sf.eval(&cand).is_zero() {
                    roots.push(cand);
                    found += 1;
                    if found == deg {
                        break 'outer;
                    }
                }
            }
        }
    }
    roots
}

fn multiplicity<S: Scalar>(p: &Poly<S>, r: &S) -> usize {
    let lin = Poly::linear_root(r);
    let mut q = p.clone();
    let mut m = 0;
    loop {
        let (quot, rem) = q.divrem(&lin);
        if !rem.is_zero() {
            return m;
        }
        q = quot;
        m += 1;
    }
}

/// Roots in `Q(i)` of `p` with multiplicities, sorted by the total scalar
/// order. The multiplicities sum to `deg p` exactly when `p` splits over
/// `Q(i)`; callers compare against the degree to detect roots outside it.
pub fn gaussian_roots<S: Scalar>(p: &Poly<S>) -> Vec<(GaussianRational, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let projected: Option<Vec<GaussianRational>> = p.coeffs().iter().map(Scalar::to_gaussian).collect();
    let candidates = match projected {
        Some(c) => distinct_gaussian_roots(&Poly::new(c)),
        None => {
            // The product of all Galois images has coefficients in Q(i) and
            // shares every Q(i)-root of p.
            let images = S::galois_images(p.coeffs());
            let norm = images.into_iter().fold(Poly::constant(S::one()), |acc, img| acc.mul(&Poly::new(img)));
            let coeffs: Vec<GaussianRational> = norm
                .coeffs()
                .iter()
                .map(|c| c.to_gaussian().expect("norm polynomial lies over Q(i)"))
                .collect();
            distinct_gaussian_roots(&Poly::new(coeffs))
                .into_iter()
                .filter(|r| p.eval(&S::from_gaussian(r)).is_zero())
                .collect()
        }
    };
    let mut out: Vec<(GaussianRational, usize)> = candidates
        .into_iter()
        .map(|r| {
            let m = multiplicity(p, &S::from_gaussian(&r));
            (r, m)
        })
        .collect();
    out.sort();
    out
}
