//! Dense univariate polynomials and characteristic polynomials.

use std::fmt;

use crate::field::Scalar;
use crate::matrix::ExactMatrix;

/// Polynomial with coefficients listed from the constant term upward.
/// The zero polynomial has an empty coefficient list; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`.
    pub fn linear_root(a: &S) -> Self {
        Self::new(vec![-a.clone(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = S::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z).clone() + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], S::zero());
                out[i + j] = cur + &(a.clone() * b);
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().unwrap().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![S::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone() * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut rem[k + j], S::zero());
                rem[k + j] = cur - &(c.clone() * dc);
            }
            q[k] = c;
        }
        (Self::new(q), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &S::from_int(i as i64))
                .collect(),
        )
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &S) -> Self {
        let step = Self::new(vec![a.clone(), S::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(&step).add(&Self::constant(c.clone())))
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})x^{i}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Characteristic polynomial `det(xI - M)` via reduction to upper
/// Hessenberg form followed by the standard recurrence.
pub fn char_poly<S: Scalar>(m: &ExactMatrix<S>) -> Poly<S> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| !h.get(i, k).is_zero()) else {
            continue;
        };
        if p != k + 1 {
            // similarity by the transposition (p, k+1)
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(p, k + 1);
            h = h.permute_rows(&perm).unwrap().permute_cols(&perm).unwrap();
        }
        let inv = h.get(k + 1, k).inv().unwrap();
        for i in k + 2..n {
            if h.get(i, k).is_zero() {
                continue;
            }
            let f = h.get(i, k).clone() * &inv;
            // row_i -= f row_{k+1}
            for j in 0..n {
                let v = h.get(i, j).clone() - &(f.clone() * h.get(k + 1, j));
                h.set(i, j, v);
            }
            // col_{k+1} += f col_i
            for r in 0..n {
                let v = h.get(r, k + 1).clone() + &(f.clone() * h.get(r, i));
                h.set(r, k + 1, v);
            }
        }
    }
    // p_0 = 1, p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Poly<S>> = vec![Poly::constant(S::one())];
    for mi in 0..n {
        let mut next = ps[mi].mul(&Poly::linear_root(h.get(mi, mi)));
        let mut prod = S::one();
        for i in (0..mi).rev() {
            prod = prod * h.get(i + 1, i);
            if prod.is_zero() {
                break;
            }
            let c = h.get(i, mi).clone() * &prod;
            if !c.is_zero() {
                next = next.sub(&ps[i].scale(&c));
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}
