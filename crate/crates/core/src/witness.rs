//! Upgrading an equivalence of (skew-)symmetric pairs to a congruence.
//!
//! If `R^T A S = A'` and `R^T B S = B'` with every matrix symmetric or
//! skew-symmetric, then `M = S R^{-1}` satisfies `A M = M^T A` and
//! `B M = M^T B`. Any polynomial square root `f(M)` of `M` inherits those
//! identities, and `N = f(M) R` is a congruence:
//! `N^T A N = R^T A f(M)^2 R = R^T A S = A'`.
//!
//! The polynomial `f` is assembled eigenvalue by eigenvalue from truncated
//! power series, glued together with the Chinese remainder theorem.

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Scalar};
use crate::matrix::ExactMatrix;
use crate::pencil::{jordan_form, kronecker_decompose};
use crate::poly::Poly;

/// A polynomial modulo `x^k`, `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// Series with the given coefficients `c_0, ..., c_{k-1}`.
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a truncated series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// Truncation of a polynomial to `k` terms.
    pub fn from_poly(p: &Poly<S>, k: usize) -> Result<Self> {
        let mut c: Vec<S> = p.coeffs().iter().take(k).cloned().collect();
        c.resize(k, S::zero());
        Self::new(c)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly<S> {
        Poly::new(self.coeffs.clone())
    }

    /// Product modulo `x^k` with `k` the shorter length.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.len().min(other.len());
        let mut out = vec![S::zero(); k];
        for (i, a) in self.coeffs.iter().take(k).enumerate() {
            for (j, b) in other.coeffs.iter().take(k - i).enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inv()
            .ok_or_else(|| Error::Precondition("series with zero constant term is not invertible".into()))?;
        let k = self.len();
        let mut out = vec![S::zero(); k];
        out[0] = c0.clone();
        for m in 1..k {
            let mut acc = S::zero();
            for j in 1..=m {
                acc = acc + &(self.coeffs[j].clone() * &out[m - j]);
            }
            out[m] = -(acc * &c0);
        }
        Ok(Self { coeffs: out })
    }
}

/// A square root in the field, via `Q(i)`; the lexicographically larger root.
fn field_sqrt<S: Scalar>(x: &S) -> Result<S> {
    let g = x
        .to_gaussian()
        .ok_or_else(|| Error::RequiresRadicalExtension(format!("square root of {x} outside Q(i)")))?;
    g.sqrt_in_field().map(|r| S::from_gaussian(&r)).ok_or(Error::SqrtNotInField(g))
}

/// `psi` with `psi(x)^2 = lambda + x (mod x^k)`; the constant term is the
/// field square root of `lambda`.
pub fn series_sqrt<S: Scalar>(lambda: &S, k: usize) -> Result<TruncatedSeries<S>> {
    if lambda.is_zero() {
        return Err(Error::Precondition("series_sqrt needs a nonzero constant".into()));
    }
    if k == 0 {
        return Err(Error::Precondition("series_sqrt needs k >= 1".into()));
    }
    let c0 = field_sqrt(lambda)?;
    let half_inv = (c0.clone() + &c0).inv().expect("2 sqrt(lambda) is nonzero");
    let mut c = vec![c0];
    for m in 1..k {
        // 2 c0 c_m + sum_{0<j<m} c_j c_{m-j} = [m == 1]
        let mut rhs = if m == 1 { S::one() } else { S::zero() };
        for j in 1..m {
            rhs = rhs - &(c[j].clone() * &c[m - j]);
        }
        c.push(rhs * &half_inv);
    }
    TruncatedSeries::new(c)
}

/// `tau` with `phi(lambda + x) tau(x) = psi(x) (mod x^k)`.
pub fn series_solve_tau<S: Scalar>(
    lambda: &S,
    phi: &Poly<S>,
    psi: &TruncatedSeries<S>,
    k: usize,
) -> Result<TruncatedSeries<S>> {
    if k == 0 || psi.len() < k {
        return Err(Error::Precondition("psi is shorter than the requested precision".into()));
    }
    let shifted = TruncatedSeries::from_poly(&phi.shift(lambda), k)?;
    let psi = TruncatedSeries::new(psi.coeffs()[..k].to_vec())?;
    Ok(shifted.inverse()?.mul(&psi))
}

/// A polynomial `f` with `f(M)^2 = M`, together with `f(M)`.
pub fn matrix_sqrt_poly<S: Scalar>(m: &ExactMatrix<S>) -> Result<(Poly<S>, ExactMatrix<S>)> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    let jf = jordan_form(m)?;
    // distinct eigenvalues with their largest block size
    let mut eig: Vec<(GaussianRational, usize)> = Vec::new();
    for (l, size) in &jf.blocks {
        match eig.iter_mut().find(|(x, _)| x == l) {
            Some(e) => e.1 = e.1.max(*size),
            None => eig.push((l.clone(), *size)),
        }
    }
    let mut f = Poly::zero();
    for (i, (li, ki)) in eig.iter().enumerate() {
        let li_s = S::from_gaussian(li);
        let phi = eig
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::constant(S::one()), |acc, (_, (lj, kj))| {
                let lin = Poly::linear_root(&S::from_gaussian(lj));
                (0..*kj).fold(acc, |a, _| a.mul(&lin))
            });
        let psi = series_sqrt(&li_s, *ki)?;
        let tau = series_solve_tau(&li_s, &phi, &psi, *ki)?;
        f = f.add(&phi.mul(&tau.to_poly().shift(&-li_s)));
    }
    let fm = m.evaluate_polynomial(f.coeffs())?;
    if fm.mul(&fm) != *m {
        return Err(Error::Internal("polynomial square root failed verification".into()));
    }
    Ok((f, fm))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Parity {
    Symmetric,
    Skew,
}

fn parity<S: Scalar>(m: &ExactMatrix<S>, name: &str) -> Result<Parity> {
    if m.is_symmetric()? {
        Ok(Parity::Symmetric)
    } else if m.is_skew_symmetric()? {
        Ok(Parity::Skew)
    } else {
        Err(Error::Precondition(format!("{name} is neither symmetric nor skew-symmetric")))
    }
}

/// Whether `x` and `y` can be treated alike (a zero matrix is both).
fn same_parity<S: Scalar>(x: &ExactMatrix<S>, y: &ExactMatrix<S>, nx: &str, ny: &str) -> Result<()> {
    let (px, py) = (parity(x, nx)?, parity(y, ny)?);
    if px == py || x.is_zero() || y.is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{nx} and {ny} must both be symmetric or both skew-symmetric")))
    }
}

/// `N` with `N^T A N = A'` and `N^T B N = B'`, from an equivalence
/// `R^T A S = A'`, `R^T B S = B'`.
pub fn upgrade_to_congruence<S: Scalar>(
    a: &ExactMatrix<S>,
    b: &ExactMatrix<S>,
    a2: &ExactMatrix<S>,
    b2: &ExactMatrix<S>,
    r: &ExactMatrix<S>,
    s: &ExactMatrix<S>,
) -> Result<ExactMatrix<S>> {
    let n = a.rows();
    for (x, name) in [(a, "A"), (b, "B"), (a2, "A'"), (b2, "B'"), (r, "R"), (s, "S")] {
        if x.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!("{name} is {}x{}, expected {n}x{n}", x.rows(), x.cols())));
        }
    }
    same_parity(a, a2, "A", "A'")?;
    same_parity(b, b2, "B", "B'")?;
    let rt = r.transpose();
    if rt.mul(a).mul(s) != *a2 || rt.mul(b).mul(s) != *b2 {
        return Err(Error::Precondition("R^T A S = A' and R^T B S = B' must hold".into()));
    }
    let m = s.mul(&r.inverse()?);
    let (_, fm) = matrix_sqrt_poly(&m)?;
    let nn = fm.mul(r);
    let nt = nn.transpose();
    if nt.mul(a).mul(&nn) != *a2 || nt.mul(b).mul(&nn) != *b2 {
        return Err(Error::Internal("congruence witness failed verification".into()));
    }
    Ok(nn)
}

/// Equivalence witnesses `(R, S)` with `R^T A S = A'`, `R^T B S = B'`,
/// composed from the Kronecker decompositions of both pairs.
pub fn equivalence_witness<S: Scalar>(
    a: &ExactMatrix<S>,
    b: &ExactMatrix<S>,
    a2: &ExactMatrix<S>,
    b2: &ExactMatrix<S>,
) -> Result<(ExactMatrix<S>, ExactMatrix<S>)> {
    let k1 = kronecker_decompose(a, b)?;
    let k2 = kronecker_decompose(a2, b2)?;
    if k1.blocks != k2.blocks {
        let show = |bs: &[crate::pencil::PencilBlock]| bs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        return Err(Error::NotEquivalent(format!("[{}] vs [{}]", show(&k1.blocks), show(&k2.blocks))));
    }
    // R1 A S1 = K = R2 A' S2, so A' = (R2^-1 R1) A (S1 S2^-1)
    let r = k2.r.inverse()?.mul(&k1.r).transpose();
    let s = k1.s.mul(&k2.s.inverse()?);
    Ok((r, s))
}

/// Congruence `N` between two equivalent (skew-)symmetric pairs, from
/// their pencil decompositions.
pub fn congruence_witness<S: Scalar>(
    a: &ExactMatrix<S>,
    b: &ExactMatrix<S>,
    a2: &ExactMatrix<S>,
    b2: &ExactMatrix<S>,
) -> Result<ExactMatrix<S>> {
    let (r, s) = equivalence_witness(a, b, a2, b2)?;
    upgrade_to_congruence(a, b, a2, b2, &r, &s)
}
