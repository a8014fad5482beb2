//! Extraction of right singular blocks `(F_k, G_k)` from a pencil.
//!
//! The minimal indices are the degrees of a minimal polynomial basis of the
//! right kernel of `B - tA`. Such a basis is read off the block Toeplitz
//! systems `T_d`, degree by degree, keeping only vectors independent of the
//! shifts `t^s v` of lower-degree vectors already found. A kernel vector
//! `v_0 + v_1 t + ... + v_k t^k` gives the chain
//! `B v_0 = 0, B v_{j+1} = A v_j, A v_k = 0`, i.e. the block `(F_k, G_k)` in
//! the bases `(v_0..v_k)` and `(A v_0..A v_{k-1})`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{EchelonBasis, ExactMatrix};

pub(super) struct RightPart<S: Scalar> {
    /// Minimal indices, ascending.
    pub sizes: Vec<usize>,
    pub r: ExactMatrix<S>,
    pub s: ExactMatrix<S>,
    pub rest_a: ExactMatrix<S>,
    pub rest_b: ExactMatrix<S>,
}

impl<S: Scalar> RightPart<S> {
    pub fn rows_used(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn cols_used(&self) -> usize {
        self.sizes.iter().map(|k| k + 1).sum()
    }
}

/// Rank of `B - tA` over `S(t)`: the maximum over `min(m, n) + 1` sample
/// points, since fewer points than that cannot all be eigenvalues.
pub(super) fn normal_rank<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> usize {
    let bound = a.rows().min(a.cols());
    let mut best = 0;
    for t in 0..=bound as i64 {
        best = best.max(b.sub(&a.scale(&S::from_int(t))).rank());
        if best == bound {
            break;
        }
    }
    best
}

/// `T_d`: maps `(v_0, ..., v_d)` to the coefficients of `(B - tA) v(t)`.
fn toeplitz<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>, d: usize) -> ExactMatrix<S> {
    let (m, n) = a.shape();
    let neg_a = a.neg();
    let mut t = ExactMatrix::zeros((d + 2) * m, (d + 1) * n);
    for j in 0..=d {
        t.set_block(j * m, j * n, b);
        t.set_block((j + 1) * m, j * n, &neg_a);
    }
    t
}

fn minimal_basis<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>, count: usize) -> Result<Vec<Vec<Vec<S>>>> {
    let n = a.cols();
    let mut found: Vec<Vec<Vec<S>>> = Vec::new();
    let mut d = 0;
    while found.len() < count {
        if d > n {
            return Err(Error::Internal("minimal indices exceed the column count".into()));
        }
        let dim = (d + 1) * n;
        let mut basis = EchelonBasis::new(dim);
        for v in &found {
            let deg = v.len() - 1;
            for shift in 0..=(d - deg) {
                let mut flat = vec![S::zero(); dim];
                for (j, coeff) in v.iter().enumerate() {
                    flat[(j + shift) * n..(j + shift + 1) * n].clone_from_slice(coeff);
                }
                basis.insert(&flat);
            }
        }
        for k in toeplitz(a, b, d).nullspace() {
            if basis.insert(&k) {
                found.push(k.chunks(n).map(<[S]>::to_vec).collect());
                if found.len() == count {
                    break;
                }
            }
        }
        d += 1;
    }
    found.sort_by_key(Vec::len);
    Ok(found)
}

/// Solve for the row/column corrections that clear the coupling between
/// one `(F_k, G_k)` block and the remainder `(A2, B2)`.
///
/// With `xA`, `xB` the coupling rows and unknown rows `y_1..y_k`:
/// `y_j A2 - y_{j-1} B2 = xB_{j-1} - xA_j` for `j = 2..k`, then
/// `z_j = -xA_j - y_j A2` and `z_{k+1} = -xB_k - y_k B2`.
fn decouple_block<S: Scalar>(
    x_a: &ExactMatrix<S>,
    x_b: &ExactMatrix<S>,
    a2: &ExactMatrix<S>,
    b2: &ExactMatrix<S>,
) -> Result<(ExactMatrix<S>, ExactMatrix<S>)> {
    let k = x_a.rows();
    let (p, q) = a2.shape();
    if k == 0 {
        return Ok((ExactMatrix::zeros(0, p), ExactMatrix::zeros(1, q)));
    }
    // unknown vector u = (y_1, ..., y_k), each of length p
    let mut coef = ExactMatrix::zeros((k - 1) * q, k * p);
    let mut rhs = ExactMatrix::zeros((k - 1) * q, 1);
    for j in 1..k {
        // equation for y_{j+1} A2 - y_j B2 (0-based: rows j, j-1)
        for t in 0..q {
            let row = (j - 1) * q + t;
            for s in 0..p {
                coef.set(row, j * p + s, a2.get(s, t).clone());
                coef.set(row, (j - 1) * p + s, -b2.get(s, t).clone());
            }
            rhs.set(row, 0, x_b.get(j - 1, t).clone() - x_a.get(j, t));
        }
    }
    let u = coef
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("singular block decoupling system is inconsistent".into()))?;
    let y = ExactMatrix::from_fn(k, p, |j, s| u.get(j * p + s, 0).clone());
    let ya2 = y.mul(a2);
    let yb2 = y.mul(b2);
    let mut z = ExactMatrix::zeros(k + 1, q);
    for j in 0..k {
        for t in 0..q {
            z.set(j, t, -x_a.get(j, t).clone() - ya2.get(j, t));
        }
    }
    for t in 0..q {
        z.set(k, t, -x_b.get(k - 1, t).clone() - yb2.get(k - 1, t));
    }
    Ok((y, z))
}

pub(super) fn extract_right<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<RightPart<S>> {
    let (m, n) = a.shape();
    let count = n - normal_rank(a, b);
    if count == 0 {
        return Ok(RightPart {
            sizes: Vec::new(),
            r: ExactMatrix::identity(m),
            s: ExactMatrix::identity(n),
            rest_a: a.clone(),
            rest_b: b.clone(),
        });
    }
    let basis = minimal_basis(a, b, count)?;
    let sizes: Vec<usize> = basis.iter().map(|v| v.len() - 1).collect();

    let mut v_cols: Vec<Vec<S>> = Vec::new();
    let mut w_cols: Vec<Vec<S>> = Vec::new();
    for chain in &basis {
        let k = chain.len() - 1;
        for (j, v) in chain.iter().enumerate() {
            v_cols.push(v.clone());
            if j < k {
                w_cols.push(a.mul_vec(v));
            }
        }
    }
    let complete = |cols: &[Vec<S>], dim: usize| -> Result<Vec<Vec<S>>> {
        let mut eb = EchelonBasis::new(dim);
        for c in cols {
            if !eb.insert(c) {
                return Err(Error::Internal("minimal basis chain vectors are dependent".into()));
            }
        }
        let mut all = cols.to_vec();
        all.extend(eb.completion());
        Ok(all)
    };
    let s0 = ExactMatrix::from_columns(n, &complete(&v_cols, n)?);
    let q0 = ExactMatrix::from_columns(m, &complete(&w_cols, m)?);
    let r0 = q0.inverse()?;
    let a1 = r0.mul(a).mul(&s0);
    let b1 = r0.mul(b).mul(&s0);
    let (h, c) = (w_cols.len(), v_cols.len());
    let (p, q) = (m - h, n - c);
    let a2 = a1.submatrix(h, c, p, q);
    let b2 = b1.submatrix(h, c, p, q);
    if !a1.submatrix(h, 0, p, c).is_zero() || !b1.submatrix(h, 0, p, c).is_zero() {
        return Err(Error::Internal("singular chains are not invariant".into()));
    }

    let mut y_all = ExactMatrix::zeros(h, p);
    let mut z_all = ExactMatrix::zeros(c, q);
    let (mut ro, mut co) = (0, 0);
    for &k in &sizes {
        let x_a = a1.submatrix(ro, c, k, q);
        let x_b = b1.submatrix(ro, c, k, q);
        let (y, z) = decouple_block(&x_a, &x_b, &a2, &b2)?;
        y_all.set_block(ro, 0, &y);
        z_all.set_block(co, 0, &z);
        ro += k;
        co += k + 1;
    }
    let mut left = ExactMatrix::identity(m);
    left.set_block(0, h, &y_all);
    let mut right = ExactMatrix::identity(n);
    right.set_block(0, c, &z_all);
    Ok(RightPart { sizes, r: left.mul(&r0), s: s0.mul(&right), rest_a: a2, rest_b: b2 })
}

