//! Exact Jordan canonical form over `Q(i)` (or any domain whose
//! eigenvalues happen to lie in `Q(i)`).

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Scalar};
use crate::matrix::{EchelonBasis, ExactMatrix, Rref};
use crate::poly::char_poly;
use crate::roots::gaussian_roots;

use super::finite_key;

/// `P^{-1} M P = J_{k1}(l1) + J_{k2}(l2) + ...`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanForm<S: Scalar> {
    /// `(eigenvalue, block size)`, sorted by size, then eigenvalue
    /// (modulus squared first, then lexicographically).
    pub blocks: Vec<(GaussianRational, usize)>,
    pub p: ExactMatrix<S>,
}

impl<S: Scalar> JordanForm<S> {
    /// The block-diagonal matrix `J`.
    pub fn matrix(&self) -> ExactMatrix<S> {
        let blocks: Vec<ExactMatrix<S>> = self
            .blocks
            .iter()
            .map(|(l, k)| crate::matrix::build_jordan(*k, &S::from_gaussian(l)).unwrap())
            .collect();
        ExactMatrix::direct_sum_all(&blocks)
    }
}

/// Eigenvalues with algebraic multiplicities; fails when the
/// characteristic polynomial does not split over `Q(i)`.
pub fn eigenvalues<S: Scalar>(m: &ExactMatrix<S>) -> Result<Vec<(GaussianRational, usize)>> {
    let cp = char_poly(m);
    let roots = gaussian_roots(&cp);
    let total: usize = roots.iter().map(|r| r.1).sum();
    if total != m.rows() {
        return Err(Error::EigenvalueOutsideField(format!(
            "characteristic polynomial {cp:?} does not split over Q(i)"
        )));
    }
    Ok(roots)
}

/// Jordan chains `[N^{j-1} v, ..., N v, v]` built top-down from the kernel
/// filtration of `N = M - lambda I`.
pub fn jordan_form<S: Scalar>(m: &ExactMatrix<S>) -> Result<JordanForm<S>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut chains: Vec<(GaussianRational, Vec<Vec<S>>)> = Vec::new();
    for (lambda, mult) in eigenvalues(m)? {
        let nmat = m.sub(&ExactMatrix::identity(n).scale(&S::from_gaussian(&lambda)));
        // kernels[j] = basis of ker N^j
        let mut kernels: Vec<Vec<Vec<S>>> = vec![Vec::new()];
        // reduced row basis of N^j; its row space is that of (basis of N^{j-1}) N,
        // and keeping it reduced avoids the entry growth of explicit powers
        let mut power = ExactMatrix::identity(n);
        while kernels.last().unwrap().len() < mult {
            let Rref { matrix, pivots } = power.mul(&nmat).rref();
            power = matrix.submatrix(0, 0, pivots.len(), n);
            let k = power.nullspace();
            if k.len() == kernels.last().unwrap().len() {
                return Err(Error::Internal("kernel filtration stalled".into()));
            }
            kernels.push(k);
        }
        let top = kernels.len() - 1;
        // heads of longer chains, to be pushed down one level each step
        let mut carried: Vec<Vec<S>> = Vec::new();
        let mut found: Vec<Vec<Vec<S>>> = Vec::new();
        for level in (1..=top).rev() {
            let mut basis = EchelonBasis::new(n);
            for v in &kernels[level - 1] {
                basis.insert(v);
            }
            for v in &carried {
                basis.insert(v);
            }
            let mut next_carried: Vec<Vec<S>> = carried.iter().map(|v| nmat.mul_vec(v)).collect();
            for v in &kernels[level] {
                if basis.insert(v) {
                    let mut chain = vec![v.clone()];
                    for _ in 1..level {
                        let prev = nmat.mul_vec(chain.last().unwrap());
                        chain.push(prev);
                    }
                    chain.reverse();
                    next_carried.push(nmat.mul_vec(v));
                    found.push(chain);
                }
            }
            carried = next_carried;
        }
        for c in found {
            chains.push((lambda.clone(), c));
        }
    }
    chains.sort_by(|a, b| (a.1.len(), finite_key(&a.0)).cmp(&(b.1.len(), finite_key(&b.0))));
    let cols: Vec<Vec<S>> = chains.iter().flat_map(|c| c.1.iter().cloned()).collect();
    if cols.len() != n {
        return Err(Error::Internal("Jordan chains do not span".into()));
    }
    let p = ExactMatrix::from_columns(n, &cols);
    let blocks = chains.iter().map(|(l, c)| (l.clone(), c.len())).collect();
    Ok(JordanForm { blocks, p })
}
