//! Weierstrass form of a square regular pencil.
//!
//! With `C = B - alpha A` invertible and `K = C^{-1} A`, the pencil is
//! equivalent to `(K, I + alpha K)`. On a Jordan block `J` of `K`:
//! * eigenvalue `0`: with `E = (I + alpha J)^{-1}` the block becomes
//!   `(E J, I)` and `E J` is nilpotent, giving an infinite block;
//! * eigenvalue `kappa != 0`: multiplying by `J^{-1}` gives
//!   `(I, J^{-1} + alpha I)`, a finite block of eigenvalue `1/kappa + alpha`.

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Scalar};
use crate::matrix::{build_jordan, ExactMatrix};

use super::{jordan_form, PencilBlock};

pub(super) struct RegularPart<S: Scalar> {
    pub blocks: Vec<PencilBlock>,
    pub r: ExactMatrix<S>,
    pub s: ExactMatrix<S>,
}

pub(super) fn decompose_regular<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<RegularPart<S>> {
    let n = a.rows();
    if n == 0 {
        return Ok(RegularPart { blocks: Vec::new(), r: ExactMatrix::zeros(0, 0), s: ExactMatrix::zeros(0, 0) });
    }
    let (alpha, c_inv) = (0..=n as i64 + 1)
        .flat_map(|k| [k, -k])
        .map(GaussianRational::from_int)
        .find_map(|al| {
            let c = b.sub(&a.scale(&S::from_gaussian(&al)));
            c.inverse().ok().map(|inv| (al, inv))
        })
        .ok_or_else(|| Error::Internal("remainder pencil is singular".into()))?;
    let alpha_s = S::from_gaussian(&alpha);
    let k = c_inv.mul(a);
    let jf = jordan_form(&k)?;
    let p_inv = jf.p.inverse()?;

    let mut blocks = Vec::new();
    let mut r_blocks = Vec::new();
    let mut s_blocks = Vec::new();
    for (kappa, size) in &jf.blocks {
        let j = build_jordan(*size, &S::from_gaussian(kappa))?;
        let id = ExactMatrix::identity(*size);
        if Scalar::is_zero(kappa) {
            let e = id.add(&j.scale(&alpha_s)).inverse()?;
            let x = e.mul(&j);
            let q = jordan_form(&x)?.p;
            r_blocks.push(q.inverse()?.mul(&e));
            s_blocks.push(q);
            blocks.push(PencilBlock::infinite(*size));
        } else {
            let j_inv = j.inverse()?;
            let x = j_inv.add(&id.scale(&alpha_s));
            let q = jordan_form(&x)?.p;
            r_blocks.push(q.inverse()?.mul(&j_inv));
            s_blocks.push(q);
            let lambda = kappa.inv().unwrap() + &alpha;
            blocks.push(PencilBlock::finite(lambda, *size));
        }
    }
    let r = ExactMatrix::direct_sum_all(&r_blocks).mul(&p_inv).mul(&c_inv);
    let s = jf.p.mul(&ExactMatrix::direct_sum_all(&s_blocks));
    Ok(RegularPart { blocks, r, s })
}
