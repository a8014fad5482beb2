//! Kronecker canonical form of a pencil `(A, B)` under
//! `(A, B) -> (R A S, R B S)`.
//!
//! Block conventions: a finite block of eigenvalue `l` is `(I_n, J_n(l))`,
//! so `B - l A` drops rank; an infinite block is `(J_n(0), I_n)`; a right
//! singular block is `(F_k, G_k)` and a left one `(F_k^T, G_k^T)`.

mod jordan;
mod regular;
mod singular;

use std::cmp::Ordering;
use std::fmt;

pub use jordan::{eigenvalues, jordan_form, JordanForm};

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Rational, Scalar};
use crate::matrix::{build_fg, build_jordan, ExactMatrix};

/// Sort key for finite eigenvalues: modulus squared, then `(re, im)`.
pub(crate) fn finite_key(l: &GaussianRational) -> (Rational, GaussianRational) {
    (l.modulus_squared(), l.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BlockKind {
    RightSingular,
    LeftSingular,
    InfiniteEigen,
    FiniteEigen(GaussianRational),
}

impl BlockKind {
    fn rank(&self) -> u8 {
        match self {
            BlockKind::RightSingular => 0,
            BlockKind::LeftSingular => 1,
            BlockKind::InfiniteEigen => 2,
            BlockKind::FiniteEigen(_) => 3,
        }
    }
}

/// One Kronecker block. `size` is `n` for regular blocks and `k` for the
/// `k x (k+1)` / `(k+1) x k` singular blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PencilBlock {
    pub kind: BlockKind,
    pub size: usize,
}

impl PencilBlock {
    pub fn finite(lambda: GaussianRational, size: usize) -> Self {
        Self { kind: BlockKind::FiniteEigen(lambda), size }
    }

    pub fn infinite(size: usize) -> Self {
        Self { kind: BlockKind::InfiniteEigen, size }
    }

    pub fn right(size: usize) -> Self {
        Self { kind: BlockKind::RightSingular, size }
    }

    pub fn left(size: usize) -> Self {
        Self { kind: BlockKind::LeftSingular, size }
    }

    pub fn eigenvalue(&self) -> Option<&GaussianRational> {
        match &self.kind {
            BlockKind::FiniteEigen(l) => Some(l),
            _ => None,
        }
    }

    /// `(rows, cols)` of the materialized block.
    pub fn shape(&self) -> (usize, usize) {
        match self.kind {
            BlockKind::RightSingular => (self.size, self.size + 1),
            BlockKind::LeftSingular => (self.size + 1, self.size),
            _ => (self.size, self.size),
        }
    }

    pub fn materialize<S: Scalar>(&self) -> (ExactMatrix<S>, ExactMatrix<S>) {
        let n = self.size;
        match &self.kind {
            BlockKind::FiniteEigen(l) => {
                (ExactMatrix::identity(n), build_jordan(n, &S::from_gaussian(l)).unwrap())
            }
            BlockKind::InfiniteEigen => (build_jordan(n, &S::zero()).unwrap(), ExactMatrix::identity(n)),
            BlockKind::RightSingular => build_fg(n),
            BlockKind::LeftSingular => {
                let (f, g) = build_fg(n);
                (f.transpose(), g.transpose())
            }
        }
    }

    fn key(&self) -> (u8, usize, Option<(Rational, GaussianRational)>) {
        (self.kind.rank(), self.size, self.eigenvalue().map(finite_key))
    }
}

impl Ord for PencilBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for PencilBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PencilBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BlockKind::RightSingular => write!(f, "RightSingular size {}", self.size),
            BlockKind::LeftSingular => write!(f, "LeftSingular size {}", self.size),
            BlockKind::InfiniteEigen => write!(f, "InfiniteEigen size {}", self.size),
            BlockKind::FiniteEigen(l) => write!(f, "FiniteEigen({l}) size {}", self.size),
        }
    }
}

/// Block-diagonal concatenation of materialized blocks.
pub fn materialize_blocks<S: Scalar>(blocks: &[PencilBlock]) -> (ExactMatrix<S>, ExactMatrix<S>) {
    let mut a = ExactMatrix::zeros(0, 0);
    let mut b = ExactMatrix::zeros(0, 0);
    for blk in blocks {
        let (x, y) = blk.materialize();
        a = a.direct_sum(&x);
        b = b.direct_sum(&y);
    }
    (a, b)
}

/// Sorted block multiset plus nonsingular witnesses with
/// `R A S = (+) A_blocks` and `R B S = (+) B_blocks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerForm<S: Scalar> {
    pub blocks: Vec<PencilBlock>,
    pub r: ExactMatrix<S>,
    pub s: ExactMatrix<S>,
}

impl<S: Scalar> KroneckerForm<S> {
    pub fn canonical_pair(&self) -> (ExactMatrix<S>, ExactMatrix<S>) {
        materialize_blocks(&self.blocks)
    }

    /// Whether the witnesses certify the form for `(a, b)`.
    pub fn verify(&self, a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> bool {
        let (ca, cb) = self.canonical_pair();
        self.r.is_invertible()
            && self.s.is_invertible()
            && self.r.mul(a).mul(&self.s) == ca
            && self.r.mul(b).mul(&self.s) == cb
    }
}

/// A block list together with the row/column offsets it occupies.
struct Placed {
    block: PencilBlock,
    row: usize,
    col: usize,
}

/// Exact Kronecker decomposition with witnesses.
pub fn kronecker_decompose<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<KroneckerForm<S>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!(
            "pencil members are {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (m, n) = a.shape();

    // right singular part
    let right = singular::extract_right(a, b)?;
    let (h1, c1) = (right.rows_used(), right.cols_used());

    // left singular part: right blocks of the transposed remainder
    let left_t = singular::extract_right(&right.rest_a.transpose(), &right.rest_b.transpose())?;
    let (h2, c2) = (left_t.cols_used(), left_t.rows_used());
    let rest_a = left_t.rest_a.transpose();
    let rest_b = left_t.rest_b.transpose();
    if !rest_a.is_square() {
        return Err(Error::Internal("regular remainder is not square".into()));
    }

    // regular part
    let reg = regular::decompose_regular(&rest_a, &rest_b)?;

    // R = (I_h1 + ((I_h2 + R3) R2)) R1, S = S1 (I_c1 + (S2 (I_c2 + S3)))
    let r2 = left_t.s.transpose();
    let s2 = left_t.r.transpose();
    let inner_r = ExactMatrix::identity(h2).direct_sum(&reg.r).mul(&r2);
    let inner_s = s2.mul(&ExactMatrix::identity(c2).direct_sum(&reg.s));
    let r = ExactMatrix::identity(h1).direct_sum(&inner_r).mul(&right.r);
    let s = right.s.mul(&ExactMatrix::identity(c1).direct_sum(&inner_s));

    let mut placed = Vec::new();
    let (mut row, mut col) = (0, 0);
    let left_blocks = left_t.sizes.iter().map(|&k| PencilBlock::left(k));
    let all = right.sizes.iter().map(|&k| PencilBlock::right(k)).chain(left_blocks).chain(reg.blocks);
    for block in all {
        let (br, bc) = block.shape();
        placed.push(Placed { block, row, col });
        row += br;
        col += bc;
    }
    debug_assert_eq!((row, col), (m, n));
    placed.sort_by(|x, y| x.block.cmp(&y.block));
    let mut row_perm = Vec::with_capacity(m);
    let mut col_perm = Vec::with_capacity(n);
    for p in &placed {
        let (br, bc) = p.block.shape();
        row_perm.extend(p.row..p.row + br);
        col_perm.extend(p.col..p.col + bc);
    }
    let form = KroneckerForm {
        blocks: placed.into_iter().map(|p| p.block).collect(),
        r: r.permute_rows(&row_perm)?,
        s: s.permute_cols(&col_perm)?,
    };
    if !form.verify(a, b) {
        return Err(Error::Internal("Kronecker witnesses failed verification".into()));
    }
    Ok(form)
}

/// Roots of `det(t B - A)` with multiplicities, for a square regular
/// pencil. Uses `K = (alpha B - A)^{-1} B`: every nonzero eigenvalue `s` of
/// `K` gives the root `alpha - 1/s`.
pub fn regular_eigenvalues<S: Scalar>(
    a: &ExactMatrix<S>,
    b: &ExactMatrix<S>,
) -> Result<Vec<(GaussianRational, usize)>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch("pencil members differ in shape".into()));
    }
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let alpha = (0..=n as i64 + 1)
        .flat_map(|k| [k, -k])
        .map(GaussianRational::from_int)
        .find(|al| b.scale(&S::from_gaussian(al)).sub(a).is_invertible())
        .ok_or_else(|| Error::Precondition("pencil is singular".into()))?;
    let c = b.scale(&S::from_gaussian(&alpha)).sub(a);
    let k = c.inverse()?.mul(b);
    let mut out: Vec<(GaussianRational, usize)> = eigenvalues(&k)?
        .into_iter()
        .filter(|(s, _)| !Scalar::is_zero(s))
        .map(|(s, m)| (alpha.clone() - s.inv().unwrap(), m))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests;
