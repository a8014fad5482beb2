//! Dense exact matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Scalar, TowerElement};

/// Dense row-major matrix over an exact scalar domain. Empty dimensions
/// (`0 x n`, `n x 0`) are legal everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Matrix over `Q(i)`, the default working domain.
pub type GMatrix = ExactMatrix<GaussianRational>;
/// Matrix over the radical tower.
pub type TMatrix = ExactMatrix<TowerElement>;

/// Sign used by [`build_m`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<S: Scalar>(self) -> S {
        match self {
            Sign::Plus => S::one(),
            Sign::Minus => -S::one(),
        }
    }
}

/// Result of row reduction: the reduced row echelon form and the pivot
/// column of every nonzero row.
pub struct Rref<S: Scalar> {
    pub matrix: ExactMatrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from nested rows. All rows must have equal length; the column
    /// count of an empty list is zero.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and examples: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| S::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ExactMatrix<T> {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Embed a `Q(i)` matrix in this domain.
    pub fn from_gaussian(m: &GMatrix) -> Self {
        m.map(S::from_gaussian)
    }

    /// Project to `Q(i)` if every entry lies there.
    pub fn to_gaussian(&self) -> Option<GMatrix> {
        let data = self.data.iter().map(Scalar::to_gaussian).collect::<Option<Vec<_>>>()?;
        Some(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "difference")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    let cur = std::mem::replace(&mut out.data[idx], S::zero());
                    out.data[idx] = cur + &(a.clone() * b);
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on shape mismatch (internal use with known shapes).
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product shape mismatch")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sum shape mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix difference shape mismatch")
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.clone() * k)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p(A)` for coefficients listed from the constant term upward.
    pub fn evaluate_polynomial(&self, coeffs: &[S]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::identity(n).scale(c));
        }
        Ok(acc)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn direct_sum_all<'a>(blocks: impl IntoIterator<Item = &'a Self>) -> Self {
        blocks.into_iter().fold(Self::zeros(0, 0), |acc, b| acc.direct_sum(b))
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.rows)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], j).clone()))
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.cols)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, perm[j]).clone()))
    }

    /// The permutation matrix `P` with `P * A = A.permute_rows(perm)`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        Self::identity(perm.len()).permute_rows(perm)
    }

    /// Reduced row echelon form; pivots on the first nonzero entry.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - &(f.clone() * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free
    /// column in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let Rref { matrix, pivots } = self.rref();
        let mut out = Vec::new();
        let mut pivot_iter = 0;
        for free in 0..self.cols {
            if pivot_iter < pivots.len() && pivots[pivot_iter] == free {
                pivot_iter += 1;
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -matrix.get(row, free).clone();
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let Rref { matrix, pivots } = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        Ok(matrix.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solve `self * X = rhs`; `None` when inconsistent. Free variables are
    /// set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, matrix.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(S::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() * &inv;
                for j in c..n {
                    let v = m.get(i, j).clone() - &(f.clone() * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        self.require_square()?;
        Ok(*self == self.transpose())
    }

    /// `A^T = -A`; the zero diagonal follows in characteristic 0.
    pub fn is_skew_symmetric(&self) -> Result<bool> {
        self.require_square()?;
        Ok(*self == self.transpose().neg())
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        self.require_square()?;
        Ok(*self == self.conjugate_transpose())
    }

    pub fn is_tridiagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i.abs_diff(j) <= 1 || self.get(i, j).is_zero())
        })
    }
}

/// Incrementally built echelon basis of a subspace of `S^n`, used for
/// independence tests and basis completion.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S: Scalar> {
    dim: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Residual of `v` after elimination; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = std::mem::replace(x, S::zero()) - &(f.clone() * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add `v` if it is independent of the current span; reports whether
    /// it was added.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().unwrap();
        let r = r.into_iter().map(|x| x * &inv).collect();
        self.rows.push((p, r));
        true
    }

    /// Standard basis vectors that complete the span to all of `S^n`, in
    /// increasing index order.
    pub fn completion(&self) -> Vec<Vec<S>> {
        let mut b = self.clone();
        let mut out = Vec::new();
        for i in 0..self.dim {
            let mut e = vec![S::zero(); self.dim];
            e[i] = S::one();
            if b.insert(&e) {
                out.push(e);
            }
        }
        out
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::ShapeMismatch(format!("permutation of length {} for {n}", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `J_n(lambda)`: `lambda` on the diagonal, ones on the superdiagonal.
pub fn build_jordan<S: Scalar>(n: usize, lambda: &S) -> Result<ExactMatrix<S>> {
    if n == 0 {
        return Err(Error::Precondition("Jordan block of size 0".into()));
    }
    Ok(ExactMatrix::from_fn(n, n, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            S::one()
        } else {
            S::zero()
        }
    }))
}

/// `(F_n, G_n) = ([I_n | 0], [0 | I_n])`, both `n x (n+1)`.
pub fn build_fg<S: Scalar>(n: usize) -> (ExactMatrix<S>, ExactMatrix<S>) {
    let f = ExactMatrix::from_fn(n, n + 1, |i, j| if i == j { S::one() } else { S::zero() });
    let g = ExactMatrix::from_fn(n, n + 1, |i, j| if j == i + 1 { S::one() } else { S::zero() });
    (f, g)
}

/// Direct sum of `k` copies of `[[0, 1], [sigma, 0]]`.
pub fn build_m<S: Scalar>(sign: Sign, k: usize) -> ExactMatrix<S> {
    let block = ExactMatrix::from_rows(vec![
        vec![S::zero(), S::one()],
        vec![sign.value(), S::zero()],
    ])
    .expect("2x2");
    ExactMatrix::direct_sum_all(std::iter::repeat_n(&block, k))
}

impl<S: Scalar> fmt::Display for ExactMatrix<S> {
    /// One line per row, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for ExactMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", line.join(", "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}
