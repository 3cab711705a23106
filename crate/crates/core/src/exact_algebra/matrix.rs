use std::collections::HashMap;

use nalgebra::DMatrix;

use super::ring::{Field, Ring, FLOAT_RANK_TOLERANCE};
use super::AlgebraError;

/// Dense row-major matrix over a ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors; `cols` fixes the width when `rows` is empty.
    /// Panics if a row has the wrong length.
    pub fn from_rows(rows: Vec<Vec<R>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<R>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(R::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| acc.plus(&self.get(i, k).times(rhs.get(k, j))))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub(crate) fn into_nonzero_rows(self) -> Vec<Vec<R>> {
        self.to_rows().into_iter().filter(|r| !r.iter().all(Ring::is_zero)).collect()
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form with exact zero tests; returns pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).minus(&factor.times(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn exact_rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis from the RREF: one vector per free column.
    pub fn exact_nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).negated();
                }
                v
            })
            .collect()
    }

    /// Inverse by Gauss-Jordan; `None` when singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

impl Matrix<f64> {
    fn padded_svd(&self) -> (Vec<f64>, DMatrix<f64>) {
        let n = self.cols;
        let rows = self.rows.max(n);
        let dm = DMatrix::from_fn(rows, n, |i, j| if i < self.rows { *self.get(i, j) } else { 0.0 });
        let svd = dm.svd(false, true);
        (svd.singular_values.iter().copied().collect(), svd.v_t.expect("requested V^T"))
    }

    fn singular_cutoff(sigma: &[f64], scale: f64) -> f64 {
        let max = sigma.iter().copied().fold(scale, f64::max);
        FLOAT_RANK_TOLERANCE * max
    }

    pub fn float_rank(&self) -> usize {
        self.float_rank_scaled(0.0)
    }

    pub fn float_nullspace(&self) -> Vec<Vec<f64>> {
        self.float_nullspace_scaled(0.0)
    }

    /// Rank with singular values below `1e-10 * max(σ_max, scale)` treated as zero.
    pub fn float_rank_scaled(&self, scale: f64) -> usize {
        if self.cols == 0 || self.rows == 0 {
            return 0;
        }
        let (sigma, _) = self.padded_svd();
        let cut = Self::singular_cutoff(&sigma, scale);
        sigma.iter().filter(|&&s| s > cut && s > 0.0).count()
    }

    /// Orthonormal kernel basis from right singular vectors below the cut-off.
    pub fn float_nullspace_scaled(&self, scale: f64) -> Vec<Vec<f64>> {
        if self.cols == 0 {
            return Vec::new();
        }
        let (sigma, vt) = self.padded_svd();
        let cut = Self::singular_cutoff(&sigma, scale);
        (0..self.cols)
            .filter(|&k| !(sigma[k] > cut && sigma[k] > 0.0))
            .map(|k| vt.row(k).iter().copied().collect())
            .collect()
    }

    /// Orthonormal basis of the row space.
    pub fn float_row_space(&self) -> Vec<Vec<f64>> {
        if self.cols == 0 || self.rows == 0 {
            return Vec::new();
        }
        let (sigma, vt) = self.padded_svd();
        let cut = Self::singular_cutoff(&sigma, 0.0);
        (0..self.cols)
            .filter(|&k| sigma[k] > cut && sigma[k] > 0.0)
            .map(|k| vt.row(k).iter().copied().collect())
            .collect()
    }
}

/// Square matrix with `M[i][j] = -M[j][i]` and zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<R>(Matrix<R>);

impl<R: Ring> SkewMatrix<R> {
    pub fn new(m: Matrix<R>) -> Result<Self, AlgebraError> {
        if m.rows != m.cols {
            return Err(AlgebraError::NotSquare { rows: m.rows, cols: m.cols });
        }
        for i in 0..m.rows {
            for j in i..m.cols {
                if *m.get(i, j) != m.get(j, i).negated() {
                    return Err(AlgebraError::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds from the strict upper triangle `upper(i, j)` for `i < j`.
    pub fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> R) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j);
                m.set(j, i, v.negated());
                m.set(i, j, v);
            }
        }
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        self.0.get(i, j)
    }

    /// Restriction to the sub-basis `idx` (principal sub-matrix).
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self(self.0.select(idx, idx))
    }
}

/// Pfaffian by recursive expansion along the first remaining row.
///
/// Sub-Pfaffians are memoized on the set of remaining indices, so the cost is
/// `O(2^n n)` ring operations instead of `(n-1)!!`.
pub fn pfaffian<R: Ring>(m: &SkewMatrix<R>) -> R {
    let n = m.dim();
    if n % 2 == 1 {
        return R::zero();
    }
    assert!(n <= 64, "pfaffian limited to dimension 64");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    pf_rec(m, full, &mut memo)
}

fn pf_rec<R: Ring>(m: &SkewMatrix<R>, set: u64, memo: &mut HashMap<u64, R>) -> R {
    if set == 0 {
        return R::one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut acc = R::zero();
    let mut sign_positive = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(first, j);
        if !a.is_zero() {
            let term = a.times(&pf_rec(m, rest & !(1u64 << j), memo));
            acc = if sign_positive { acc.plus(&term) } else { acc.minus(&term) };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(set, acc.clone());
    acc
}

/// Determinant by Laplace expansion along rows, memoized on the set of used
/// columns. Works over any commutative ring (no division).
pub fn determinant<R: Ring>(m: &Matrix<R>) -> Result<R, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::NotSquare { rows: m.rows, cols: m.cols });
    }
    assert!(m.rows < 64, "determinant limited to dimension 63");
    let mut memo = HashMap::new();
    Ok(det_rec(m, 0, &mut memo))
}

fn det_rec<R: Ring>(m: &Matrix<R>, used: u64, memo: &mut HashMap<u64, R>) -> R {
    let row = used.count_ones() as usize;
    if row == m.rows {
        return R::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = R::zero();
    let mut position = 0;
    for c in 0..m.cols {
        if used & (1u64 << c) != 0 {
            continue;
        }
        let a = m.get(row, c);
        if !a.is_zero() {
            let term = a.times(&det_rec(m, used | (1u64 << c), memo));
            acc = if position % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
        }
        position += 1;
    }
    memo.insert(used, acc.clone());
    acc
}
