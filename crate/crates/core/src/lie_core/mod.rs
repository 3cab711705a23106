//! Nilpotent Lie algebras given by exact structure constants.
//!
//! `[e_i, e_j] = Σ_k c[i][j][k] e_k`. Construction validates antisymmetry,
//! the Jacobi identity on basis triples and nilpotency, then caches the
//! center and the lower central series.

pub mod builtins;
mod parse;

pub use parse::{parse_algebra, AlgebraDocument, BracketEntry};

use num_rational::BigRational;
use thiserror::Error;

use crate::exact_algebra::{Matrix, Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("malformed algebra document: {0}")]
    Malformed(String),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("antisymmetry violated at ({i},{j},{k})")]
    Antisymmetry { i: usize, j: usize, k: usize },
    #[error("Jacobi identity violated for basis triple ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("not nilpotent: lower central series stalls at dimension {stalled_dimension}")]
    NotNilpotent { stalled_dimension: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Lower central series `𝔫 = C_0 ⊋ C_1 ⊋ … ⊋ C_step = 0`, each term as a
/// row-reduced basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerCentralSeries {
    pub terms: Vec<Vec<Vec<BigRational>>>,
    pub step: usize,
}

/// Full flag of ideals; `chain[i]` is a basis of an `i`-dimensional ideal and
/// `chain[i]` extends `chain[i - 1]` by one vector.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealFlag {
    pub chain: Vec<Vec<Vec<BigRational>>>,
}

impl IdealFlag {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct NilpotentLieAlgebra {
    name: String,
    labels: Vec<String>,
    c: Vec<BigRational>,
    center: Vec<Vec<BigRational>>,
    series: LowerCentralSeries,
}

impl NilpotentLieAlgebra {
    /// Builds from the full tensor `c[(i * n + j) * n + k]`.
    pub fn from_structure(name: &str, labels: Vec<String>, c: Vec<BigRational>) -> Result<Self, LieError> {
        let n = labels.len();
        if c.len() != n * n * n {
            return Err(LieError::DimensionMismatch { expected: n * n * n, found: c.len() });
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if c[(i * n + j) * n + k] != c[(j * n + i) * n + k].negated() {
                        return Err(LieError::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        let mut alg = Self {
            name: name.to_string(),
            labels,
            c,
            center: Vec::new(),
            series: LowerCentralSeries { terms: Vec::new(), step: 0 },
        };
        alg.check_jacobi()?;
        alg.series = alg.compute_series()?;
        alg.center = alg.compute_center();
        Ok(alg)
    }

    /// Builds from brackets given for index pairs; the mirror `(j, i)` is
    /// filled in. A pair listed in both orders must agree up to sign.
    pub fn from_brackets(
        name: &str,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, BigRational)>)],
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let mut explicit: Vec<Option<BigRational>> = vec![None; n * n * n];
        for (i, j, coeffs) in brackets {
            for &idx in [i, j].into_iter() {
                if idx >= n {
                    return Err(LieError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            for (k, v) in coeffs {
                if *k >= n {
                    return Err(LieError::IndexOutOfRange { index: *k, dim: n });
                }
                let slot = &mut explicit[(i * n + j) * n + k];
                if slot.is_some() {
                    return Err(LieError::Malformed(format!("bracket ({i},{j}) coefficient {k} given twice")));
                }
                *slot = Some(v.clone());
            }
        }
        let mut c = vec![<BigRational as Ring>::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let Some(v) = &explicit[(i * n + j) * n + k] else { continue };
                    if i == j && !v.is_zero() {
                        return Err(LieError::Antisymmetry { i, j, k });
                    }
                    if let Some(w) = &explicit[(j * n + i) * n + k] {
                        if *w != v.negated() {
                            return Err(LieError::Antisymmetry { i: i.min(j), j: i.max(j), k });
                        }
                    }
                    c[(i * n + j) * n + k] = v.clone();
                    c[(j * n + i) * n + k] = v.negated();
                }
            }
        }
        Self::from_structure(name, labels, c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    fn check_dim<F>(&self, v: &[F]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    /// `[x, y]` in coordinates.
    pub fn bracket<F: Scalar>(&self, x: &[F], y: &[F]) -> Result<Vec<F>, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked<F: Scalar>(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].times(&y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *o = o.plus(&xy.times(&F::from_rational(c)));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x`: column `j` holds `[x, e_j]`.
    pub fn ad_matrix<F: Scalar>(&self, x: &[F]) -> Result<Matrix<F>, LieError> {
        self.check_dim(x)?;
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.bracket_unchecked(x, &unit::<F>(n, j))).collect();
        Ok(Matrix::from_columns(&cols, n))
    }

    /// `exp(ad x)` as a terminating series (`ad x` is nilpotent).
    pub fn adjoint_exp<F: Scalar>(&self, x: &[F]) -> Result<Matrix<F>, LieError> {
        let ad = self.ad_matrix(x)?;
        let n = self.dim();
        let mut total: Matrix<F> = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..=n {
            term = term.mul(&ad);
            let inv_k = F::from_rational(&BigRational::new(1.into(), (k as i64).into()));
            term = term.map(|v| v.times(&inv_k));
            if term.is_zero() {
                break;
            }
            total = Matrix::from_fn(n, n, |i, j| total.get(i, j).plus(term.get(i, j)));
        }
        Ok(total)
    }

    /// `Ad*(exp x) f = f ∘ Ad(exp x)^{-1} = exp(-ad x)^T f`.
    pub fn coadjoint_action<F: Scalar>(&self, x: &[F], f: &[F]) -> Result<Vec<F>, LieError> {
        self.check_dim(f)?;
        let neg: Vec<F> = x.iter().map(Ring::negated).collect();
        let e = self.adjoint_exp(&neg)?;
        Ok(e.transpose().mul_vec(f))
    }

    pub fn center(&self) -> &[Vec<BigRational>] {
        &self.center
    }

    pub fn lower_central_series(&self) -> &LowerCentralSeries {
        &self.series
    }

    pub fn step(&self) -> usize {
        self.series.step
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    /// `[𝔫, S] ⊆ S`.
    pub fn is_ideal(&self, basis: &[Vec<BigRational>]) -> bool {
        let n = self.dim();
        let span = BigRational::span_basis(basis, n);
        (0..n).all(|i| basis.iter().all(|v| in_span(&span, &self.bracket_unchecked(&unit(n, i), v), n)))
    }

    /// `[S, S] ⊆ S`.
    pub fn is_subalgebra<F: Scalar>(&self, basis: &[Vec<F>]) -> bool {
        let n = self.dim();
        let span = F::span_basis(basis, n);
        basis.iter().all(|a| basis.iter().all(|b| in_span(&span, &self.bracket_unchecked(a, b), n)))
    }

    /// Full flag of ideals refining the lower central series from the bottom.
    pub fn ideal_flag(&self) -> IdealFlag {
        let n = self.dim();
        let mut chain = vec![Vec::new()];
        let mut current: Vec<Vec<BigRational>> = Vec::new();
        for term in self.series.terms.iter().rev().skip(1) {
            let target = term.len();
            let mut candidates: Vec<Vec<BigRational>> =
                (0..n).map(|i| unit(n, i)).filter(|e| in_span(term, e, n)).collect();
            candidates.extend(term.iter().cloned());
            for v in candidates {
                if current.len() == target {
                    break;
                }
                let mut trial = current.clone();
                trial.push(v);
                if BigRational::span_basis(&trial, n).len() == trial.len() {
                    current = trial;
                    chain.push(current.clone());
                }
            }
        }
        IdealFlag { chain }
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit::<BigRational>(n, i), unit(n, j), unit(n, k));
                    let a = self.bracket_unchecked(&self.bracket_unchecked(&ei, &ej), &ek);
                    let b = self.bracket_unchecked(&self.bracket_unchecked(&ej, &ek), &ei);
                    let c = self.bracket_unchecked(&self.bracket_unchecked(&ek, &ei), &ej);
                    if (0..n).any(|t| !a[t].plus(&b[t]).plus(&c[t]).is_zero()) {
                        return Err(LieError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_series(&self) -> Result<LowerCentralSeries, LieError> {
        let n = self.dim();
        let mut terms = vec![(0..n).map(|i| unit::<BigRational>(n, i)).collect::<Vec<_>>()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_empty() {
                break;
            }
            let brackets: Vec<Vec<BigRational>> =
                (0..n).flat_map(|i| last.iter().map(move |v| (i, v))).map(|(i, v)| self.bracket_unchecked(&unit(n, i), v)).collect();
            let next = BigRational::span_basis(&brackets, n);
            if next.len() == last.len() {
                return Err(LieError::NotNilpotent { stalled_dimension: next.len() });
            }
            terms.push(next);
        }
        let step = terms.len() - 1;
        Ok(LowerCentralSeries { terms, step })
    }

    fn compute_center(&self) -> Vec<Vec<BigRational>> {
        let n = self.dim();
        // Row (j, k): Σ_i x_i c[i][j][k] = 0.
        let m = Matrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            self.c[(i * n + j) * n + k].clone()
        });
        m.exact_nullspace()
    }
}

pub(crate) fn unit<F: Ring>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Whether `v` lies in the span of `basis` (any spanning set).
pub(crate) fn in_span<F: Scalar>(basis: &[Vec<F>], v: &[F], n: usize) -> bool {
    let base = F::span_basis(basis, n).len();
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    F::span_basis(&ext, n).len() == base
}
