use num_bigint::BigInt;
use num_rational::BigRational;

use super::{dot, OrbitError};
use crate::exact_algebra::{pfaffian, Matrix, MultiPoly, Ring, Scalar, SkewMatrix};
use crate::lie_core::NilpotentLieAlgebra;

/// Pfaffian polynomial of `b_f` on a complement `𝔳` of the center.
#[derive(Debug, Clone, PartialEq)]
pub struct PfaffianPolynomial {
    /// `P` on `𝔷*`, variables `z1..zs` = coordinates on the center basis.
    pub poly: MultiPoly,
    /// `Pf(f([v_a, v_b]))` before restriction, variables `f1..fn`.
    pub full: MultiPoly,
    /// Ordered complement basis fixing the volume form.
    pub complement: Vec<Vec<BigRational>>,
    pub center_basis: Vec<Vec<BigRational>>,
    /// `½ dim(𝔫/𝔷)`, `None` when that dimension is odd.
    pub m: Option<usize>,
    /// Set when `𝔫 = 𝔷`, where the empty Pfaffian is 1 by convention.
    pub degenerate_abelian: bool,
}

/// `m!·2^m`.
pub fn plancherel_constant(m: usize) -> BigRational {
    let mut c = BigInt::from(1);
    for k in 1..=m {
        c *= BigInt::from(2 * k);
    }
    BigRational::from_integer(c)
}

/// Parsed basis vectors that are independent modulo the center, in order.
pub fn default_complement(alg: &NilpotentLieAlgebra) -> Vec<Vec<BigRational>> {
    let n = alg.dim();
    let mut acc: Vec<Vec<BigRational>> = alg.center().to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        let mut trial = acc.clone();
        trial.push(e.clone());
        if BigRational::span_basis(&trial, n).len() == trial.len() {
            acc = trial;
            out.push(e);
        }
    }
    out
}

/// Computes `P` from an explicit complement basis, or the default one.
pub fn pfaffian_polynomial(
    alg: &NilpotentLieAlgebra,
    complement: Option<&[Vec<BigRational>]>,
) -> Result<PfaffianPolynomial, OrbitError> {
    let n = alg.dim();
    let center = alg.center().to_vec();
    let s = center.len();
    let complement = match complement {
        None => default_complement(alg),
        Some(c) => {
            if c.len() != n - s {
                return Err(OrbitError::InvalidComplement(format!("expected {} vectors, got {}", n - s, c.len())));
            }
            if let Some(v) = c.iter().find(|v| v.len() != n) {
                return Err(OrbitError::InvalidComplement(format!("vector of length {} in dimension {n}", v.len())));
            }
            c.to_vec()
        }
    };
    let mut cols = center.clone();
    cols.extend(complement.iter().cloned());
    let c_inv = Matrix::from_columns(&cols, n)
        .inverse()
        .ok_or_else(|| OrbitError::InvalidComplement("vectors do not complement the center".into()))?;

    let fvars: Vec<String> = (1..=n).map(|i| format!("f{i}")).collect();
    let zvars: Vec<String> = (1..=s).map(|i| format!("z{i}")).collect();
    let k = complement.len();
    let entries = SkewMatrix::from_upper(k, |a, b| {
        let br = alg.bracket(&complement[a], &complement[b]).expect("dimension checked");
        let mut p = MultiPoly::zero_in(&fvars);
        for (idx, c) in br.iter().enumerate() {
            if !c.is_zero() {
                p = p.plus(&MultiPoly::variable(&fvars, idx).scale(c));
            }
        }
        p
    });
    let mut full = pfaffian(&entries);
    if full.variables().is_empty() {
        full = MultiPoly::constant(&fvars, BigRational::zero()).plus(&full);
    }
    // f vanishing on the complement with f(z_a) = ζ_a: f_i = Σ_a (C^{-1})_{a,i} ζ_a.
    let param = Matrix::from_fn(n, s, |i, a| c_inv.get(a, i).clone());
    let poly = full.restrict(&param, &zvars).map_err(|e| OrbitError::Unsupported(e.to_string()))?;
    Ok(PfaffianPolynomial {
        poly,
        full,
        complement,
        center_basis: center,
        m: if k % 2 == 0 { Some(k / 2) } else { None },
        degenerate_abelian: k == 0,
    })
}

impl PfaffianPolynomial {
    pub fn center_dim(&self) -> usize {
        self.center_basis.len()
    }

    /// `P(λ)` for `λ` in center coordinates.
    pub fn value<F: Scalar>(&self, lambda: &[F]) -> Result<F, OrbitError> {
        if lambda.len() != self.center_dim() {
            return Err(OrbitError::DimensionMismatch { expected: self.center_dim(), found: lambda.len() });
        }
        Ok(F::eval_poly(&self.poly, lambda))
    }

    /// `|P(λ)|`; zero marks a class that is not square integrable.
    pub fn formal_degree<F: Scalar>(&self, lambda: &[F]) -> Result<F, OrbitError> {
        Ok(self.value(lambda)?.abs_value())
    }

    /// `m!·2^m` when square-integrable classes exist.
    pub fn constant(&self) -> Result<BigRational, OrbitError> {
        match self.m {
            Some(m) if !self.poly.is_zero() => Ok(plancherel_constant(m)),
            _ => Err(OrbitError::Unsupported("algebra has no square integrable representations".into())),
        }
    }

    /// `c·|P(λ)|`.
    pub fn plancherel_density<F: Scalar>(&self, lambda: &[F]) -> Result<F, OrbitError> {
        let c = F::from_rational(&self.constant()?);
        Ok(c.times(&self.formal_degree(lambda)?))
    }

    /// `P` at the functional `f` (coordinates on all of `𝔫`), via `f|_𝔷`.
    pub fn value_at_functional<F: Scalar>(&self, f: &[F]) -> Result<F, OrbitError> {
        let zeta: Vec<F> = self.center_basis.iter().map(|z| dot(f, &z.iter().map(F::from_rational).collect::<Vec<_>>())).collect();
        self.value(&zeta)
    }
}
