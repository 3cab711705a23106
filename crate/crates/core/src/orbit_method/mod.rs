//! Kirillov-theoretic invariants of a linear functional `f ∈ 𝔫*`.
//!
//! Every operation is generic over [`Scalar`]: exact rationals take exact
//! paths, `f64` functionals use singular-value rank decisions with a relative
//! tolerance of `1e-10`.

mod pfaffian_poly;
mod report;

pub use pfaffian_poly::{default_complement, pfaffian_polynomial, plancherel_constant, PfaffianPolynomial};
pub use report::{orbit_report, OrbitReport};

use num_rational::BigRational;
use thiserror::Error;

use crate::exact_algebra::{Matrix, Ring, Scalar, SkewMatrix};
use crate::lie_core::{IdealFlag, LieError, NilpotentLieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("functional has {found} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid complement basis: {0}")]
    InvalidComplement(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("polarization defect: {0}")]
    PolarizationDefect(String),
}

impl From<LieError> for OrbitError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::DimensionMismatch { expected, found } => OrbitError::DimensionMismatch { expected, found },
            other => OrbitError::Unsupported(other.to_string()),
        }
    }
}

fn check_dim<F>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<(), OrbitError> {
    if f.len() != alg.dim() {
        return Err(OrbitError::DimensionMismatch { expected: alg.dim(), found: f.len() });
    }
    Ok(())
}

/// Magnitude used for floating zero tests of values `f([x, y])`.
fn form_scale<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> f64 {
    let n = alg.dim();
    let fmax = f.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let mut cmax: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cmax = cmax.max(Scalar::to_f64(alg.structure_constant(i, j, k)).abs());
            }
        }
    }
    fmax * cmax
}

/// `f([x, y])`.
pub fn form_value<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F], x: &[F], y: &[F]) -> Result<F, OrbitError> {
    check_dim(alg, f)?;
    let b = alg.bracket(x, y)?;
    Ok(dot(f, &b))
}

pub(crate) fn dot<F: Ring>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

fn to_scalar<F: Scalar>(v: &[BigRational]) -> Vec<F> {
    v.iter().map(F::from_rational).collect()
}

/// `B[i][j] = f([e_i, e_j])`.
pub fn skew_form<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<SkewMatrix<F>, OrbitError> {
    check_dim(alg, f)?;
    let n = alg.dim();
    Ok(SkewMatrix::from_upper(n, |i, j| {
        (0..n).fold(F::zero(), |acc, k| {
            let c = alg.structure_constant(i, j, k);
            if c.is_zero() {
                acc
            } else {
                acc.plus(&f[k].times(&F::from_rational(c)))
            }
        })
    }))
}

/// Gram matrix of `b_f` on the given vectors.
fn restricted_form<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F], basis: &[Vec<F>]) -> Matrix<F> {
    let b = skew_form(alg, f).expect("dimension checked").into_matrix();
    let v = Matrix::from_rows(basis.to_vec(), alg.dim());
    v.mul(&b).mul(&v.transpose())
}

/// `𝔫_f = {x : f([x, 𝔫]) = 0}`.
pub fn radical<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<Vec<Vec<F>>, OrbitError> {
    Ok(F::nullspace_scaled(skew_form(alg, f)?.matrix(), form_scale(alg, f)))
}

/// Rank of `b_f`, the dimension of the coadjoint orbit through `f`.
pub fn orbit_dimension<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<usize, OrbitError> {
    Ok(F::rank_scaled(skew_form(alg, f)?.matrix(), form_scale(alg, f)))
}

/// Whether the tangent space `{(ad* x) f}` equals `𝔷^⊥`.
pub fn is_flat_orbit<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<bool, OrbitError> {
    let b = skew_form(alg, f)?.into_matrix();
    let n = alg.dim();
    let scale = form_scale(alg, f);
    // (ad* e_i) f = -f([e_i, ·]) is minus row i of b_f.
    let tangent: Vec<Vec<F>> = (0..n).map(|i| b.row(i).iter().map(Ring::negated).collect()).collect();
    let center: Vec<Vec<F>> = alg.center().iter().map(|z| to_scalar(z)).collect();
    let annihilates = tangent.iter().all(|t| center.iter().all(|z| dot(t, z).negligible(scale)));
    let rank = F::rank_scaled(&Matrix::from_rows(tangent.clone(), n), scale);
    Ok(annihilates && rank == n - center.len())
}

/// Whether `b_f` is nondegenerate on the default complement of the center.
/// Vacuously true for abelian algebras (see [`OrbitReport::degenerate`]).
pub fn is_square_integrable<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<bool, OrbitError> {
    check_dim(alg, f)?;
    let complement: Vec<Vec<F>> = default_complement(alg).iter().map(|v| to_scalar(v)).collect();
    if complement.is_empty() {
        return Ok(true);
    }
    let bv = restricted_form(alg, f, &complement);
    Ok(F::rank_scaled(&bv, form_scale(alg, f)) == complement.len())
}

/// Outcome of the four polarization conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationCheck {
    pub subalgebra: bool,
    pub contains_radical: bool,
    pub isotropic: bool,
    pub dimension: bool,
    pub dim_p: usize,
    pub dim_radical: usize,
}

impl PolarizationCheck {
    pub fn is_valid(&self) -> bool {
        self.subalgebra && self.contains_radical && self.isotropic && self.dimension
    }

    pub fn defects(&self) -> Vec<&'static str> {
        let mut d = Vec::new();
        if !self.subalgebra {
            d.push("not closed under bracket");
        }
        if !self.contains_radical {
            d.push("does not contain the radical");
        }
        if !self.isotropic {
            d.push("f([p,p]) != 0");
        }
        if !self.dimension {
            d.push("dim(p/n_f) != dim(n/n_f)/2");
        }
        d
    }
}

/// Checks subalgebra closure, `𝔫_f ⊆ 𝔭`, `f([𝔭,𝔭]) = 0` and
/// `dim(𝔭/𝔫_f) = ½ dim(𝔫/𝔫_f)`.
pub fn is_polarization<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F], p: &[Vec<F>]) -> Result<PolarizationCheck, OrbitError> {
    check_dim(alg, f)?;
    let n = alg.dim();
    for v in p {
        check_dim(alg, v)?;
    }
    let scale = form_scale(alg, f);
    let span = F::span_basis(p, n);
    let rad = radical(alg, f)?;
    let mut with_rad = span.clone();
    with_rad.extend(rad.iter().cloned());
    let contains_radical = F::span_basis(&with_rad, n).len() == span.len();
    let mut isotropic = true;
    for a in &span {
        for b in &span {
            if !form_value(alg, f, a, b)?.negligible(scale) {
                isotropic = false;
            }
        }
    }
    let dimension = 2 * span.len() == n + rad.len() && span.len() >= rad.len();
    Ok(PolarizationCheck {
        subalgebra: alg.is_subalgebra(&span),
        contains_radical,
        isotropic,
        dimension,
        dim_p: span.len(),
        dim_radical: rad.len(),
    })
}

/// Vergne polarization `𝔭 = Σ_i rad(b_f|𝔫_i)` over an ideal flag.
pub fn vergne_polarization<F: Scalar>(
    alg: &NilpotentLieAlgebra,
    f: &[F],
    flag: &IdealFlag,
) -> Result<Vec<Vec<F>>, OrbitError> {
    check_dim(alg, f)?;
    let n = alg.dim();
    if flag.len() != n + 1 {
        return Err(OrbitError::PolarizationDefect(format!("flag has {} members, expected {}", flag.len(), n + 1)));
    }
    let mut gens: Vec<Vec<F>> = Vec::new();
    for member in flag.chain.iter().skip(1) {
        let basis: Vec<Vec<F>> = member.iter().map(|v| to_scalar(v)).collect();
        let form = restricted_form(alg, f, &basis);
        for coeffs in F::nullspace_scaled(&form, form_scale(alg, f)) {
            let mut v = vec![F::zero(); n];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = vi.plus(&c.times(bi));
                }
            }
            gens.push(v);
        }
    }
    let p = F::span_basis(&gens, n);
    let check = is_polarization(alg, f, &p)?;
    if !check.is_valid() {
        return Err(OrbitError::PolarizationDefect(check.defects().join("; ")));
    }
    Ok(p)
}

/// Whether some functional has a square-integrable class (`P ≢ 0`).
pub fn has_square_integrable_reps(alg: &NilpotentLieAlgebra) -> bool {
    !pfaffian_polynomial(alg, None).expect("default complement is valid").poly.is_zero()
}

/// `|P(λ)|` for `λ` in center coordinates, default volume normalization.
pub fn formal_degree<F: Scalar>(alg: &NilpotentLieAlgebra, lambda: &[F]) -> Result<F, OrbitError> {
    pfaffian_polynomial(alg, None)?.formal_degree(lambda)
}

/// `c·|P(λ)|` with `c = m!·2^m`.
pub fn plancherel_density<F: Scalar>(alg: &NilpotentLieAlgebra, lambda: &[F]) -> Result<F, OrbitError> {
    pfaffian_polynomial(alg, None)?.plancherel_density(lambda)
}

/// Restriction `f|_𝔷` in coordinates of the center basis.
pub fn central_restriction<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<Vec<F>, OrbitError> {
    check_dim(alg, f)?;
    Ok(alg.center().iter().map(|z| dot(f, &to_scalar::<F>(z))).collect())
}

#[cfg(test)]
mod tests;
