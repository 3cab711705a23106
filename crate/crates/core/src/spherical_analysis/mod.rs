//! Positive definite spherical functions of two families of Gelfand pairs:
//! `(ℝⁿ ⋊ SO(n), SO(n))`, whose spherical functions are normalized Bessel
//! functions of `‖ξ‖ ‖x‖`, and `(H_n ⋊ U(n), U(n))`, whose bounded
//! non-abelian spherical functions are Laguerre functions.
//!
//! Bi-`K`-invariant functions are stored as functions on the normal factor
//! (`ℝⁿ` or `H_n`); `k ∈ K` acts there by rotation of `x` or of `w`.

mod checks;
mod kgroup;
mod transform;

#[cfg(test)]
mod tests;

pub use checks::{
    eigenfunction_residual, functional_equation_residual, functional_equation_residual_with, positive_definite_check,
    random_pairs, random_points, EigenReport, FunctionalEquationReport, KIntegrator, Operator, PointFunction,
    PositiveDefiniteReport,
};
pub use kgroup::{haar_orthogonal, haar_orthogonal_sample, haar_unitary, haar_unitary_sample, KElement};
pub use transform::{
    heisenberg_inversion_weight, spherical_invert, spherical_transform, InversionWeights, SpectralSamples,
    TransformGrid,
};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::heisenberg_model::HeisenbergElement;
use crate::special::{laguerre_functions_into, normalized_bessel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SphericalError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point does not belong to the group of this function: {0}")]
    PointMismatch(String),
    #[error("input is not K-invariant: {0}")]
    NotInvariant(String),
    #[error("no inversion weights supplied")]
    MissingWeights,
}

/// A point of `ℝⁿ` or of `H_n`.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupPoint {
    Euclidean(Vec<f64>),
    Heisenberg(HeisenbergElement),
}

impl GroupPoint {
    pub fn origin_euclidean(n: usize) -> Self {
        Self::Euclidean(vec![0.0; n])
    }

    pub fn origin_heisenberg(n: usize) -> Self {
        Self::Heisenberg(HeisenbergElement::identity(n))
    }

    /// `n` for `ℝⁿ` or `H_n`.
    pub fn rank(&self) -> usize {
        match self {
            Self::Euclidean(x) => x.len(),
            Self::Heisenberg(g) => g.m(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SphericalError> {
        match (self, other) {
            (Self::Euclidean(a), Self::Euclidean(b)) if a.len() == b.len() => {
                Ok(Self::Euclidean(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            (Self::Heisenberg(a), Self::Heisenberg(b)) if a.m() == b.m() => Ok(Self::Heisenberg(a.mul(b))),
            _ => Err(SphericalError::PointMismatch("product of points from different groups".into())),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Euclidean(a) => Self::Euclidean(a.iter().map(|x| -x).collect()),
            Self::Heisenberg(g) => Self::Heisenberg(g.inverse()),
        }
    }

    /// `‖x‖²` or `‖w‖²`.
    pub fn radius_sqr(&self) -> f64 {
        match self {
            Self::Euclidean(x) => x.iter().map(|v| v * v).sum(),
            Self::Heisenberg(g) => g.w_norm_sqr(),
        }
    }
}

/// Bounded spherical functions of the two families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SphericalFunction {
    Trivial,
    /// `x ↦ Γ(ν+1) (2/s)^ν J_ν(s)`, `s = ‖ξ‖ ‖x‖`, `ν = (n − 2)/2`.
    Bessel { n: usize, xi_norm: f64 },
    /// `(z, w) ↦ e^{iζz} L_m^{(n−1)}(|ζ|‖w‖²/2) e^{−|ζ|‖w‖²/4} / L_m^{(n−1)}(0)`.
    Laguerre { n: usize, zeta: f64, m: usize },
}

impl SphericalFunction {
    pub fn bessel(n: usize, xi_norm: f64) -> Result<Self, SphericalError> {
        if n < 2 {
            return Err(SphericalError::Unsupported(format!("Bessel family needs n ≥ 2, got {n}")));
        }
        if !(xi_norm > 0.0 && xi_norm.is_finite()) {
            return Err(SphericalError::InvalidParameter(format!("‖ξ‖ must be positive, got {xi_norm}")));
        }
        Ok(Self::Bessel { n, xi_norm })
    }

    pub fn laguerre(n: usize, zeta: f64, m: usize) -> Result<Self, SphericalError> {
        if n == 0 {
            return Err(SphericalError::InvalidParameter("Laguerre family needs n ≥ 1".into()));
        }
        if zeta == 0.0 {
            return Err(SphericalError::InvalidParameter(
                "ζ = 0 gives the one-dimensional characters, not a Laguerre function".into(),
            ));
        }
        if !zeta.is_finite() {
            return Err(SphericalError::InvalidParameter(format!("ζ = {zeta} is not finite")));
        }
        Ok(Self::Laguerre { n, zeta, m })
    }

    pub fn eval(&self, g: &GroupPoint) -> Result<Complex64, SphericalError> {
        match (*self, g) {
            (Self::Trivial, _) => Ok(Complex64::new(1.0, 0.0)),
            (Self::Bessel { n, xi_norm }, GroupPoint::Euclidean(x)) if x.len() == n => {
                let r = g.radius_sqr().sqrt();
                Ok(Complex64::new(bessel_radial(n, xi_norm, r), 0.0))
            }
            (Self::Laguerre { n, zeta, m }, GroupPoint::Heisenberg(h)) if h.m() == n => {
                Ok(laguerre_value(n, zeta, m, h.z, h.w_norm_sqr()))
            }
            _ => Err(SphericalError::PointMismatch(format!("{self:?} at a point of rank {}", g.rank()))),
        }
    }

    /// Value as a function of the radius, for radial members.
    pub(crate) fn radial(&self, r: f64) -> Option<f64> {
        match *self {
            Self::Trivial => Some(1.0),
            Self::Bessel { n, xi_norm } => Some(bessel_radial(n, xi_norm, r)),
            Self::Laguerre { .. } => None,
        }
    }
}

fn bessel_radial(n: usize, xi_norm: f64, r: f64) -> f64 {
    normalized_bessel((n - 2) as u32, xi_norm * r)
}

fn laguerre_value(n: usize, zeta: f64, m: usize, z: f64, w_sqr: f64) -> Complex64 {
    let mut buf = vec![0.0; m + 1];
    laguerre_radial_into(n, zeta, w_sqr, &mut buf);
    Complex64::from_polar(buf[m], zeta * z)
}

/// Radial parts `L_m^{(n−1)}(|ζ|ρ²/2) e^{−|ζ|ρ²/4} / L_m^{(n−1)}(0)` for `m < out.len()`.
pub(crate) fn laguerre_radial_into(n: usize, zeta: f64, rho_sqr: f64, out: &mut [f64]) {
    let alpha = (n - 1) as f64;
    laguerre_functions_into(alpha, zeta.abs() * rho_sqr / 2.0, out);
    let mut norm = 1.0;
    for (m, v) in out.iter_mut().enumerate() {
        if m > 0 {
            norm *= (alpha + m as f64) / m as f64;
        }
        *v /= norm;
    }
}

/// Normalized radial Bessel spherical function at `x ∈ ℝⁿ`.
pub fn bessel_spherical(n: usize, xi_norm: f64, x: &[f64]) -> Result<f64, SphericalError> {
    let phi = SphericalFunction::bessel(n, xi_norm)?;
    if x.len() != n {
        return Err(SphericalError::PointMismatch(format!("expected a point of ℝ^{n}, got length {}", x.len())));
    }
    Ok(phi.eval(&GroupPoint::Euclidean(x.to_vec()))?.re)
}

/// Laguerre spherical function at `(z, w) ∈ H_n`.
pub fn laguerre_spherical(n: usize, zeta: f64, m: usize, g: &HeisenbergElement) -> Result<Complex64, SphericalError> {
    SphericalFunction::laguerre(n, zeta, m)?.eval(&GroupPoint::Heisenberg(g.clone()))
}
