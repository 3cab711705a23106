//! Truncated Schrödinger model of the Heisenberg group `H_m`.
//!
//! Points are `(z, w) ∈ ℝ × ℂ^m` with
//! `(z, w)(z', w') = (z + z' + ½ Im⟨w, w'⟩, w + w')` and `⟨w, w'⟩ = Σ w_i conj(w'_i)`.
//! For `λ ≠ 0` the representation on `L²(ℝ^m)` is
//!
//! ```text
//! π_λ(z, x + iy) h(t) = e^{iλz} e^{iλ(x·t + x·y/2)} h(t + y)
//! ```
//!
//! written in the Hermite basis `h_k(t) = |λ|^{1/4} ψ_k(√|λ| t)`, truncated to
//! `N` levels per axis. Multi-indices are flattened with the first axis most
//! significant, so the matrix of `π_λ` is a Kronecker product of per-axis blocks.
//!
//! Haar measure is `dz/(2πc)` on the center and `(2π)^{-m} dw` on `H_m/Z`,
//! with `c = m! 2^m`. Under this normalization `deg π_λ = |λ|^m`, the
//! Fourier-dual measure on the central parameter is `c dλ`, and the
//! Plancherel measure is `c |λ|^m dλ`.

mod central;
mod fourier;
mod functions;
mod intertwiner;
mod representation;

#[cfg(test)]
mod tests;

pub use central::{central_component, central_reconstruct, CentralComponent, CentralSamples};
pub use fourier::{
    group_fourier, plancherel_invert, plancherel_invert_at, richardson_extrapolate, trace_ladder, FourierGrid,
    FourierResult, LadderValue, LambdaGrid, LambdaSample, PlancherelOptions, PlancherelReport,
};
pub use functions::{Decay, FnGroupFunction, GaussianFunction, GroupFunction, LeftTranslate};
pub use intertwiner::{
    fourier_matrix, polarization_intertwiner_check, second_polarization_matrix, IntertwinerReport,
};
pub use representation::{
    coefficient_inner_product, coefficient_orthogonality, homomorphism_defect, matrix_coefficient,
    representation_matrix, unitarity_defect, CoefficientFunction, InnerProductReport, OrthogonalityEntry,
    OrthogonalityReport,
};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::special::{gauss_hermite, GaussHermite};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeisenbergError {
    #[error("λ = 0 has no Schrödinger model; the one-dimensional classes are characters of ℂ^m")]
    ZeroLambda,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficients live in different central characters (λ = {left} vs λ = {right})")]
    MixedLambda { left: f64, right: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// `c = m! 2^m`, density of the Plancherel measure against `|λ|^m dλ`.
pub fn plancherel_constant(m: usize) -> f64 {
    (1..=m).map(|k| 2.0 * k as f64).product()
}

/// Density of Haar measure on the center against `dz`.
pub fn center_density(m: usize) -> f64 {
    1.0 / (2.0 * std::f64::consts::PI * plancherel_constant(m))
}

/// Density of Haar measure on `H_m/Z` against Lebesgue `dw`.
pub fn quotient_density(m: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powi(-(m as i32))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergElement {
    pub z: f64,
    pub w: Vec<Complex64>,
}

impl HeisenbergElement {
    pub fn new(z: f64, w: Vec<Complex64>) -> Self {
        Self { z, w }
    }

    pub fn identity(m: usize) -> Self {
        Self { z: 0.0, w: vec![Complex64::new(0.0, 0.0); m] }
    }

    pub fn central(z: f64, m: usize) -> Self {
        Self { z, w: vec![Complex64::new(0.0, 0.0); m] }
    }

    pub fn m(&self) -> usize {
        self.w.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m(), other.m(), "elements of different Heisenberg groups");
        let pairing: Complex64 = self.w.iter().zip(&other.w).map(|(a, b)| a * b.conj()).sum();
        Self {
            z: self.z + other.z + 0.5 * pairing.im,
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { z: -self.z, w: self.w.iter().map(|a| -a).collect() }
    }

    pub fn w_norm_sqr(&self) -> f64 {
        self.w.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Deterministic sample with `z` uniform on `[-z_max, z_max]` and each
    /// real coordinate of `w` uniform on `[-w_max, w_max]`.
    pub fn random_batch(m: usize, count: usize, z_max: f64, w_max: f64, seed: u64) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let z = rng.random_range(-z_max..=z_max);
                let w = (0..m)
                    .map(|_| Complex64::new(rng.random_range(-w_max..=w_max), rng.random_range(-w_max..=w_max)))
                    .collect();
                Self { z, w }
            })
            .collect()
    }
}

/// `π_λ` truncated to `N` Hermite levels per axis, with a Gauss–Hermite rule
/// for the overlap integrals defining its matrix entries.
#[derive(Debug, Clone)]
pub struct SchrodingerModel {
    lambda: f64,
    m: usize,
    truncation: usize,
    quadrature: GaussHermite,
}

impl SchrodingerModel {
    pub fn new(lambda: f64, m: usize, truncation: usize) -> Result<Self, HeisenbergError> {
        Self::with_quadrature(lambda, m, truncation, Self::default_quadrature(truncation))
    }

    /// Overlap nodes needed to integrate products of two level-`N` Hermite
    /// functions against moderate oscillation.
    pub fn default_quadrature(truncation: usize) -> usize {
        2 * truncation + 40
    }

    pub fn with_quadrature(lambda: f64, m: usize, truncation: usize, nodes: usize) -> Result<Self, HeisenbergError> {
        if lambda == 0.0 {
            return Err(HeisenbergError::ZeroLambda);
        }
        if !lambda.is_finite() {
            return Err(HeisenbergError::InvalidModel(format!("λ = {lambda} is not finite")));
        }
        if m == 0 {
            return Err(HeisenbergError::InvalidModel("m must be at least 1".into()));
        }
        if truncation == 0 {
            return Err(HeisenbergError::InvalidModel("truncation must be at least 1".into()));
        }
        if truncation.checked_pow(m as u32).is_none_or(|d| d > 1 << 16) {
            return Err(HeisenbergError::InvalidModel(format!("N^m too large for N = {truncation}, m = {m}")));
        }
        if nodes < truncation {
            return Err(HeisenbergError::InvalidModel(format!(
                "{nodes} quadrature nodes cannot resolve {truncation} Hermite levels"
            )));
        }
        Ok(Self { lambda, m, truncation, quadrature: gauss_hermite(nodes) })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn quadrature_nodes(&self) -> usize {
        self.quadrature.len()
    }

    pub(crate) fn quadrature(&self) -> &GaussHermite {
        &self.quadrature
    }

    /// Dimension `N^m` of the truncated space.
    pub fn dim(&self) -> usize {
        self.truncation.pow(self.m as u32)
    }

    /// `√|λ|`, the scale of the Hermite basis.
    pub fn scale(&self) -> f64 {
        self.lambda.abs().sqrt()
    }

    pub fn sign(&self) -> f64 {
        self.lambda.signum()
    }

    /// `|λ|^m`.
    pub fn formal_degree(&self) -> f64 {
        self.lambda.abs().powi(self.m as i32)
    }

    /// The model at `-λ`; its matrices are the complex conjugates of these.
    pub fn conjugate(&self) -> Self {
        Self { lambda: -self.lambda, ..self.clone() }
    }

    /// Multi-index of a flat basis position.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.m];
        for c in (0..self.m).rev() {
            out[c] = flat % self.truncation;
            flat /= self.truncation;
        }
        out
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().fold(0, |acc, &k| acc * self.truncation + k)
    }

    /// Unit vector `h_{k_1} ⊗ … ⊗ h_{k_m}`.
    pub fn basis_vector(&self, multi: &[usize]) -> DVector<Complex64> {
        assert_eq!(multi.len(), self.m);
        assert!(multi.iter().all(|&k| k < self.truncation), "level beyond truncation");
        let mut v = DVector::zeros(self.dim());
        v[self.flat_index(multi)] = Complex64::new(1.0, 0.0);
        v
    }
}
