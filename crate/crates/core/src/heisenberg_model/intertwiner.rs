use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::representation::shifted_overlap;
use super::{representation_matrix, HeisenbergElement, HeisenbergError, SchrodingerModel};
use crate::special::{gauss_hermite, hermite_functions_into};

/// Matrix of the model induced from `𝔷 + 𝔴` (`m = 1`):
/// `π'_λ(z, x + iy) h(t) = e^{iλz} e^{iλ(yt − xy/2)} h(t − x)`, in the same
/// Hermite basis as [`representation_matrix`].
pub fn second_polarization_matrix(
    model: &SchrodingerModel,
    g: &HeisenbergElement,
) -> Result<DMatrix<Complex64>, HeisenbergError> {
    if model.m() != 1 || g.m() != 1 {
        return Err(HeisenbergError::InvalidModel("the polarization check is written for m = 1".into()));
    }
    let a = model.scale();
    let n = model.truncation();
    let (big_x, big_y) = (a * g.w[0].re, a * g.w[0].im);
    let block = shifted_overlap(model.quadrature(), n, n, big_x / 2.0, -big_x / 2.0, model.sign() * big_y);
    Ok(block * Complex64::from_polar(1.0, model.lambda() * g.z))
}

/// Matrix of `(Fh)(s) = √(|λ|/2π) ∫ h(t) e^{-iλst} dt` on the first `N`
/// levels, from a two-dimensional Gauss–Hermite rule with `nodes` per axis.
pub fn fourier_matrix(model: &SchrodingerModel, nodes: usize) -> DMatrix<Complex64> {
    let n = model.truncation();
    let gh = gauss_hermite(nodes);
    let sigma = model.sign();
    let psi: Vec<Vec<f64>> = gh
        .nodes
        .iter()
        .map(|&u| {
            let mut row = vec![0.0; n];
            hermite_functions_into(u, &mut row);
            row
        })
        .collect();
    // inner[u][k] = Σ_v W_v ψ_k(v) e^{-iσuv}
    let mut inner = vec![vec![Complex64::new(0.0, 0.0); n]; gh.len()];
    for (iu, &u) in gh.nodes.iter().enumerate() {
        for (iv, &v) in gh.nodes.iter().enumerate() {
            let phase = Complex64::from_polar(gh.scaled_weights[iv], -sigma * u * v);
            for (slot, &p) in inner[iu].iter_mut().zip(&psi[iv]) {
                *slot += phase * p;
            }
        }
    }
    let scale = (2.0 * std::f64::consts::PI).sqrt().recip();
    DMatrix::from_fn(n, n, |j, k| {
        gh.scaled_weights.iter().enumerate().map(|(iu, &w)| inner[iu][k] * (w * psi[iu][j])).sum::<Complex64>()
            * scale
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwinerReport {
    pub lambda: f64,
    pub truncation: usize,
    pub fourier_nodes: usize,
    pub overlap_nodes: usize,
    pub max_residual: f64,
    /// `‖F π(g) F* − π'(g)‖` per element.
    pub residuals: Vec<f64>,
    /// `‖F F* − I‖`.
    pub fourier_unitarity: f64,
}

/// `max_g ‖F π_𝔲(g) F* − π_𝔴(g)‖` (spectral norm) for `m = 1`.
pub fn polarization_intertwiner_check(
    lambda: f64,
    truncation: usize,
    elements: &[HeisenbergElement],
) -> Result<IntertwinerReport, HeisenbergError> {
    let model = SchrodingerModel::new(lambda, 1, truncation)?;
    let fourier_nodes = 3 * truncation + 60;
    let f = fourier_matrix(&model, fourier_nodes);
    let f_adj = f.adjoint();
    let unit = (&f * &f_adj - DMatrix::<Complex64>::identity(truncation, truncation)).singular_values().max();
    let mut residuals = Vec::with_capacity(elements.len());
    for g in elements {
        let left = &f * representation_matrix(&model, g)? * &f_adj;
        let right = second_polarization_matrix(&model, g)?;
        residuals.push((left - right).singular_values().max());
    }
    Ok(IntertwinerReport {
        lambda,
        truncation,
        fourier_nodes,
        overlap_nodes: model.quadrature_nodes(),
        max_residual: residuals.iter().copied().fold(0.0, f64::max),
        residuals,
        fourier_unitarity: unit,
    })
}
