use std::f64::consts::PI;

use num_complex::Complex64;

use super::{center_density, plancherel_constant};
use crate::special::QuadratureRule;

/// Values `f(z_l, w_i)` on an equispaced `z` grid for a list of points `w_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralSamples {
    pub m: usize,
    pub z: Vec<f64>,
    pub w: Vec<Vec<Complex64>>,
    /// `values[i][l] = f(z[l], w[i])`.
    pub values: Vec<Vec<Complex64>>,
}

impl CentralSamples {
    /// Samples `f` on `points` equispaced values of `z ∈ [z_min, z_max]`.
    pub fn from_fn(
        m: usize,
        z_min: f64,
        z_max: f64,
        points: usize,
        w: Vec<Vec<Complex64>>,
        f: impl Fn(f64, &[Complex64]) -> Complex64,
    ) -> Self {
        let z = QuadratureRule::trapezoid(z_min, z_max, points).nodes;
        let values = w.iter().map(|wi| z.iter().map(|&zl| f(zl, wi)).collect()).collect();
        Self { m, z, w, values }
    }

    fn step(&self) -> f64 {
        (self.z[self.z.len() - 1] - self.z[0]) / (self.z.len() - 1) as f64
    }

    /// Warnings about the sampling window that apply to every `ζ`.
    fn window_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let peak = self.values.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        let tail = self
            .values
            .iter()
            .map(|row| row[0].norm().max(row[row.len() - 1].norm()))
            .fold(0.0, f64::max);
        if peak > 0.0 && tail > 1e-12 * peak {
            out.push(format!(
                "z window clips the integrand: edge value {tail:.3e} exceeds 1e-12 of the peak {peak:.3e}"
            ));
        }
        out
    }

    fn nyquist_warning(&self, zeta: f64) -> Option<String> {
        let h = self.step();
        (zeta.abs() * h > PI).then(|| {
            format!("z grid too coarse for ζ = {zeta}: step {h:.3e} exceeds π/|ζ| = {:.3e}", PI / zeta.abs())
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralComponent {
    pub zeta: f64,
    /// `values[i][l] = f_ζ(z[l], w[i])`.
    pub values: Vec<Vec<Complex64>>,
    pub warnings: Vec<String>,
}

/// `f_ζ(n) = ∫_Z f(nz) e^{iζz} dμ_Z(z)` on the sample grid, by the trapezoid rule.
/// `f_ζ(n z) = e^{-iζz} f_ζ(n)`.
pub fn central_component(samples: &CentralSamples, zeta: f64) -> CentralComponent {
    let mut warnings = samples.window_warnings();
    warnings.extend(samples.nyquist_warning(zeta));
    CentralComponent { zeta, values: component_values(samples, zeta), warnings }
}

fn component_values(samples: &CentralSamples, zeta: f64) -> Vec<Vec<Complex64>> {
    let weights = QuadratureRule::trapezoid(samples.z[0], samples.z[samples.z.len() - 1], samples.z.len()).weights;
    let b = center_density(samples.m);
    samples
        .values
        .iter()
        .map(|row| {
            // ∫ f(z_l + u, w) e^{iζu} du = e^{-iζ z_l} ∫ f(v, w) e^{iζv} dv.
            let transform: Complex64 = row
                .iter()
                .zip(&samples.z)
                .zip(&weights)
                .map(|((v, &z), &wt)| v * Complex64::from_polar(wt, zeta * z))
                .sum::<Complex64>()
                * b;
            samples.z.iter().map(|&z| transform * Complex64::from_polar(1.0, -zeta * z)).collect()
        })
        .collect()
}

/// `f(n) ≈ ∫ f_ζ(n) c dζ` over `zeta_rule`, with `c dζ` dual to Haar on the center.
pub fn central_reconstruct(samples: &CentralSamples, zeta_rule: &QuadratureRule) -> (Vec<Vec<Complex64>>, Vec<String>) {
    let c = plancherel_constant(samples.m);
    let mut warnings = samples.window_warnings();
    let worst = zeta_rule.nodes.iter().fold(0.0f64, |acc, z| acc.max(z.abs()));
    warnings.extend(samples.nyquist_warning(worst));
    let mut out = vec![vec![Complex64::new(0.0, 0.0); samples.z.len()]; samples.w.len()];
    for (&zeta, &weight) in zeta_rule.nodes.iter().zip(&zeta_rule.weights) {
        let part = component_values(samples, zeta);
        for (row, prow) in out.iter_mut().zip(&part) {
            for (v, p) in row.iter_mut().zip(prow) {
                *v += p * (c * weight);
            }
        }
    }
    (out, warnings)
}
