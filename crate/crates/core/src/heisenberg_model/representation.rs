use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{quotient_density, HeisenbergElement, HeisenbergError, SchrodingerModel};
use crate::special::{gauss_hermite, hermite_functions_into, GaussHermite};

/// `∫ ψ_j(s + a) ψ_k(s + b) e^{iκs} ds` for `j < rows`, `k < cols`.
pub(crate) fn shifted_overlap(
    gh: &GaussHermite,
    rows: usize,
    cols: usize,
    a: f64,
    b: f64,
    kappa: f64,
) -> DMatrix<Complex64> {
    let mut out = DMatrix::<Complex64>::zeros(rows, cols);
    let mut pa = vec![0.0; rows];
    let mut pb = vec![0.0; cols];
    for (&s, &w) in gh.nodes.iter().zip(&gh.scaled_weights) {
        hermite_functions_into(s + a, &mut pa);
        hermite_functions_into(s + b, &mut pb);
        let phase = Complex64::from_polar(w, kappa * s);
        for k in 0..cols {
            let right = phase * pb[k];
            for j in 0..rows {
                out[(j, k)] += right * pa[j];
            }
        }
    }
    out
}

/// Per-axis block `⟨h_j, π_λ(0, x + iy) h_k⟩`, `j < rows`, `k < cols`.
fn axis_block(model: &SchrodingerModel, w: Complex64, rows: usize, cols: usize) -> DMatrix<Complex64> {
    let a = model.scale();
    let (big_x, big_y) = (a * w.re, a * w.im);
    shifted_overlap(model.quadrature(), rows, cols, -big_y / 2.0, big_y / 2.0, model.sign() * big_x)
}

fn check_element(model: &SchrodingerModel, g: &HeisenbergElement) -> Result<(), HeisenbergError> {
    if g.m() != model.m() {
        return Err(HeisenbergError::DimensionMismatch { expected: model.m(), found: g.m() });
    }
    Ok(())
}

fn check_vector(model: &SchrodingerModel, v: &DVector<Complex64>) -> Result<(), HeisenbergError> {
    if v.len() != model.dim() {
        return Err(HeisenbergError::DimensionMismatch { expected: model.dim(), found: v.len() });
    }
    Ok(())
}

/// Matrix of `π_λ(g)` on the truncated space.
pub fn representation_matrix(
    model: &SchrodingerModel,
    g: &HeisenbergElement,
) -> Result<DMatrix<Complex64>, HeisenbergError> {
    check_element(model, g)?;
    let n = model.truncation();
    let mut out = DMatrix::from_element(1, 1, Complex64::from_polar(1.0, model.lambda() * g.z));
    for &w in &g.w {
        out = out.kronecker(&axis_block(model, w, n, n));
    }
    Ok(out)
}

/// `⟨u, π_λ(g) v⟩`, evaluated only on the levels where `u` or `v` is supported.
pub fn matrix_coefficient(
    model: &SchrodingerModel,
    u: &DVector<Complex64>,
    v: &DVector<Complex64>,
    g: &HeisenbergElement,
) -> Result<Complex64, HeisenbergError> {
    check_element(model, g)?;
    check_vector(model, u)?;
    check_vector(model, v)?;
    let support = Support::new(model, u, v);
    if support.levels == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let blocks: Vec<_> = g.w.iter().map(|&w| axis_block(model, w, support.levels, support.levels)).collect();
    Ok(Complex64::from_polar(1.0, model.lambda() * g.z) * support.contract(&blocks))
}

/// Nonzero entries of a pair of vectors, as multi-indices.
struct Support {
    left: Vec<(Vec<usize>, Complex64)>,
    right: Vec<(Vec<usize>, Complex64)>,
    levels: usize,
}

impl Support {
    fn new(model: &SchrodingerModel, u: &DVector<Complex64>, v: &DVector<Complex64>) -> Self {
        let entries = |x: &DVector<Complex64>| -> Vec<(Vec<usize>, Complex64)> {
            x.iter()
                .enumerate()
                .filter(|(_, c)| c.norm_sqr() > 0.0)
                .map(|(i, &c)| (model.multi_index(i), c))
                .collect()
        };
        let left = entries(u);
        let right = entries(v);
        let levels = left.iter().chain(&right).flat_map(|(k, _)| k.iter().map(|&i| i + 1)).max().unwrap_or(0);
        Self { left, right, levels }
    }

    /// `Σ conj(u_j) v_k Π_c B_c[j_c, k_c]`.
    fn contract(&self, blocks: &[DMatrix<Complex64>]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (j, uj) in &self.left {
            for (k, vk) in &self.right {
                let entry: Complex64 = blocks.iter().enumerate().map(|(c, b)| b[(j[c], k[c])]).product();
                total += uj.conj() * vk * entry;
            }
        }
        total
    }
}

fn spectral_norm(a: &DMatrix<Complex64>) -> f64 {
    a.clone().singular_values().max()
}

/// Positions whose every axis level is below `block`.
fn leading_positions(model: &SchrodingerModel, block: usize) -> Vec<usize> {
    (0..model.dim()).filter(|&i| model.multi_index(i).iter().all(|&k| k < block)).collect()
}

/// `‖P(π(g)*π(g) − I)P‖`, `P` the projection onto levels below `block`. Levels
/// near the cutoff leak out of the truncated space, so `block ≈ N/2` measures
/// the truncation error `ε(N)`.
pub fn unitarity_defect(
    model: &SchrodingerModel,
    g: &HeisenbergElement,
    block: usize,
) -> Result<f64, HeisenbergError> {
    let m = representation_matrix(model, g)?;
    let idx = leading_positions(model, block);
    let gram = m.adjoint() * &m;
    let defect = DMatrix::from_fn(idx.len(), idx.len(), |r, c| {
        gram[(idx[r], idx[c])] - if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
    });
    Ok(spectral_norm(&defect))
}

/// `‖P(π(g₁)π(g₂) − π(g₁g₂))P‖` on the levels below `block`.
pub fn homomorphism_defect(
    model: &SchrodingerModel,
    g1: &HeisenbergElement,
    g2: &HeisenbergElement,
    block: usize,
) -> Result<f64, HeisenbergError> {
    let a = representation_matrix(model, g1)?;
    let b = representation_matrix(model, g2)?;
    let ab = representation_matrix(model, &g1.mul(g2))?;
    let prod = a * b;
    let idx = leading_positions(model, block);
    let defect = DMatrix::from_fn(idx.len(), idx.len(), |r, c| prod[(idx[r], idx[c])] - ab[(idx[r], idx[c])]);
    Ok(spectral_norm(&defect))
}

/// `n ↦ ⟨u, π_λ(n) v⟩` for fixed vectors in one truncated model.
#[derive(Debug, Clone)]
pub struct CoefficientFunction<'a> {
    model: &'a SchrodingerModel,
    u: DVector<Complex64>,
    v: DVector<Complex64>,
}

impl<'a> CoefficientFunction<'a> {
    pub fn new(
        model: &'a SchrodingerModel,
        u: DVector<Complex64>,
        v: DVector<Complex64>,
    ) -> Result<Self, HeisenbergError> {
        check_vector(model, &u)?;
        check_vector(model, &v)?;
        Ok(Self { model, u, v })
    }

    pub fn model(&self) -> &SchrodingerModel {
        self.model
    }

    pub fn eval(&self, g: &HeisenbergElement) -> Result<Complex64, HeisenbergError> {
        matrix_coefficient(self.model, &self.u, &self.v, g)
    }

    /// Value predicted by the orthogonality relations for `⟨self, other⟩`:
    /// `⟨u₁, u₂⟩ conj⟨v₁, v₂⟩ / |λ|^m`.
    pub fn orthogonality_target(&self, other: &Self) -> Complex64 {
        self.u.dotc(&other.u) * other.v.dotc(&self.v) / self.model.formal_degree()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerProductReport {
    pub value: Complex64,
    /// Difference between the two quadrature orders used.
    pub residual: f64,
    pub converged: bool,
    pub nodes_per_axis: usize,
}

/// Relative agreement required between the two quadrature orders.
const CONVERGENCE_TOLERANCE: f64 = 1e-10;

/// Gauss–Hermite nodes per real axis of `w` for coefficients on `levels` levels:
/// the integrand is a polynomial of degree `< 4·levels` times `e^{-|λ||w|²/2}`.
fn w_nodes(levels: usize) -> usize {
    2 * levels + 8
}

/// `Σ_nodes weight · visit(w)` over the tensor Gauss–Hermite grid on `ℂ^m`
/// adapted to decay `e^{-α|w|²}`; the visitor fills values at one node.
fn w_grid<F: FnMut(&[Complex64], f64)>(m: usize, alpha: f64, rule: &GaussHermite, mut visit: F) {
    let scaled = rule.scaled_rule(alpha);
    let q = scaled.len();
    let axes = 2 * m;
    let mut counter = vec![0usize; axes];
    let mut w = vec![Complex64::new(0.0, 0.0); m];
    loop {
        let mut weight = quotient_density(m);
        for c in 0..m {
            let (ix, iy) = (counter[2 * c], counter[2 * c + 1]);
            w[c] = Complex64::new(scaled.nodes[ix], scaled.nodes[iy]);
            weight *= scaled.weights[ix] * scaled.weights[iy];
        }
        visit(&w, weight);
        let mut axis = 0;
        loop {
            if axis == axes {
                return;
            }
            counter[axis] += 1;
            if counter[axis] < q {
                break;
            }
            counter[axis] = 0;
            axis += 1;
        }
    }
}

/// `∫_{H_m/Z} f₁ conj(f₂) dμ` by tensor Gauss–Hermite quadrature on `ℂ^m`,
/// run at two orders to detect non-convergence.
pub fn coefficient_inner_product(
    first: &CoefficientFunction,
    second: &CoefficientFunction,
) -> Result<InnerProductReport, HeisenbergError> {
    let (a, b) = (first.model, second.model);
    if a.lambda() != b.lambda() {
        return Err(HeisenbergError::MixedLambda { left: a.lambda(), right: b.lambda() });
    }
    if a.m() != b.m() {
        return Err(HeisenbergError::DimensionMismatch { expected: a.m(), found: b.m() });
    }
    let s1 = Support::new(a, &first.u, &first.v);
    let s2 = Support::new(b, &second.u, &second.v);
    let levels = s1.levels.max(s2.levels);
    if levels == 0 || s1.levels == 0 || s2.levels == 0 {
        return Ok(InnerProductReport {
            value: Complex64::new(0.0, 0.0),
            residual: 0.0,
            converged: true,
            nodes_per_axis: 0,
        });
    }
    let alpha = a.lambda().abs() / 2.0;
    let integrate = |q: usize| {
        let rule = gauss_hermite(q);
        let mut total = Complex64::new(0.0, 0.0);
        w_grid(a.m(), alpha, &rule, |w, weight| {
            let blocks_a: Vec<_> = w.iter().map(|&wc| axis_block(a, wc, levels, levels)).collect();
            let blocks_b: Vec<_> = if std::ptr::eq(a, b) {
                blocks_a.clone()
            } else {
                w.iter().map(|&wc| axis_block(b, wc, levels, levels)).collect()
            };
            total += weight * s1.contract(&blocks_a) * s2.contract(&blocks_b).conj();
        });
        total
    };
    let q = w_nodes(levels);
    let coarse = integrate(q);
    let fine = integrate(q + 8);
    let residual = (fine - coarse).norm();
    Ok(InnerProductReport {
        value: fine,
        residual,
        converged: residual <= CONVERGENCE_TOLERANCE * fine.norm().max(1.0 / a.formal_degree()),
        nodes_per_axis: q + 8,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityEntry {
    /// Flat levels `(u₁, v₁, u₂, v₂)` of the basis vectors.
    pub indices: [usize; 4],
    pub value: Complex64,
    pub target: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    pub lambda: f64,
    pub truncation: usize,
    pub levels: usize,
    pub nodes_per_axis: usize,
    pub max_error: f64,
    /// Largest change between the two quadrature orders.
    pub quadrature_residual: f64,
    pub converged: bool,
    pub entries: Vec<OrthogonalityEntry>,
}

/// All inner products `⟨f_{e_a,e_b}, f_{e_c,e_d}⟩` for basis vectors whose
/// axis levels are below `levels`, against `δ_ac δ_bd / |λ|^m`.
pub fn coefficient_orthogonality(
    model: &SchrodingerModel,
    levels: usize,
) -> Result<OrthogonalityReport, HeisenbergError> {
    if levels == 0 || levels > model.truncation() {
        return Err(HeisenbergError::InvalidModel(format!(
            "levels must lie in 1..={}, got {levels}",
            model.truncation()
        )));
    }
    let m = model.m();
    let count = levels.pow(m as u32);
    let multi = |mut flat: usize| {
        let mut out = vec![0; m];
        for c in (0..m).rev() {
            out[c] = flat % levels;
            flat /= levels;
        }
        out
    };
    let indices: Vec<Vec<usize>> = (0..count).map(multi).collect();
    let alpha = model.lambda().abs() / 2.0;
    let pairs = count * count;
    let gram_at = |q: usize| {
        let rule = gauss_hermite(q);
        let mut gram = DMatrix::<Complex64>::zeros(pairs, pairs);
        let mut values = vec![Complex64::new(0.0, 0.0); pairs];
        w_grid(m, alpha, &rule, |w, weight| {
            let blocks: Vec<_> = w.iter().map(|&wc| axis_block(model, wc, levels, levels)).collect();
            for (p, value) in values.iter_mut().enumerate() {
                let (j, k) = (&indices[p / count], &indices[p % count]);
                *value = blocks.iter().enumerate().map(|(c, b)| b[(j[c], k[c])]).product();
            }
            for (p, vp) in values.iter().enumerate() {
                let scaled = *vp * weight;
                for (r, vr) in values.iter().enumerate() {
                    gram[(p, r)] += scaled * vr.conj();
                }
            }
        });
        gram
    };
    let q = w_nodes(levels);
    let coarse = gram_at(q);
    let fine = gram_at(q + 8);
    let quadrature_residual = (&fine - &coarse).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let degree = model.formal_degree();
    let flat = |i: usize| model.flat_index(&indices[i]);
    let mut entries = Vec::with_capacity(pairs * pairs);
    let mut max_error: f64 = 0.0;
    for p in 0..pairs {
        for r in 0..pairs {
            let target = if p == r { Complex64::new(1.0 / degree, 0.0) } else { Complex64::new(0.0, 0.0) };
            let value = fine[(p, r)];
            let error = (value - target).norm();
            max_error = max_error.max(error);
            entries.push(OrthogonalityEntry {
                indices: [flat(p / count), flat(p % count), flat(r / count), flat(r % count)],
                value,
                target,
                error,
            });
        }
    }
    Ok(OrthogonalityReport {
        lambda: model.lambda(),
        truncation: model.truncation(),
        levels,
        nodes_per_axis: q + 8,
        max_error,
        quadrature_residual,
        converged: quadrature_residual <= CONVERGENCE_TOLERANCE / degree.min(1.0),
        entries,
    })
}
