use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::functions::{GroupFunction, LeftTranslate};
use super::{center_density, plancherel_constant, quotient_density, HeisenbergElement, HeisenbergError, SchrodingerModel};
use crate::special::{gauss_hermite, graded_panels, hermite_functions_into, QuadratureRule};

/// Quadrature orders for `π_λ(f)`: trapezoid points on the `z` window and
/// Gauss–Hermite nodes for `x`, `y` and the overlap variable `s`. The `x`
/// count is a floor; it is raised with `|λ|` to follow the oscillation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FourierGrid {
    pub z_points: usize,
    pub x_nodes: usize,
    pub y_nodes: usize,
    pub s_nodes: usize,
}

impl FourierGrid {
    pub fn for_truncation(n: usize, m: usize) -> Self {
        if m == 1 {
            Self { z_points: 97, x_nodes: 2 * n + 40, y_nodes: n + 24, s_nodes: 2 * n + 40 }
        } else {
            Self { z_points: 65, x_nodes: n + 30, y_nodes: n + 22, s_nodes: n + 30 }
        }
    }

    fn coarser(&self) -> Self {
        let shrink = |q: usize| (3 * q).div_ceil(4);
        Self {
            z_points: shrink(self.z_points) | 1,
            x_nodes: shrink(self.x_nodes),
            y_nodes: shrink(self.y_nodes),
            s_nodes: shrink(self.s_nodes),
        }
    }

    fn validate(&self, truncation: usize) -> Result<(), HeisenbergError> {
        if self.z_points < 3 || self.x_nodes == 0 || self.y_nodes == 0 {
            return Err(HeisenbergError::InvalidGrid(format!("{self:?} is too small")));
        }
        if self.s_nodes < truncation {
            return Err(HeisenbergError::InvalidGrid(format!(
                "{} overlap nodes cannot resolve {truncation} levels",
                self.s_nodes
            )));
        }
        Ok(())
    }
}

enum Target<'a> {
    Matrix(usize),
    Traces(&'a [usize]),
}

/// Contracts axis `axis` of a row-major tensor with `mat` (`n_in × n_out`).
fn contract_axis(data: &[Complex64], dims: &mut [usize], axis: usize, mat: &[Vec<Complex64>]) -> Vec<Complex64> {
    let n_in = dims[axis];
    let n_out = mat[0].len();
    let outer: usize = dims[..axis].iter().product();
    let inner: usize = dims[axis + 1..].iter().product();
    let mut out = vec![Complex64::new(0.0, 0.0); outer * n_out * inner];
    for o in 0..outer {
        for i in 0..n_in {
            let src = &data[(o * n_in + i) * inner..(o * n_in + i + 1) * inner];
            for (t, &e) in mat[i].iter().enumerate() {
                let dst = &mut out[(o * n_out + t) * inner..(o * n_out + t + 1) * inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += e * s;
                }
            }
        }
    }
    dims[axis] = n_out;
    out
}

fn next_multi(counter: &mut [usize], base: usize) -> bool {
    for c in counter.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

/// The x sum carries `e^{iσ√|λ| x s}` with `|s|` up to the turning point
/// `√(2N)` of the highest level; a Gauss–Hermite rule with `Q` nodes resolves
/// frequency `κ` (in units of the rule) once `Q ≳ κ²/6`.
fn x_nodes(grid: &FourierGrid, lambda: f64, levels: usize, w_rate: f64) -> usize {
    let reach = (2.0 * levels as f64).sqrt() + 3.0;
    let kappa = lambda.abs().sqrt() * reach / w_rate.sqrt();
    grid.x_nodes.max((kappa * kappa / 6.0).ceil() as usize).min(1500)
}

/// Core of `π_λ(f) = ∫ f(n) π_λ(n) dn`, factored as
/// `Σ_y Σ_s ψ_j(s - Y/2) ψ_k(s + Y/2) Σ_x e^{iσXs} ∫ f(z, w) e^{iλz} dz`
/// per axis, with `X = √|λ| x`, `Y = √|λ| y`.
fn transform(
    f: &dyn GroupFunction,
    lambda: f64,
    grid: &FourierGrid,
    target: Target,
) -> (Option<DMatrix<Complex64>>, Vec<Complex64>) {
    let m = f.m();
    let a = lambda.abs().sqrt();
    let sigma = lambda.signum();
    let decay = f.decay();
    let z_rule = QuadratureRule::trapezoid(
        decay.z_center - decay.z_half_width,
        decay.z_center + decay.z_half_width,
        grid.z_points,
    );
    let n_max = match target {
        Target::Matrix(n) => n,
        Target::Traces(ladder) => ladder.iter().copied().max().unwrap_or(0),
    };
    let x_rule = gauss_hermite(x_nodes(grid, lambda, n_max, decay.w_rate)).scaled_rule(decay.w_rate);
    let y_rule = gauss_hermite(grid.y_nodes).scaled_rule(decay.w_rate + lambda.abs() / 4.0);
    let s_rule = gauss_hermite(grid.s_nodes);
    let (qx, qy, qs) = (x_rule.len(), y_rule.len(), s_rule.len());

    let z_phase: Vec<Complex64> = z_rule
        .nodes
        .iter()
        .zip(&z_rule.weights)
        .map(|(&z, &wt)| Complex64::from_polar(wt, lambda * z))
        .collect();

    // F_z on the (y, x) tensor grid; y axes outermost.
    let qx_m = qx.pow(m as u32);
    let qy_m = qy.pow(m as u32);
    let mut data = vec![Complex64::new(0.0, 0.0); qy_m * qx_m];
    let mut w = vec![Complex64::new(0.0, 0.0); m];
    let mut ycount = vec![0usize; m];
    let mut yflat = 0;
    loop {
        let mut xcount = vec![0usize; m];
        let mut xflat = 0;
        loop {
            for c in 0..m {
                w[c] = Complex64::new(x_rule.nodes[xcount[c]], y_rule.nodes[ycount[c]]);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (&z, ph) in z_rule.nodes.iter().zip(&z_phase) {
                acc += f.eval(z, &w) * ph;
            }
            data[yflat * qx_m + xflat] = acc;
            xflat += 1;
            if !next_multi(&mut xcount, qx) {
                break;
            }
        }
        yflat += 1;
        if !next_multi(&mut ycount, qy) {
            break;
        }
    }

    // x → s per axis.
    let e_mat: Vec<Vec<Complex64>> = (0..qx)
        .map(|i| {
            let x = x_rule.nodes[i];
            s_rule.nodes.iter().map(|&s| Complex64::from_polar(x_rule.weights[i], sigma * a * x * s)).collect()
        })
        .collect();
    let mut dims = vec![qy_m];
    dims.extend(std::iter::repeat_n(qx, m));
    for c in 0..m {
        data = contract_axis(&data, &mut dims, c + 1, &e_mat);
    }
    let qs_m = qs.pow(m as u32);

    // Hermite values at s ∓ Y/2 for every (y, s) node pair.
    let mut minus = vec![0.0; qy * qs * n_max];
    let mut plus = vec![0.0; qy * qs * n_max];
    for iy in 0..qy {
        let half = a * y_rule.nodes[iy] / 2.0;
        for is in 0..qs {
            let s = s_rule.nodes[is];
            let off = (iy * qs + is) * n_max;
            hermite_functions_into(s - half, &mut minus[off..off + n_max]);
            hermite_functions_into(s + half, &mut plus[off..off + n_max]);
        }
    }
    let norm = center_density(m) * quotient_density(m);

    match target {
        Target::Traces(ladder) => {
            // Partial sums of the diagonal kernel Σ_{k<N} ψ_k(s - Y/2) ψ_k(s + Y/2).
            let l = ladder.len();
            let mut kernel = vec![0.0; qy * qs * l];
            for p in 0..qy * qs {
                let (mi, pl) = (&minus[p * n_max..(p + 1) * n_max], &plus[p * n_max..(p + 1) * n_max]);
                let mut acc = 0.0;
                let mut k = 0;
                let mut order: Vec<(usize, usize)> = ladder.iter().copied().enumerate().collect();
                order.sort_by_key(|&(_, n)| n);
                for (slot, n) in order {
                    while k < n {
                        acc += mi[k] * pl[k];
                        k += 1;
                    }
                    kernel[p * l + slot] = acc;
                }
            }
            let mut traces = vec![Complex64::new(0.0, 0.0); l];
            let mut ycount = vec![0usize; m];
            let mut yflat = 0;
            let mut prod = vec![0.0; l];
            loop {
                let wy: f64 = ycount.iter().map(|&i| y_rule.weights[i]).product();
                let mut scount = vec![0usize; m];
                let mut sflat = 0;
                loop {
                    let mut weight = wy;
                    prod.iter_mut().for_each(|v| *v = 1.0);
                    for c in 0..m {
                        weight *= s_rule.scaled_weights[scount[c]];
                        let p = ycount[c] * qs + scount[c];
                        for (slot, v) in prod.iter_mut().enumerate() {
                            *v *= kernel[p * l + slot];
                        }
                    }
                    let g = data[yflat * qs_m + sflat] * weight;
                    for (t, v) in traces.iter_mut().zip(&prod) {
                        *t += g * *v;
                    }
                    sflat += 1;
                    if !next_multi(&mut scount, qs) {
                        break;
                    }
                }
                yflat += 1;
                if !next_multi(&mut ycount, qy) {
                    break;
                }
            }
            (None, traces.into_iter().map(|t| t * norm).collect())
        }
        Target::Matrix(n) => {
            let dim = n.pow(m as u32);
            let mut out = DMatrix::<Complex64>::zeros(dim, dim);
            let mut row = vec![0.0; dim];
            let mut col = vec![0.0; dim];
            let mut ycount = vec![0usize; m];
            let mut yflat = 0;
            loop {
                let wy: f64 = ycount.iter().map(|&i| y_rule.weights[i]).product();
                let mut scount = vec![0usize; m];
                let mut sflat = 0;
                loop {
                    let mut weight = wy;
                    row[0] = 1.0;
                    col[0] = 1.0;
                    let mut len = 1;
                    for c in 0..m {
                        weight *= s_rule.scaled_weights[scount[c]];
                        let off = (ycount[c] * qs + scount[c]) * n_max;
                        // Kronecker extension by one axis, in place from the back.
                        for i in (0..len).rev() {
                            let (r, q) = (row[i], col[i]);
                            for k in 0..n {
                                row[i * n + k] = r * minus[off + k];
                                col[i * n + k] = q * plus[off + k];
                            }
                        }
                        len *= n;
                    }
                    let g = data[yflat * qs_m + sflat] * weight;
                    for k in 0..dim {
                        let gk = g * col[k];
                        for j in 0..dim {
                            out[(j, k)] += gk * row[j];
                        }
                    }
                    sflat += 1;
                    if !next_multi(&mut scount, qs) {
                        break;
                    }
                }
                yflat += 1;
                if !next_multi(&mut ycount, qy) {
                    break;
                }
            }
            (Some(out * Complex64::new(norm, 0.0)), Vec::new())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierResult {
    pub matrix: DMatrix<Complex64>,
    pub lambda: f64,
    pub truncation: usize,
    pub grid: FourierGrid,
    /// Largest entry change against a grid with 3/4 of the nodes.
    pub residual: f64,
    pub converged: bool,
}

/// `π_λ(f) = ∫ f(n) π_λ(n) dn` on the truncated space of `model`.
pub fn group_fourier(
    f: &dyn GroupFunction,
    model: &SchrodingerModel,
    grid: Option<FourierGrid>,
) -> Result<FourierResult, HeisenbergError> {
    if f.m() != model.m() {
        return Err(HeisenbergError::DimensionMismatch { expected: model.m(), found: f.m() });
    }
    let n = model.truncation();
    let grid = grid.unwrap_or_else(|| FourierGrid::for_truncation(n, model.m()));
    grid.validate(n)?;
    let fine = transform(f, model.lambda(), &grid, Target::Matrix(n)).0.expect("matrix target");
    let coarse = transform(f, model.lambda(), &grid.coarser(), Target::Matrix(n)).0.expect("matrix target");
    let residual = (&fine - &coarse).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scale = fine.iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(FourierResult {
        matrix: fine,
        lambda: model.lambda(),
        truncation: n,
        grid,
        residual,
        converged: residual <= 1e-8 * scale.max(1.0),
    })
}

/// `tr π_λ(f)` restricted to the first `N` levels per axis, for each `N` in
/// `ladder`, from a single quadrature pass.
pub fn trace_ladder(
    f: &dyn GroupFunction,
    lambda: f64,
    ladder: &[usize],
    grid: &FourierGrid,
) -> Result<Vec<Complex64>, HeisenbergError> {
    if lambda == 0.0 {
        return Err(HeisenbergError::ZeroLambda);
    }
    let n_max = ladder.iter().copied().max().ok_or_else(|| HeisenbergError::InvalidGrid("empty ladder".into()))?;
    if ladder.contains(&0) {
        return Err(HeisenbergError::InvalidGrid("truncation 0 in ladder".into()));
    }
    grid.validate(n_max)?;
    Ok(transform(f, lambda, grid, Target::Traces(ladder)).1)
}

/// Nodes for the `λ` integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaGrid {
    /// Gauss–Legendre panels on `[0, max]` and `[-max, 0]`, halving toward 0.
    Graded { max: f64, levels: usize, points_per_panel: usize },
    /// Equispaced trapezoid on `[-max, max]`; the node at 0 carries zero density.
    Trapezoid { max: f64, nodes: usize },
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self::Graded { max: 8.0, levels: 8, points_per_panel: 16 }
    }
}

impl LambdaGrid {
    pub fn rule(&self) -> QuadratureRule {
        match *self {
            Self::Graded { max, levels, points_per_panel } => {
                let right = graded_panels(max, levels, points_per_panel);
                let left = QuadratureRule {
                    nodes: right.nodes.iter().rev().map(|x| -x).collect(),
                    weights: right.weights.iter().rev().copied().collect(),
                };
                QuadratureRule::concat([left, right])
            }
            Self::Trapezoid { max, nodes } => QuadratureRule::trapezoid(-max, max, nodes),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlancherelOptions {
    pub ladder: Vec<usize>,
    pub lambda_grid: LambdaGrid,
    /// Defaults to [`FourierGrid::for_truncation`] at the largest truncation.
    pub grid: Option<FourierGrid>,
}

impl Default for PlancherelOptions {
    fn default() -> Self {
        Self { ladder: vec![16, 32, 48], lambda_grid: LambdaGrid::default(), grid: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderValue {
    pub truncation: usize,
    pub value: f64,
    pub imaginary: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSample {
    pub lambda: f64,
    pub weight: f64,
    /// `c |λ|^m Re tr π_λ(f)` per truncation of the ladder.
    pub integrand: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlancherelReport {
    /// Extrapolation of the ladder values to `N = ∞`.
    pub value: f64,
    pub target: f64,
    pub residual: f64,
    pub raw: Vec<LadderValue>,
    /// Whether `|raw − target|` strictly decreases along the ladder.
    pub monotone: bool,
    pub m: usize,
    pub plancherel_constant: f64,
    pub lambda_grid: LambdaGrid,
    pub lambda_nodes: usize,
    pub grid: FourierGrid,
    #[serde(skip)]
    pub samples: Vec<LambdaSample>,
}

impl PlancherelReport {
    /// `λ, integrand at each truncation` as CSV with 17 significant digits.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("lambda,weight");
        for r in &self.raw {
            out.push_str(&format!(",N{}", r.truncation));
        }
        out.push('\n');
        for s in &self.samples {
            out.push_str(&format!("{:.16e},{:.16e}", s.lambda, s.weight));
            for v in &s.integrand {
                out.push_str(&format!(",{v:.16e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Value at `N = ∞` of the polynomial in `1/N` through `(N_i, values_i)`.
pub fn richardson_extrapolate(ladder: &[usize], values: &[f64]) -> f64 {
    assert_eq!(ladder.len(), values.len());
    let h: Vec<f64> = ladder.iter().map(|&n| 1.0 / n as f64).collect();
    let mut total = 0.0;
    for i in 0..h.len() {
        let mut basis = 1.0;
        for j in 0..h.len() {
            if j != i {
                basis *= h[j] / (h[j] - h[i]);
            }
        }
        total += basis * values[i];
    }
    total
}

/// `f(e) ≈ c ∫ tr π_λ(f) |λ|^m dλ`, evaluated at every truncation of the
/// ladder and extrapolated in `1/N`.
pub fn plancherel_invert(
    f: &dyn GroupFunction,
    options: &PlancherelOptions,
) -> Result<PlancherelReport, HeisenbergError> {
    let m = f.m();
    let mut ladder = options.ladder.clone();
    ladder.sort_unstable();
    ladder.dedup();
    let n_max = *ladder.last().ok_or_else(|| HeisenbergError::InvalidGrid("empty ladder".into()))?;
    let grid = options.grid.unwrap_or_else(|| FourierGrid::for_truncation(n_max, m));
    let rule = options.lambda_grid.rule();
    if rule.is_empty() {
        return Err(HeisenbergError::InvalidGrid("empty λ grid".into()));
    }
    let c = plancherel_constant(m);
    let mut totals = vec![Complex64::new(0.0, 0.0); ladder.len()];
    let mut samples = Vec::with_capacity(rule.len());
    for (&lambda, &weight) in rule.nodes.iter().zip(&rule.weights) {
        if lambda == 0.0 {
            continue;
        }
        let density = c * lambda.abs().powi(m as i32);
        let traces = trace_ladder(f, lambda, &ladder, &grid)?;
        for (t, tr) in totals.iter_mut().zip(&traces) {
            *t += weight * density * tr;
        }
        samples.push(LambdaSample { lambda, weight, integrand: traces.iter().map(|t| density * t.re).collect() });
    }
    let target = f.at(&HeisenbergElement::identity(m)).re;
    let reals: Vec<f64> = totals.iter().map(|t| t.re).collect();
    let value = if ladder.len() > 1 { richardson_extrapolate(&ladder, &reals) } else { reals[0] };
    let raw: Vec<LadderValue> = ladder
        .iter()
        .zip(&totals)
        .map(|(&truncation, t)| LadderValue {
            truncation,
            value: t.re,
            imaginary: t.im,
            error: (t.re - target).abs(),
        })
        .collect();
    let monotone = raw.windows(2).all(|p| p[1].error < p[0].error);
    Ok(PlancherelReport {
        value,
        target,
        residual: (value - target).abs(),
        raw,
        monotone,
        m,
        plancherel_constant: c,
        lambda_grid: options.lambda_grid,
        lambda_nodes: rule.len(),
        grid,
        samples,
    })
}

/// Inversion at `g₀`: the transform of `n ↦ f(g₀n)` is `π_λ(g₀)⁻¹ π_λ(f)`, so
/// its trace integral recovers `f(g₀)`.
pub fn plancherel_invert_at(
    f: &dyn GroupFunction,
    at: &HeisenbergElement,
    options: &PlancherelOptions,
) -> Result<PlancherelReport, HeisenbergError> {
    if at.m() != f.m() {
        return Err(HeisenbergError::DimensionMismatch { expected: f.m(), found: at.m() });
    }
    let translated = LeftTranslate { inner: f, by: at.clone() };
    plancherel_invert(&translated, options)
}
