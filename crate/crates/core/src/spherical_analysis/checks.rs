use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GroupPoint, KElement, SphericalError, SphericalFunction};
use crate::heisenberg_model::HeisenbergElement;
use crate::special::gauss_legendre;

/// Anything that can be evaluated at a group point.
pub trait PointFunction {
    fn value(&self, g: &GroupPoint) -> Result<Complex64, SphericalError>;
}

impl PointFunction for SphericalFunction {
    fn value(&self, g: &GroupPoint) -> Result<Complex64, SphericalError> {
        self.eval(g)
    }
}

impl<F: Fn(&GroupPoint) -> Complex64> PointFunction for F {
    fn value(&self, g: &GroupPoint) -> Result<Complex64, SphericalError> {
        Ok(self(g))
    }
}

/// How the average over `K` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KIntegrator {
    /// Trapezoid rule over the circle `K = U(1)` or `SO(2)`; spectrally accurate.
    Circle { nodes: usize },
    /// For radial functions on `ℝⁿ`: Gauss–Legendre in the angle `θ` between
    /// `x` and `ky`, with density `∝ sin^{n−2} θ`.
    Radial { nodes: usize },
    /// Haar samples of `K`; the report carries a standard error.
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for KIntegrator {
    fn default() -> Self {
        Self::Circle { nodes: 128 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalEquationReport {
    pub integrator: KIntegrator,
    /// `max |∫_K φ(x k y) dk − φ(x) φ(y)|` over the pairs.
    pub residual: f64,
    pub per_pair: Vec<f64>,
    /// Largest Monte Carlo standard error, when sampling was used.
    pub sigma: Option<f64>,
}

/// Deterministic random points of the same group as `like`, with coordinates
/// uniform in `[-scale, scale]`.
pub fn random_points(like: &GroupPoint, count: usize, scale: f64, seed: u64) -> Vec<GroupPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = like.rank();
    (0..count)
        .map(|_| match like {
            GroupPoint::Euclidean(_) => GroupPoint::Euclidean((0..n).map(|_| rng.random_range(-scale..=scale)).collect()),
            GroupPoint::Heisenberg(_) => {
                let z = rng.random_range(-scale..=scale);
                let w = (0..n)
                    .map(|_| Complex64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale)))
                    .collect();
                GroupPoint::Heisenberg(HeisenbergElement::new(z, w))
            }
        })
        .collect()
}

pub fn random_pairs(like: &GroupPoint, count: usize, scale: f64, seed: u64) -> Vec<(GroupPoint, GroupPoint)> {
    let pts = random_points(like, 2 * count, scale, seed);
    pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

fn circle_element(like: &GroupPoint, theta: f64) -> Result<KElement, SphericalError> {
    match like {
        GroupPoint::Euclidean(x) if x.len() == 2 => {
            let (s, c) = theta.sin_cos();
            Ok(KElement::Rotation(DMatrix::from_row_slice(2, 2, &[c, -s, s, c])))
        }
        GroupPoint::Heisenberg(h) if h.m() == 1 => {
            Ok(KElement::Unitary(DMatrix::from_element(1, 1, Complex64::from_polar(1.0, theta))))
        }
        _ => Err(SphericalError::Unsupported(format!(
            "the circle rule needs K = SO(2) or U(1); point has rank {}",
            like.rank()
        ))),
    }
}

/// `∫_K φ(x k y) dk` by the chosen rule, with the standard error for Monte Carlo.
fn k_average(
    phi: &dyn PointFunction,
    radial: Option<&SphericalFunction>,
    x: &GroupPoint,
    y: &GroupPoint,
    integrator: KIntegrator,
) -> Result<(Complex64, Option<f64>), SphericalError> {
    match integrator {
        KIntegrator::Circle { nodes } => {
            if nodes == 0 {
                return Err(SphericalError::InvalidParameter("circle rule with no nodes".into()));
            }
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..nodes {
                let k = circle_element(x, 2.0 * PI * j as f64 / nodes as f64)?;
                sum += phi.value(&x.mul(&k.act(y)?)?)?;
            }
            Ok((sum / nodes as f64, None))
        }
        KIntegrator::Radial { nodes } => {
            let (GroupPoint::Euclidean(a), GroupPoint::Euclidean(b)) = (x, y) else {
                return Err(SphericalError::Unsupported("the radial rule applies to ℝⁿ".into()));
            };
            if a.len() != b.len() || a.len() < 2 {
                return Err(SphericalError::PointMismatch("radial rule needs two points of ℝⁿ, n ≥ 2".into()));
            }
            let phi_r = radial
                .ok_or_else(|| SphericalError::Unsupported("the radial rule needs a radial spherical function".into()))?;
            let n = a.len();
            let (ra, rb) = (x.radius_sqr().sqrt(), y.radius_sqr().sqrt());
            let rule = gauss_legendre(nodes).mapped(0.0, PI);
            let (mut num, mut den) = (0.0, 0.0);
            for (&theta, &w) in rule.nodes.iter().zip(&rule.weights) {
                let density = w * theta.sin().powi(n as i32 - 2);
                let r = (ra * ra + rb * rb + 2.0 * ra * rb * theta.cos()).max(0.0).sqrt();
                let v = phi_r
                    .radial(r)
                    .ok_or_else(|| SphericalError::Unsupported("the radial rule needs a radial spherical function".into()))?;
                num += density * v;
                den += density;
            }
            Ok((Complex64::new(num / den, 0.0), None))
        }
        KIntegrator::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(SphericalError::InvalidParameter("Monte Carlo needs at least two samples".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values = (0..samples)
                .map(|_| {
                    let k = KElement::sample(y, &mut rng);
                    phi.value(&x.mul(&k.act(y)?)?)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mean = values.iter().sum::<Complex64>() / samples as f64;
            let var = values.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (samples - 1) as f64;
            Ok((mean, Some((var / samples as f64).sqrt())))
        }
    }
}

/// Checks `∫_K φ(x k y) dk = φ(x) φ(y)` on each pair.
pub fn functional_equation_residual(
    phi: &SphericalFunction,
    pairs: &[(GroupPoint, GroupPoint)],
    integrator: KIntegrator,
) -> Result<FunctionalEquationReport, SphericalError> {
    functional_equation_residual_with(phi, Some(phi), pairs, integrator)
}

/// Same check for an arbitrary function. The radial rule reads values along
/// the orbit from `radial`, so it needs a spherical function there.
pub fn functional_equation_residual_with(
    phi: &dyn PointFunction,
    radial: Option<&SphericalFunction>,
    pairs: &[(GroupPoint, GroupPoint)],
    integrator: KIntegrator,
) -> Result<FunctionalEquationReport, SphericalError> {
    let mut per_pair = Vec::with_capacity(pairs.len());
    let mut sigma: Option<f64> = None;
    for (x, y) in pairs {
        let (avg, err) = k_average(phi, radial, x, y, integrator)?;
        per_pair.push((avg - phi.value(x)? * phi.value(y)?).norm());
        if let Some(e) = err {
            sigma = Some(sigma.map_or(e, |s| s.max(e)));
        }
    }
    Ok(FunctionalEquationReport {
        integrator,
        residual: per_pair.iter().copied().fold(0.0, f64::max),
        per_pair,
        sigma,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositiveDefiniteReport {
    pub size: usize,
    /// Smallest eigenvalue of the Hermitian part of `[φ(g_j⁻¹ g_i)]`.
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// `‖G − G*‖_max`, which is 0 for a positive definite function.
    pub hermitian_defect: f64,
}

/// Gram matrix `G_ij = φ(g_j⁻¹ g_i)` and its spectrum.
pub fn positive_definite_check(
    phi: &dyn PointFunction,
    points: &[GroupPoint],
) -> Result<PositiveDefiniteReport, SphericalError> {
    let n = points.len();
    if n == 0 {
        return Err(SphericalError::InvalidParameter("empty point set".into()));
    }
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    for (i, gi) in points.iter().enumerate() {
        for (j, gj) in points.iter().enumerate() {
            gram[(i, j)] = phi.value(&gj.inverse().mul(gi)?)?;
        }
    }
    let adj = gram.adjoint();
    let defect = (&gram - &adj).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let hermitian = (&gram + &adj) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(hermitian).eigenvalues;
    Ok(PositiveDefiniteReport {
        size: n,
        min_eigenvalue: eig.iter().copied().fold(f64::INFINITY, f64::min),
        max_eigenvalue: eig.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        hermitian_defect: defect,
    })
}

/// Invariant differential operators with the spherical functions as eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    /// `−Σ ∂²/∂x_i²` on `ℝⁿ`.
    Laplacian,
    /// `∂/∂z` on `H_n`.
    CentralDerivative,
    /// `−Σ_j (X_j² + Y_j²)` on `H_n`, with `X_j = ∂_{x_j} + (y_j/2)∂_z` and
    /// `Y_j = ∂_{y_j} − (x_j/2)∂_z`.
    Sublaplacian,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenReport {
    pub operator: Operator,
    pub step: f64,
    pub recommended_step: f64,
    pub value: Complex64,
    pub applied: Complex64,
    pub eigenvalue: Complex64,
    /// `|Dφ − μφ|` at the point.
    pub residual: f64,
    pub warnings: Vec<String>,
}

fn expected_eigenvalue(phi: &SphericalFunction, op: Operator, point: &GroupPoint) -> Result<Complex64, SphericalError> {
    let mismatch = || SphericalError::Unsupported(format!("{op:?} does not act on {phi:?} at this point"));
    match (op, point) {
        (Operator::Laplacian, GroupPoint::Euclidean(_)) => match *phi {
            SphericalFunction::Trivial => Ok(Complex64::new(0.0, 0.0)),
            SphericalFunction::Bessel { xi_norm, .. } => Ok(Complex64::new(xi_norm * xi_norm, 0.0)),
            SphericalFunction::Laguerre { .. } => Err(mismatch()),
        },
        (Operator::CentralDerivative | Operator::Sublaplacian, GroupPoint::Heisenberg(_)) => match *phi {
            SphericalFunction::Trivial => Ok(Complex64::new(0.0, 0.0)),
            SphericalFunction::Laguerre { n, zeta, m } => Ok(if op == Operator::CentralDerivative {
                Complex64::new(0.0, zeta)
            } else {
                Complex64::new(zeta.abs() * (2 * m + n) as f64, 0.0)
            }),
            SphericalFunction::Bessel { .. } => Err(mismatch()),
        },
        _ => Err(mismatch()),
    }
}

/// Heisenberg point with coordinates `(z, x_1, y_1, …)` shifted.
fn shifted(h: &HeisenbergElement, dz: f64, axis: Option<(usize, f64, f64)>) -> GroupPoint {
    let mut g = h.clone();
    g.z += dz;
    if let Some((j, dx, dy)) = axis {
        g.w[j] += Complex64::new(dx, dy);
    }
    GroupPoint::Heisenberg(g)
}

/// Central differences of step `h` applied to `φ`, compared with the known eigenvalue.
pub fn eigenfunction_residual(
    phi: &SphericalFunction,
    op: Operator,
    point: &GroupPoint,
    h: f64,
) -> Result<EigenReport, SphericalError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(SphericalError::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let eigenvalue = expected_eigenvalue(phi, op, point)?;
    let value = phi.eval(point)?;
    let f = |g: &GroupPoint| phi.eval(g);
    let applied = match (op, point) {
        (Operator::Laplacian, GroupPoint::Euclidean(x)) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..x.len() {
                let mut plus = x.clone();
                let mut minus = x.clone();
                plus[i] += h;
                minus[i] -= h;
                acc += f(&GroupPoint::Euclidean(plus))? - value * 2.0 + f(&GroupPoint::Euclidean(minus))?;
            }
            -acc / (h * h)
        }
        (Operator::CentralDerivative, GroupPoint::Heisenberg(g)) => {
            (f(&shifted(g, h, None))? - f(&shifted(g, -h, None))?) / (2.0 * h)
        }
        (Operator::Sublaplacian, GroupPoint::Heisenberg(g)) => {
            let second = |a: GroupPoint, b: GroupPoint| -> Result<Complex64, SphericalError> {
                Ok((f(&a)? - value * 2.0 + f(&b)?) / (h * h))
            };
            let dzz = second(shifted(g, h, None), shifted(g, -h, None))?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, wj) in g.w.iter().enumerate() {
                let (x, y) = (wj.re, wj.im);
                let dxx = second(shifted(g, 0.0, Some((j, h, 0.0))), shifted(g, 0.0, Some((j, -h, 0.0))))?;
                let dyy = second(shifted(g, 0.0, Some((j, 0.0, h))), shifted(g, 0.0, Some((j, 0.0, -h))))?;
                let cross = |dx: f64, dy: f64| -> Result<Complex64, SphericalError> {
                    let mut s = Complex64::new(0.0, 0.0);
                    for (sa, sz) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        s += f(&shifted(g, sz * h, Some((j, sa * dx, sa * dy))))? * (sa * sz);
                    }
                    Ok(s / (4.0 * h * h))
                };
                let dxz = cross(h, 0.0)?;
                let dyz = cross(0.0, h)?;
                acc += dxx + dyy + dxz * y - dyz * x + dzz * (wj.norm_sqr() / 4.0);
            }
            -acc
        }
        _ => unreachable!("checked by expected_eigenvalue"),
    };
    let first_order = op == Operator::CentralDerivative;
    let scale = match point {
        GroupPoint::Euclidean(x) => x.iter().fold(1.0f64, |a, v| a.max(v.abs())),
        GroupPoint::Heisenberg(g) => g.w.iter().fold(g.z.abs().max(1.0), |a, v| a.max(v.re.abs()).max(v.im.abs())),
    };
    let recommended_step = scale * if first_order { f64::EPSILON.cbrt() } else { f64::EPSILON.powf(0.25) };
    let mut warnings = Vec::new();
    if h < recommended_step / 10.0 {
        warnings.push(format!(
            "step {h:.3e} is below a tenth of the recommended {recommended_step:.3e}; rounding error dominates"
        ));
    }
    Ok(EigenReport {
        operator: op,
        step: h,
        recommended_step,
        value,
        applied,
        eigenvalue,
        residual: (applied - eigenvalue * value).norm(),
        warnings,
    })
}
