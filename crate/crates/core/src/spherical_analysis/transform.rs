use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::checks::{random_points, PointFunction};
use super::{laguerre_radial_into, GroupPoint, KElement, SphericalError, SphericalFunction};
use crate::heisenberg_model::{center_density, plancherel_constant, quotient_density, HeisenbergElement};
use crate::special::{gamma_half_integer, gauss_legendre, QuadratureRule};

/// Quadrature for transforms of radial functions: composite Gauss–Legendre
/// on `[0, r_max]` in the radius and, on `H_n`, the trapezoid rule on
/// `[−z_half_width, z_half_width]` in the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformGrid {
    pub r_max: f64,
    pub r_panels: usize,
    pub r_points: usize,
    pub z_half_width: f64,
    pub z_points: usize,
}

impl Default for TransformGrid {
    fn default() -> Self {
        Self { r_max: 12.0, r_panels: 24, r_points: 24, z_half_width: 12.0, z_points: 241 }
    }
}

impl TransformGrid {
    fn radial_rule(&self) -> Result<QuadratureRule, SphericalError> {
        if !(self.r_max > 0.0) || self.r_panels == 0 || self.r_points == 0 {
            return Err(SphericalError::InvalidParameter(format!("bad radial grid {self:?}")));
        }
        let base = gauss_legendre(self.r_points);
        let h = self.r_max / self.r_panels as f64;
        Ok(QuadratureRule::concat((0..self.r_panels).map(|p| base.mapped(p as f64 * h, (p + 1) as f64 * h))))
    }

    fn z_rule(&self) -> Result<QuadratureRule, SphericalError> {
        if !(self.z_half_width > 0.0) || self.z_points < 2 {
            return Err(SphericalError::InvalidParameter(format!("bad central grid {self:?}")));
        }
        Ok(QuadratureRule::trapezoid(-self.z_half_width, self.z_half_width, self.z_points))
    }
}

/// `|S^{d−1}| = 2π^{d/2} / Γ(d/2)`, for `d ≥ 2`.
fn sphere_area(d: usize) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) / gamma_half_integer(d as u32 - 2)
}

/// Spot check of `f(k·p) = f(p)` on seeded points and Haar samples of `K`.
fn check_invariance(f: &dyn PointFunction, like: &GroupPoint) -> Result<(), SphericalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for p in random_points(like, 6, 1.5, 0x1217) {
        let k = KElement::sample(&p, &mut rng);
        let (a, b) = (f.value(&p)?, f.value(&k.act(&p)?)?);
        if (a - b).norm() > 1e-9 * a.norm().max(1.0) {
            return Err(SphericalError::NotInvariant(format!("f(p) = {a}, f(k·p) = {b}")));
        }
    }
    Ok(())
}

fn e1(n: usize, r: f64) -> Vec<f64> {
    let mut x = vec![0.0; n];
    x[0] = r;
    x
}

fn heis_point(n: usize, z: f64, rho: f64) -> GroupPoint {
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    w[0] = Complex64::new(rho, 0.0);
    GroupPoint::Heisenberg(HeisenbergElement::new(z, w))
}

/// `f̂(φ) = ∫_N f(g) φ(g⁻¹) dg` for a `K`-invariant `f`, reduced to polar
/// coordinates. Lebesgue measure on `ℝⁿ`; the normalized Haar measure of the
/// Heisenberg module on `H_n`.
pub fn spherical_transform(
    f: &dyn PointFunction,
    phi: &SphericalFunction,
    grid: &TransformGrid,
) -> Result<Complex64, SphericalError> {
    let radial = grid.radial_rule()?;
    match *phi {
        SphericalFunction::Trivial => Err(SphericalError::Unsupported(
            "the trivial function does not fix a group; use a Bessel or Laguerre function".into(),
        )),
        SphericalFunction::Bessel { n, .. } => {
            check_invariance(f, &GroupPoint::origin_euclidean(n))?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (&r, &w) in radial.nodes.iter().zip(&radial.weights) {
                let g = GroupPoint::Euclidean(e1(n, r));
                acc += f.value(&g)? * phi.eval(&g.inverse())? * (w * r.powi(n as i32 - 1));
            }
            Ok(acc * sphere_area(n))
        }
        SphericalFunction::Laguerre { n, .. } => {
            check_invariance(f, &GroupPoint::origin_heisenberg(n))?;
            let zr = grid.z_rule()?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (&rho, &wr) in radial.nodes.iter().zip(&radial.weights) {
                let jac = wr * rho.powi(2 * n as i32 - 1);
                for (&z, &wz) in zr.nodes.iter().zip(&zr.weights) {
                    let g = heis_point(n, z, rho);
                    acc += f.value(&g)? * phi.eval(&g.inverse())? * (jac * wz);
                }
            }
            Ok(acc * (center_density(n) * quotient_density(n) * sphere_area(2 * n)))
        }
    }
}

/// Transforms `f̂(φ_{ζ,m})` of a `U(n)`-invariant function on `H_n` over a
/// `ζ` rule and `m = 0..=m_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSamples {
    pub n: usize,
    pub zeta: Vec<f64>,
    pub zeta_weights: Vec<f64>,
    pub m_max: usize,
    /// `values[i][m] = f̂(φ_{ζ_i, m})`.
    pub values: Vec<Vec<Complex64>>,
}

impl SpectralSamples {
    /// All transforms at once: the central Fourier integral is shared by
    /// every `m`, and the Laguerre functions come from one recurrence per radius.
    pub fn heisenberg(
        f: &dyn PointFunction,
        n: usize,
        zeta_rule: &QuadratureRule,
        m_max: usize,
        grid: &TransformGrid,
    ) -> Result<Self, SphericalError> {
        if n == 0 {
            return Err(SphericalError::InvalidParameter("H_n needs n ≥ 1".into()));
        }
        if zeta_rule.nodes.iter().any(|z| *z == 0.0 || !z.is_finite()) {
            return Err(SphericalError::InvalidParameter("ζ nodes must be finite and non-zero".into()));
        }
        check_invariance(f, &GroupPoint::origin_heisenberg(n))?;
        let radial = grid.radial_rule()?;
        let zr = grid.z_rule()?;
        // table[i][l] = f(z_l, ρ_i e_1) · trapezoid weight
        let table = radial
            .nodes
            .iter()
            .map(|&rho| {
                zr.nodes
                    .iter()
                    .zip(&zr.weights)
                    .map(|(&z, &wz)| Ok(f.value(&heis_point(n, z, rho))? * wz))
                    .collect::<Result<Vec<_>, SphericalError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let scale = center_density(n) * quotient_density(n) * sphere_area(2 * n);
        let mut lag = vec![0.0; m_max + 1];
        let mut values = Vec::with_capacity(zeta_rule.len());
        for &zeta in &zeta_rule.nodes {
            // φ(g⁻¹) at g = (z, ρe_1) is e^{−iζz} times the radial part.
            let phases: Vec<Complex64> = zr.nodes.iter().map(|&z| Complex64::from_polar(1.0, -zeta * z)).collect();
            let mut row = vec![Complex64::new(0.0, 0.0); m_max + 1];
            for ((&rho, &wr), fz) in radial.nodes.iter().zip(&radial.weights).zip(&table) {
                let central: Complex64 = fz.iter().zip(&phases).map(|(a, b)| a * b).sum();
                let weight = central * (wr * rho.powi(2 * n as i32 - 1) * scale);
                laguerre_radial_into(n, zeta, rho * rho, &mut lag);
                for (slot, &l) in row.iter_mut().zip(&lag) {
                    *slot += weight * l;
                }
            }
            values.push(row);
        }
        Ok(Self { n, zeta: zeta_rule.nodes.clone(), zeta_weights: zeta_rule.weights.clone(), m_max, values })
    }
}

/// Weights of the inversion sum `f(g) = Σ_i w_i Σ_m c(ζ_i, m) f̂(φ_{ζ_i,m}) φ_{ζ_i,m}(g)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InversionWeights {
    #[default]
    Missing,
    /// The Plancherel weights of `(H_n ⋊ U(n), U(n))`, see [`heisenberg_inversion_weight`].
    Heisenberg,
    /// `c(ζ_i, m)` laid out like [`SpectralSamples::values`].
    Custom(Vec<Vec<f64>>),
}

/// `c |ζ|ⁿ C(m + n − 1, n − 1)`: Plancherel density times the dimension of
/// the degree-`m` polynomials in `n` variables.
pub fn heisenberg_inversion_weight(n: usize, zeta: f64, m: usize) -> f64 {
    let mult = (1..n).fold(1.0, |acc, k| acc * (m + k) as f64 / k as f64);
    plancherel_constant(n) * zeta.abs().powi(n as i32) * mult
}

/// Inversion of [`SpectralSamples`] at each point of `H_n`.
pub fn spherical_invert(
    samples: &SpectralSamples,
    weights: &InversionWeights,
    points: &[GroupPoint],
) -> Result<Vec<Complex64>, SphericalError> {
    let n = samples.n;
    if *weights == InversionWeights::Missing {
        return Err(SphericalError::MissingWeights);
    }
    if let InversionWeights::Custom(table) = weights {
        if table.len() != samples.zeta.len() || table.iter().any(|row| row.len() != samples.m_max + 1) {
            return Err(SphericalError::InvalidParameter("custom weights do not match the sample layout".into()));
        }
    }
    let mut lag = vec![0.0; samples.m_max + 1];
    points
        .iter()
        .map(|p| {
            let GroupPoint::Heisenberg(g) = p else {
                return Err(SphericalError::PointMismatch("inversion is written for H_n".into()));
            };
            if g.m() != n {
                return Err(SphericalError::PointMismatch(format!("expected a point of H_{n}, got H_{}", g.m())));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, (&zeta, &wz)) in samples.zeta.iter().zip(&samples.zeta_weights).enumerate() {
                laguerre_radial_into(n, zeta, g.w_norm_sqr(), &mut lag);
                let mut inner = Complex64::new(0.0, 0.0);
                for (m, (&fh, &l)) in samples.values[i].iter().zip(&lag).enumerate() {
                    let c = match weights {
                        InversionWeights::Missing => return Err(SphericalError::MissingWeights),
                        InversionWeights::Heisenberg => heisenberg_inversion_weight(n, zeta, m),
                        InversionWeights::Custom(table) => table[i][m],
                    };
                    inner += fh * (c * l);
                }
                acc += inner * Complex64::from_polar(wz, zeta * g.z);
            }
            Ok(acc)
        })
        .collect()
}
