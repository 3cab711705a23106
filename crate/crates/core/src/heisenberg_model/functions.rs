use num_complex::Complex64;

use super::HeisenbergElement;

/// Decay hints used to place quadrature nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    /// Half-width of the `z` window outside which `f` is negligible.
    pub z_half_width: f64,
    /// Center of the `z` window.
    pub z_center: f64,
    /// Smallest Gaussian rate `a` with `|f| ≲ e^{-a x²}` along each real axis of `w`.
    pub w_rate: f64,
}

impl Default for Decay {
    fn default() -> Self {
        Self { z_half_width: 9.0, z_center: 0.0, w_rate: 0.5 }
    }
}

/// A function on `H_m` that can be evaluated anywhere.
pub trait GroupFunction {
    fn m(&self) -> usize;

    fn eval(&self, z: f64, w: &[Complex64]) -> Complex64;

    fn decay(&self) -> Decay {
        Decay::default()
    }

    fn at(&self, g: &HeisenbergElement) -> Complex64 {
        self.eval(g.z, &g.w)
    }
}

/// `A · exp(-a (z - z₀)²) · Π_c exp(-b_c x_c² - d_c y_c²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianFunction {
    pub amplitude: f64,
    pub z_rate: f64,
    pub z_center: f64,
    /// `(b_c, d_c)` per coordinate.
    pub w_rates: Vec<(f64, f64)>,
}

impl GaussianFunction {
    /// `e^{-z²/2} e^{-|w|²/2}`.
    pub fn standard(m: usize) -> Self {
        Self { amplitude: 1.0, z_rate: 0.5, z_center: 0.0, w_rates: vec![(0.5, 0.5); m] }
    }

    /// Approximate identity of unit Haar mass and width `eps` in every direction.
    pub fn bump(m: usize, eps: f64) -> Self {
        let rate = 1.0 / (2.0 * eps * eps);
        // ∫ e^{-z²/2ε²} dz/(2πc) · ∫ e^{-|w|²/2ε²} (2π)^{-m} dw = ε√(2π)/(2πc) · ε^{2m}.
        let mass = eps * (2.0 * std::f64::consts::PI).sqrt() * super::center_density(m) * eps.powi(2 * m as i32);
        Self { amplitude: 1.0 / mass, z_rate: rate, z_center: 0.0, w_rates: vec![(rate, rate); m] }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { amplitude: self.amplitude * factor, ..self.clone() }
    }
}

impl GroupFunction for GaussianFunction {
    fn m(&self) -> usize {
        self.w_rates.len()
    }

    fn eval(&self, z: f64, w: &[Complex64]) -> Complex64 {
        let dz = z - self.z_center;
        let mut exponent = -self.z_rate * dz * dz;
        for (c, (b, d)) in w.iter().zip(&self.w_rates) {
            exponent -= b * c.re * c.re + d * c.im * c.im;
        }
        Complex64::new(self.amplitude * exponent.exp(), 0.0)
    }

    fn decay(&self) -> Decay {
        // e^{-a z²} < 1e-16 beyond √(37/a).
        let w_rate = self.w_rates.iter().flat_map(|&(b, d)| [b, d]).fold(f64::INFINITY, f64::min);
        Decay { z_half_width: (37.0 / self.z_rate).sqrt(), z_center: self.z_center, w_rate }
    }
}

/// A closure with explicit decay hints.
pub struct FnGroupFunction<F> {
    m: usize,
    f: F,
    decay: Decay,
}

impl<F: Fn(f64, &[Complex64]) -> Complex64> FnGroupFunction<F> {
    pub fn new(m: usize, decay: Decay, f: F) -> Self {
        Self { m, f, decay }
    }
}

impl<F: Fn(f64, &[Complex64]) -> Complex64> GroupFunction for FnGroupFunction<F> {
    fn m(&self) -> usize {
        self.m
    }

    fn eval(&self, z: f64, w: &[Complex64]) -> Complex64 {
        (self.f)(z, w)
    }

    fn decay(&self) -> Decay {
        self.decay
    }
}

/// `n ↦ f(g₀ n)`.
pub struct LeftTranslate<'a> {
    pub inner: &'a dyn GroupFunction,
    pub by: HeisenbergElement,
}

impl GroupFunction for LeftTranslate<'_> {
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn eval(&self, z: f64, w: &[Complex64]) -> Complex64 {
        let g = self.by.mul(&HeisenbergElement::new(z, w.to_vec()));
        self.inner.eval(g.z, &g.w)
    }

    fn decay(&self) -> Decay {
        let base = self.inner.decay();
        let shift = self.by.w_norm_sqr().sqrt();
        // The translate is centered at g₀⁻¹; the cocycle smears z by ½|w₀||w|.
        let w_extent = (37.0 / base.w_rate).sqrt() + shift;
        Decay {
            z_half_width: base.z_half_width + 0.5 * shift * w_extent,
            z_center: base.z_center - self.by.z,
            w_rate: base.w_rate,
        }
    }
}
