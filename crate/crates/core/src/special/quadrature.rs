use std::f64::consts::PI;

/// Nodes and weights for `∫ f(x) dx` over some interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Equispaced trapezoid rule on `[a, b]` with `n ≥ 2` points.
    pub fn trapezoid(a: f64, b: f64, n: usize) -> Self {
        assert!(n >= 2);
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + h * i as f64).collect();
        let weights = (0..n).map(|i| if i == 0 || i == n - 1 { h / 2.0 } else { h }).collect();
        Self { nodes, weights }
    }

    /// Rule affinely mapped from `[-1, 1]` to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Self {
        let (c, r) = ((a + b) / 2.0, (b - a) / 2.0);
        Self {
            nodes: self.nodes.iter().map(|x| c + r * x).collect(),
            weights: self.weights.iter().map(|w| w * r).collect(),
        }
    }

    pub fn concat(parts: impl IntoIterator<Item = QuadratureRule>) -> Self {
        let mut out = Self { nodes: Vec::new(), weights: Vec::new() };
        for p in parts {
            out.nodes.extend(p.nodes);
            out.weights.extend(p.weights);
        }
        out
    }
}

/// Gauss–Hermite rule for the weight `e^{-x²}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `weights[i] * exp(nodes[i]²)`, for integrands that carry their own decay.
    pub scaled_weights: Vec<f64>,
}

impl GaussHermite {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ g(x) dx` for `g` with Gaussian-like decay at rate `alpha`:
    /// nodes `s/√α`, weights `W/√α`.
    pub fn scaled_rule(&self, alpha: f64) -> QuadratureRule {
        let r = alpha.sqrt();
        QuadratureRule {
            nodes: self.nodes.iter().map(|s| s / r).collect(),
            weights: self.scaled_weights.iter().map(|w| w / r).collect(),
        }
    }
}

/// `n`-point Gauss–Hermite rule, roots by Newton iteration on the normalized
/// Hermite functions (stable for several hundred nodes).
pub fn gauss_hermite(n: usize) -> GaussHermite {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut scaled = vec![0.0; n];
    let half = n.div_ceil(2);
    let nf = n as f64;
    let mut z: f64 = 0.0;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        for _ in 0..200 {
            let (p, pm1) = psi_pair(n, z);
            let dp = (2.0 * nf).sqrt() * pm1 - z * p;
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, pm1) = psi_pair(n, z);
        x[i] = z;
        x[n - 1 - i] = -z;
        let w = 1.0 / (nf * pm1 * pm1);
        scaled[i] = w;
        scaled[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        x[half - 1] = 0.0;
    }
    // Ascending order.
    x.reverse();
    scaled.reverse();
    let weights = x.iter().zip(&scaled).map(|(xi, w)| w * (-xi * xi).exp()).collect();
    GaussHermite { nodes: x, weights, scaled_weights: scaled }
}

/// `(ψ_n(x), ψ_{n-1}(x))` with rescaling against overflow.
fn psi_pair(n: usize, x: f64) -> (f64, f64) {
    let mut psi = vec![0.0; n + 1];
    super::hermite_functions_into(x, &mut psi);
    (psi[n], psi[n - 1])
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> QuadratureRule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        // Recompute the derivative at the converged root.
        let (mut p1, mut p2) = (1.0, 0.0);
        for j in 0..n {
            let p3 = p2;
            p2 = p1;
            p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
        }
        if (z * z - 1.0).abs() > 0.0 {
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
        }
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    QuadratureRule { nodes, weights }
}

/// Composite Gauss–Legendre on `[0, b]` with panel edges
/// `0, b·2^{-levels}, …, b/2, b`, resolving endpoint features at 0.
pub fn graded_panels(b: f64, levels: usize, points_per_panel: usize) -> QuadratureRule {
    let base = gauss_legendre(points_per_panel);
    let mut edges = vec![0.0];
    for k in (0..levels).rev() {
        edges.push(b / 2f64.powi(k as i32));
    }
    if levels == 0 {
        edges.push(b);
    }
    QuadratureRule::concat(edges.windows(2).map(|w| base.mapped(w[0], w[1])))
}
