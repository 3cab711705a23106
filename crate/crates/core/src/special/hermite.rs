use std::f64::consts::PI;

/// Orthonormal Hermite functions `ψ_0(x), …, ψ_{n-1}(x)`,
/// `ψ_k(x) = (2^k k! √π)^{-1/2} H_k(x) e^{-x²/2}`.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    hermite_functions_into(x, &mut out);
    out
}

/// Fills `out[k] = ψ_k(x)`. The recurrence runs on rescaled values so large
/// `|x|` neither overflows the polynomial nor underflows the Gaussian early.
pub fn hermite_functions_into(x: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    // Track ψ_k = p_k · exp(log_scale - x²/2).
    let mut log_scale = 0.0f64;
    let base = -x * x / 2.0;
    let mut p_prev = 0.0;
    let mut p = PI.powf(-0.25);
    out[0] = p * base.exp();
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / kf).sqrt() * x * p - ((kf - 1.0) / kf).sqrt() * p_prev;
        p_prev = p;
        p = next;
        if p.abs() > 1e150 {
            p *= 1e-150;
            p_prev *= 1e-150;
            log_scale += 150.0 * std::f64::consts::LN_10;
        }
        out[k] = p * (base + log_scale).exp();
    }
}
