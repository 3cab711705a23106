/// Generalized Laguerre polynomial `L_m^{(α)}(x)` by the three-term recurrence.
pub fn laguerre(m: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_m^{(α)}(x) / L_m^{(α)}(0)`, equal to 1 at the origin.
pub fn normalized_laguerre(m: usize, alpha: f64, x: f64) -> f64 {
    // L_m^{(α)}(0) = C(m + α, m)
    let mut at_zero = 1.0;
    for k in 1..=m {
        at_zero *= (alpha + k as f64) / k as f64;
    }
    laguerre(m, alpha, x) / at_zero
}

/// Fills `out[k] = L_k^{(α)}(t) e^{-t/2}` for `k < out.len()`.
///
/// The recurrence is rescaled as it runs, so large `t` neither overflows the
/// polynomial nor underflows the damping before they meet.
pub fn laguerre_functions_into(alpha: f64, t: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let mut log_scale = -t / 2.0;
    let (mut prev, mut cur) = (1.0, 1.0 + alpha - t);
    out[0] = log_scale.exp();
    for k in 1..out.len() {
        out[k] = cur * log_scale.exp();
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - t) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            prev *= 1e-150;
            cur *= 1e-150;
            log_scale += 150.0 * std::f64::consts::LN_10;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn damped_functions_match_direct_evaluation() {
        let mut out = [0.0; 12];
        for &(a, t) in &[(0.0, 0.3), (1.0, 4.0), (2.0, 17.5)] {
            laguerre_functions_into(a, t, &mut out);
            for (k, v) in out.iter().enumerate() {
                let direct = laguerre(k, a, t) * (-t / 2.0).exp();
                assert!((v - direct).abs() < 1e-12 * direct.abs().max(1.0), "k={k} a={a} t={t}");
            }
        }
    }

    #[test]
    fn damped_functions_survive_large_arguments() {
        let mut out = vec![0.0; 200];
        laguerre_functions_into(0.0, 900.0, &mut out);
        assert!(out.iter().all(|v| v.is_finite()));
        // |L_k(t) e^{-t/2}| ≤ 1 for α = 0.
        assert!(out.iter().all(|v| v.abs() <= 1.0 + 1e-9));
    }

    #[test]
    fn explicit_low_degrees() {
        for &(a, x) in &[(0.0, 0.7), (1.0, 2.3), (2.0, 0.1)] {
            assert_eq!(laguerre(0, a, x), 1.0);
            assert!((laguerre(1, a, x) - (1.0 + a - x)).abs() < 1e-15);
            let l2 = x * x / 2.0 - (a + 2.0) * x + (a + 2.0) * (a + 1.0) / 2.0;
            assert!((laguerre(2, a, x) - l2).abs() < 1e-13);
        }
    }

    #[test]
    fn explicit_sum_oracle() {
        // L_m^{(α)}(x) = Σ_i (-1)^i C(m+α, m-i) x^i / i!
        fn binom(a: f64, k: usize) -> f64 {
            (0..k).fold(1.0, |acc, j| acc * (a - j as f64) / (j + 1) as f64)
        }
        for m in 0..12 {
            for &a in &[0.0, 1.0, 3.0] {
                let x: f64 = 1.7;
                let mut s = 0.0;
                let mut fact = 1.0;
                for i in 0..=m {
                    if i > 0 {
                        fact *= i as f64;
                    }
                    s += (-1f64).powi(i as i32) * binom(m as f64 + a, m - i) * x.powi(i as i32) / fact;
                }
                assert!((laguerre(m, a, x) - s).abs() < 1e-10 * s.abs().max(1.0), "m={m} a={a}");
            }
        }
        assert_eq!(normalized_laguerre(7, 2.0, 0.0), 1.0);
    }
}
