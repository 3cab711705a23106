use std::f64::consts::PI;

/// Below this argument the power series is used directly.
const SERIES_LIMIT: f64 = 8.0;

/// `Γ(ν + 1)` for `ν = two_nu / 2 ≥ -1/2`.
pub fn gamma_half_integer(two_nu: u32) -> f64 {
    // Γ(ν+1) = ν Γ(ν); base Γ(1) = 1 or Γ(1/2) = √π.
    let (mut g, mut x) = if two_nu % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    let target = two_nu as f64 / 2.0 + 1.0;
    while x < target - 1e-9 {
        g *= x;
        x += 1.0;
    }
    g
}

fn use_series(two_nu: u32, x: f64) -> bool {
    x <= SERIES_LIMIT || (two_nu % 2 == 1 && two_nu as f64 / 2.0 >= x)
}

/// `Γ(ν+1) (2/s)^ν J_ν(s)` for `ν = two_nu / 2`, equal to 1 at `s = 0`.
pub fn normalized_bessel(two_nu: u32, s: f64) -> f64 {
    let s = s.abs();
    let nu = two_nu as f64 / 2.0;
    if use_series(two_nu, s) {
        return series(nu, s);
    }
    gamma_half_integer(two_nu) * (2.0 / s).powf(nu) * bessel_j(two_nu, s)
}

/// `0F1(; ν+1; -s²/4)`.
fn series(nu: f64, s: f64) -> f64 {
    let q = -s * s / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && kf > s {
            break;
        }
    }
    sum
}

/// `J_ν(x)` for `ν = two_nu / 2 ≥ 0` and `x ≥ 0`.
///
/// Series for small `x`; integer orders by Miller's backward recurrence
/// normalized with `J_0 + 2 Σ J_{2k} = 1`; half-integer orders by upward
/// recurrence from the elementary `J_{±1/2}` (stable while `ν < x`).
pub fn bessel_j(two_nu: u32, x: f64) -> f64 {
    let nu = two_nu as f64 / 2.0;
    if x == 0.0 {
        return if two_nu == 0 { 1.0 } else { 0.0 };
    }
    if use_series(two_nu, x) {
        return series(nu, x) * (x / 2.0).powf(nu) / gamma_half_integer(two_nu);
    }
    if two_nu % 2 == 0 {
        return miller(two_nu as usize / 2, x);
    }
    let c = (2.0 / (PI * x)).sqrt();
    let (mut prev, mut cur, mut mu) = (c * x.cos(), c * x.sin(), 0.5);
    while mu < nu - 1e-9 {
        let next = 2.0 * mu / x * cur - prev;
        prev = cur;
        cur = next;
        mu += 1.0;
    }
    cur
}

fn miller(n: usize, x: f64) -> f64 {
    let top = n.max(x as usize);
    let mut start = top + 20 + (40.0 * top as f64).sqrt() as usize;
    start += start % 2;
    let (mut next, mut cur) = (0.0f64, 1e-30f64);
    let mut norm = 0.0;
    let mut target = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // `cur` now holds the unnormalized J_{k-1}.
        let idx = k - 1;
        if idx == n {
            target = cur;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    norm += cur;
    if n == 0 {
        target = cur;
    }
    target / norm
}
