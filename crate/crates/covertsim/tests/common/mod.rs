//! Shared numerical oracles for integration tests. These integrate the
//! densities directly and stay independent of the closed forms under test.

// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

/// Simpson integration of `g` over `[0, hi]` with `n` intervals (even).
pub fn simpson(g: impl Fn(f64) -> f64, hi: f64, n: usize) -> f64 {
    let h = hi / n as f64;
    let mut sum = g(0.0) + g(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * g(i as f64 * h);
    }
    sum * h / 3.0
}

/// KL divergence between Exp(mean `n0+rho`) and Exp(mean `n0`) by
/// quadrature of `f1·ln(f1/f0)`.
pub fn kl_oracle(rho: f64, n0: f64, intervals: usize) -> f64 {
    let m0 = n0;
    let m1 = n0 + rho;
    let g = |x: f64| {
        let f1 = (-x / m1).exp() / m1;
        f1 * ((m0 / m1).ln() + x * (1.0 / m0 - 1.0 / m1))
    };
    simpson(g, 80.0 * m1, intervals)
}

/// Total variational distance between the same pair by quadrature of
/// `|f1 − f0| / 2`.
pub fn tv_oracle(rho: f64, n0: f64, intervals: usize) -> f64 {
    let m0 = n0;
    let m1 = n0 + rho;
    let g = |x: f64| ((-x / m1).exp() / m1 - (-x / m0).exp() / m0).abs();
    0.5 * simpson(g, 80.0 * m1, intervals)
}
