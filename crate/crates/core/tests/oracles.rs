//! Independent reference computations for derived constants and exponents.

use chaoscrypt::analysis::{lyapunov, LyapunovSettings, CHI2_255_CRIT_01, CHI2_255_CRIT_05};
use chaoscrypt::{BaseMap, ChaoticMap};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn chi_square_critical_values_match_distribution() {
    let d = ChiSquared::new(255.0).unwrap();
    approx::assert_abs_diff_eq!(d.inverse_cdf(0.99), CHI2_255_CRIT_01, epsilon = 1e-3);
    approx::assert_abs_diff_eq!(d.inverse_cdf(0.95), CHI2_255_CRIT_05, epsilon = 1e-3);
}

/// Orbit average of `ln|f'(x)|` with the analytic derivative.
fn analytic_exponent(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, x0: f64, burn_in: usize, n: usize) -> f64 {
    let mut x = x0;
    for _ in 0..burn_in {
        x = f(x);
    }
    let mut acc = 0.0;
    for _ in 0..n {
        acc += df(x).abs().max(1e-300).ln();
        x = f(x);
    }
    acc / n as f64
}

#[test]
fn logistic_exponent_matches_analytic_derivative() {
    let settings = LyapunovSettings::default();
    for r in [3.5, 3.7, 3.83, 3.9, 4.0] {
        let oracle = analytic_exponent(|x| r * x * (1.0 - x), |x| r * (1.0 - 2.0 * x), 0.1, 1000, 5000);
        let est = lyapunov(&ChaoticMap::Base(BaseMap::Logistic), r, 0.1, &settings).unwrap();
        approx::assert_abs_diff_eq!(est.value, oracle, epsilon = 1e-4);
    }
}

#[test]
fn sine_exponent_matches_analytic_derivative() {
    use std::f64::consts::PI;
    let settings = LyapunovSettings::default();
    for r in [3.6, 3.9, 4.0] {
        let oracle = analytic_exponent(|x| r * (PI * x).sin() / 4.0, |x| r * PI * (PI * x).cos() / 4.0, 0.1, 1000, 5000);
        let est = lyapunov(&ChaoticMap::Base(BaseMap::Sine), r, 0.1, &settings).unwrap();
        approx::assert_abs_diff_eq!(est.value, oracle, epsilon = 1e-4);
    }
}

#[test]
fn tent_exponent_is_log_half_slope() {
    let settings = LyapunovSettings::default();
    for r in [2.5, 3.0, 3.6] {
        let est = lyapunov(&ChaoticMap::Base(BaseMap::Tent), r, 0.1, &settings).unwrap();
        approx::assert_abs_diff_eq!(est.value, (r / 2.0).ln(), epsilon = 1e-6);
    }
}
