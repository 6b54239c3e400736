use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k (2k-1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = STIRLING.iter().rev().fold(0.0, |acc, c| acc * inv2 + c) * inv;
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x == x.floor() && x <= 171.0 {
        return (2..x as u64).map(|k| k as f64).product::<f64>().ln();
    }
    if x >= 15.0 {
        return stirling(x);
    }
    let shift = (15.0 - x).ceil() as u32;
    let prod: f64 = (0..shift).map(|i| x + f64::from(i)).product();
    stirling(x + f64::from(shift)) - prod.ln()
}

/// `sin(pi x)` with exact zeros at integers.
fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    let (v, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let v = if v > 0.5 { 1.0 - v } else { v };
    sign * (PI * v).sin()
}

/// `ln|Gamma(x)|` together with the sign of `Gamma(x)`.
///
/// Fails at the poles `x = 0, -1, -2, ...`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain(
            "ln_gamma_signed",
            format!("non-finite argument {x}"),
        ));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::domain("ln_gamma_signed", format!("pole at {x}")));
    }
    if x >= 0.5 {
        return Ok((ln_gamma_positive(x), 1.0));
    }
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    Ok((lg, s.signum()))
}

/// `ln Gamma(x)` for `x > 0`; `ln|Gamma(x)|` for negative non-integers.
pub fn log_gamma(x: f64) -> Result<f64> {
    ln_gamma_signed(x).map(|(lg, _)| lg)
}

/// Reciprocal gamma `1/Gamma(x)`, zero at the poles.
pub fn recip_gamma_ln(x: f64) -> Option<(f64, f64)> {
    ln_gamma_signed(x).ok().map(|(lg, s)| (-lg, s))
}

/// `ln n!`.
pub fn log_factorial(n: u64) -> f64 {
    ln_gamma_positive(n as f64 + 1.0)
}

/// `ln(n!/m!)`, telescoped when the orders are close.
pub fn log_ratio_factorials(n: u64, m: u64) -> f64 {
    let (hi, lo, sign) = if n >= m { (n, m, 1.0) } else { (m, n, -1.0) };
    if hi - lo <= 64 {
        sign * ((lo + 1)..=hi).map(|k| (k as f64).ln()).sum::<f64>()
    } else {
        sign * (log_factorial(hi) - log_factorial(lo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_count_is_exact() {
        let x = 0.935_389_369_304_883_5;
        assert!((log_gamma(x).unwrap() - 0.040_840_718_947_234_7).abs() < 1e-14);
    }

    #[test]
    fn integer_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-15);
        let lf = (1..=30).map(|k| (k as f64).ln()).sum::<f64>();
        assert!((log_factorial(30) - lf).abs() < 1e-13 * lf);
    }

    #[test]
    fn half_integers() {
        let sqrt_pi = PI.sqrt();
        assert!((log_gamma(0.5).unwrap() - sqrt_pi.ln()).abs() < 1e-14);
        assert!((log_gamma(3.5).unwrap() - (15.0 / 8.0 * sqrt_pi).ln()).abs() < 1e-14);
        let (lg, s) = ln_gamma_signed(-0.5).unwrap();
        assert_eq!(s, -1.0);
        assert!((lg - (2.0 * sqrt_pi).ln()).abs() < 1e-14);
        let (lg, s) = ln_gamma_signed(-1.5).unwrap();
        assert_eq!(s, 1.0);
        assert!((lg - (4.0 / 3.0 * sqrt_pi).ln()).abs() < 1e-14);
    }

    #[test]
    fn large_argument_matches_recurrence() {
        for &x in &[20.3, 150.7, 1.0e4 + 0.25, 3.3e7] {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert!((lhs - rhs).abs() < 1e-13 * lhs.abs(), "x={x}");
        }
    }

    #[test]
    fn poles_are_errors() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.0).is_err());
        assert!(recip_gamma_ln(-2.0).is_none());
    }

    #[test]
    fn factorial_ratios() {
        let expect = -(101f64.ln() + 102f64.ln() + 103f64.ln());
        assert!((log_ratio_factorials(100, 103) - expect).abs() < 1e-14);
        assert_eq!(log_ratio_factorials(7, 7), 0.0);
        let far = log_ratio_factorials(1000, 10);
        let telescoped = (11..=1000).map(|k| (k as f64).ln()).sum::<f64>();
        assert!((far - telescoped).abs() < 1e-12 * telescoped);
    }
}
