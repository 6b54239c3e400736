//! Number-state matrix elements of the displacement operator
//! `D(sigma) = exp(sigma a^+ - sigma^* a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, laguerre_log, log_ratio_factorials, Complex, LogScaled};

/// Complex displacement amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaValue {
    pub value: Complex,
}

impl SigmaValue {
    pub fn new(value: Complex) -> Self {
        SigmaValue { value }
    }

    /// Amplitude for transverse momentum of dimensionless size `x` at
    /// azimuth `chi` with per-photon coupling `b`: `-e^{-i chi} b x`.
    pub fn from_momentum(b: f64, x: f64, chi: f64) -> Self {
        SigmaValue {
            value: -Complex::from_polar(b * x, -chi),
        }
    }

    /// Amplitude for a dimensionless momentum vector `(kx, ky)`.
    pub fn from_vector(b: f64, k: [f64; 2]) -> Self {
        SigmaValue {
            value: Complex::new(-b * k[0], b * k[1]),
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }

    /// Unit phase `sigma / |sigma|`, or `1` at the origin.
    pub fn unit(&self) -> Complex {
        let r = self.magnitude();
        if r == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            self.value / r
        }
    }
}

/// Marks whether a value carries the large-`n0` truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorTag {
    None,
    /// Error of order `n0^{-3/4}`.
    InverseN0Pow34,
}

/// A value from a large-`n0` limit formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptotic {
    pub value: Complex,
    pub error_tag: ErrorTag,
}

/// `<n+k| D(sigma) |n>` in log-scaled form.
pub fn element_log(k: i64, n: u64, sigma: SigmaValue) -> Result<LogScaled> {
    if k < -(n as i64) {
        return Err(Error::domain(
            "displacement::element",
            format!("k = {k} < -n = -{n}"),
        ));
    }
    let s = k.unsigned_abs();
    let r = sigma.magnitude();
    if r == 0.0 {
        return Ok(if k == 0 {
            LogScaled::ONE
        } else {
            LogScaled::ZERO
        });
    }
    let (low, high, base) = if k >= 0 {
        (n, n + s, sigma.unit())
    } else {
        (n - s, n, -sigma.unit().conj())
    };
    let lag = laguerre_log(low, s, r * r);
    let log_mag = 0.5 * log_ratio_factorials(low, high) + s as f64 * r.ln() - 0.5 * r * r;
    let phase = LogScaled::new(0.0, base.powi(s as i32));
    Ok(LogScaled::new(log_mag, Complex::new(1.0, 0.0)) * phase * lag)
}

/// `<n+k| D(sigma) |n>`, defined for `k >= -n`.
///
/// ```
/// use qentangle::displacement::{element, SigmaValue};
/// use qentangle::Complex;
/// let s = SigmaValue::new(Complex::new(0.3, -0.4));
/// let coherent = s.value.powi(2) * (-0.125f64).exp() / 2f64.sqrt();
/// assert!((element(2, 0, s).unwrap() - coherent).norm() < 1e-15);
/// ```
pub fn element(k: i64, n: u64, sigma: SigmaValue) -> Result<Complex> {
    element_log(k, n, sigma)?.to_complex()
}

/// Large-`n0` limit `u^k J_k(2 sqrt(n0) |sigma|)` with `u = sigma/|sigma|`
/// (conjugated for negative `k`).
pub fn element_asymptotic(k: i64, n0: u64, sigma: SigmaValue) -> Asymptotic {
    let r = sigma.magnitude();
    let value = if r == 0.0 {
        Complex::new(if k == 0 { 1.0 } else { 0.0 }, 0.0)
    } else {
        let u = if k >= 0 {
            sigma.unit()
        } else {
            sigma.unit().conj()
        };
        u.powi(k.unsigned_abs() as i32) * bessel_j(k, 2.0 * (n0 as f64).sqrt() * r)
    };
    Asymptotic {
        value,
        error_tag: ErrorTag::InverseN0Pow34,
    }
}

/// Mean and variance of the photon number in `D(sigma)|n0>`.
pub fn mean_variance(n0: u64, sigma: SigmaValue) -> (f64, f64) {
    let r2 = sigma.value.norm_sqr();
    (n0 as f64 + r2, (2.0 * n0 as f64 + 1.0) * r2)
}

/// `<n0| D^+(sigma2) D(sigma1) |n0>`.
pub fn overlap_product(n0: u64, sigma1: SigmaValue, sigma2: SigmaValue) -> Complex {
    let d = sigma1.value - sigma2.value;
    let r2 = d.norm_sqr();
    let phase = Complex::from_polar(1.0, (sigma2.value.conj() * sigma1.value).im);
    let lag = laguerre_log(n0, 0, r2).scale_log(-0.5 * r2);
    phase * lag.to_complex().unwrap_or(Complex::new(0.0, 0.0))
}

/// Range of `k` holding all of `|element(k, n0, sigma)|^2` above `1e-18`,
/// extended until 20 consecutive values on each side fall below it.
pub fn significant_k_range(n0: u64, sigma: SigmaValue) -> (i64, i64) {
    let cutoff: f64 = 1e-18;
    let negligible = |k: i64| {
        element_log(k, n0, sigma)
            .map(|v| 2.0 * v.log_magnitude < cutoff.ln())
            .unwrap_or(true)
    };
    let (mean, var) = mean_variance(n0, sigma);
    let centre = (mean - n0 as f64).round() as i64;
    let spread = var.sqrt().ceil() as i64;
    let walk = |start: i64, step: i64, stop: i64| {
        let mut k = start;
        let mut quiet = 0;
        let mut last = start;
        while quiet < 20 && k != stop {
            if negligible(k) {
                quiet += 1;
            } else {
                quiet = 0;
                last = k;
            }
            k += step;
        }
        last
    };
    let lo_stop = -(n0 as i64) - 1;
    let lo = walk(centre.max(-(n0 as i64)), -1, lo_stop)
        .min(centre - spread)
        .max(-(n0 as i64));
    let hi = walk(centre.max(-(n0 as i64)), 1, i64::MAX).max(centre + spread);
    (lo, hi)
}
