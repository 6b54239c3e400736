//! Least-squares power-law fits.

use crate::error::{Error, Result};

/// Slope of `ln y` against `ln x`.
///
/// ```
/// let xs = [10.0, 100.0, 1000.0];
/// let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-0.75)).collect();
/// let s = qentangle::oracle::loglog_slope(&xs, &ys).unwrap();
/// assert!((s + 0.75).abs() < 1e-12);
/// ```
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::domain(
            "loglog_slope",
            "need two or more paired samples",
        ));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::domain(
            "loglog_slope",
            "samples must be finite and positive",
        ));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain(
            "loglog_slope",
            "abscissae must not all coincide",
        ));
    }
    Ok(sxy / sxx)
}
