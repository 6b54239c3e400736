//! Quadrature counterparts of the closed-form amplitudes, distributions and
//! purities.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::quad::{integrate, integrate_real, truncation_radius, QuadOptions};
use crate::density::{DistributionKind, PhotonDistribution};
use crate::displacement::{element, SigmaValue};
use crate::entangled::{BetaValue, DetectionPoint};
use crate::error::{Error, Result};
use crate::specfun::{bessel_j, laguerre, log_ratio_factorials, Complex};

/// Envelope floor below which the half-line is cut.
const ENVELOPE_FLOOR: f64 = 1e-18;

/// Joint amplitude from the radial momentum integral
/// `int_0^inf x^{s+1} e^{-beta x^2} J_s(y x) L_m^s(b^2 x^2) dx`, `s = |k|`.
///
/// ```
/// use qentangle::entangled::{joint_amplitude_exact, DetectionPoint};
/// use qentangle::oracle::quad_joint_amplitude;
/// let p = DetectionPoint::new(2.0, 0.0, 0.0).unwrap();
/// let b = 2.0 / (2.0 * 20f64.sqrt());
/// let q = quad_joint_amplitude(1, 20, &p, b).unwrap();
/// let e = joint_amplitude_exact(1, 20, &p, b).unwrap().value;
/// assert!((q - e).norm() < 1e-8);
/// ```
pub fn quad_joint_amplitude(k: i64, n0: u64, point: &DetectionPoint, b: f64) -> Result<Complex> {
    quad_joint_amplitude_with(k, n0, point, b, QuadOptions::default(), 1.0)
}

/// As [`quad_joint_amplitude`] with explicit options and a multiplier on the
/// truncation radius.
pub fn quad_joint_amplitude_with(
    k: i64,
    n0: u64,
    point: &DetectionPoint,
    b: f64,
    opts: QuadOptions,
    radius_scale: f64,
) -> Result<Complex> {
    if k < -(n0 as i64) {
        return Err(Error::domain(
            "quad_joint_amplitude",
            format!("k = {k} < -n0 = -{n0}"),
        ));
    }
    let s = k.unsigned_abs();
    let m = if k >= 0 { n0 } else { n0 - s };
    let ln_ratio = if k >= 0 {
        log_ratio_factorials(n0, n0 + s)
    } else {
        log_ratio_factorials(n0 - s, n0)
    };
    let beta = BetaValue::new(point.theta, b).value;
    let y = point.x;
    let b2 = b * b;
    let radial = |t: f64| t.powi(s as i32 + 1) * laguerre(m, s, b2 * t * t);
    let envelope = |t: f64| radial(t).abs() * (-beta.re * t * t).exp();
    let r = radius_scale * truncation_radius(envelope, (40.0 / beta.re).sqrt(), ENVELOPE_FLOOR);
    let f = |t: f64| (-beta * t * t).exp() * (radial(t) * bessel_j(s as i64, y * t));
    let integral = integrate(f, 0.0, r, opts)?.value;
    let phase = Complex::from_polar(1.0, -(k as f64) * (point.phi + 0.5 * PI));
    let scale = b.powi(s as i32) * (0.5 * ln_ratio).exp() / PI.sqrt();
    Ok(phase * scale * integral)
}

/// Electron purity from the separated radial integral
/// `int_0^inf x L_n0(b^2 x^2)^2 e^{-(b^2 + 1/2) x^2} dx`.
pub fn quad_trace_purity(n0: u64, b: f64) -> Result<f64> {
    quad_trace_purity_with(n0, b, QuadOptions::default(), 1.0)
}

pub fn quad_trace_purity_with(
    n0: u64,
    b: f64,
    opts: QuadOptions,
    radius_scale: f64,
) -> Result<f64> {
    let b2 = b * b;
    let a = b2 + 0.5;
    let f = |t: f64| t * laguerre(n0, 0, b2 * t * t).powi(2) * (-a * t * t).exp();
    let r = radius_scale * truncation_radius(|t| f(t).abs(), (40.0 / a).sqrt(), ENVELOPE_FLOOR);
    integrate_real(f, 0.0, r, opts)
}

/// Large-occupation purity `int_0^inf x J_0(drive x)^2 e^{-x^2/2} dx`.
pub fn quad_trace_purity_asymptotic(drive: f64) -> Result<f64> {
    let r = truncation_radius(|t| t * (-0.5 * t * t).exp(), 9.0, ENVELOPE_FLOOR);
    integrate_real(
        |t| t * bessel_j(0, drive * t).powi(2) * (-0.5 * t * t).exp(),
        0.0,
        r,
        QuadOptions::default(),
    )
}

/// Weight `P_k = int_0^inf 2x e^{-x^2} |<n0+k| D(sigma(b x)) |n0>|^2 dx`.
pub fn quad_photon_weight(k: i64, n0: u64, b: f64) -> Result<f64> {
    let f = |t: f64| {
        let el = element(k, n0, SigmaValue::from_momentum(b, t, 0.0))
            .map(|v| v.norm_sqr())
            .unwrap_or(0.0);
        2.0 * t * (-t * t).exp() * el
    };
    let r = truncation_radius(|t| 2.0 * t * (-t * t).exp(), 6.0, ENVELOPE_FLOOR);
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-12,
        ..QuadOptions::default()
    };
    integrate_real(f, 0.0, r, opts)
}

/// Photon distribution with every weight from direct quadrature. The range
/// grows outward from `k = 0` until 20 consecutive weights on each side fall
/// below `1e-18`.
///
/// ```
/// use qentangle::density::photon_dist_exact;
/// use qentangle::oracle::sum_oracle_distribution;
/// let q = sum_oracle_distribution(4, 0.3).unwrap();
/// let e = photon_dist_exact(4, 0.3, None).unwrap();
/// assert!((q.get(1) - e.get(1)).abs() < 1e-9);
/// ```
pub fn sum_oracle_distribution(n0: u64, b: f64) -> Result<PhotonDistribution> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::domain(
            "sum_oracle_distribution",
            format!("b must be > 0, got {b}"),
        ));
    }
    const BLOCK: i64 = 16;
    const RUN: usize = 20;
    let block = |lo: i64, hi: i64| -> Result<Vec<f64>> {
        (lo..=hi)
            .into_par_iter()
            .map(|k| quad_photon_weight(k, n0, b))
            .collect()
    };
    let quiet_run = |w: &[f64]| w.len() >= RUN && w.iter().take(RUN).all(|&v| v < ENVELOPE_FLOOR);
    let mut upper = block(0, BLOCK - 1)?;
    while !quiet_run(&upper.iter().rev().copied().collect::<Vec<_>>()) {
        let start = upper.len() as i64;
        upper.extend(block(start, start + BLOCK - 1)?);
    }
    let floor = -(n0 as i64);
    let mut lower: Vec<f64> = Vec::new();
    loop {
        let done = lower.len() as i64;
        let hi = -1 - done;
        if hi < floor || quiet_run(&lower.iter().rev().copied().collect::<Vec<_>>()) {
            break;
        }
        let lo = (hi - BLOCK + 1).max(floor);
        let mut fresh = block(lo, hi)?;
        fresh.reverse();
        lower.extend(fresh);
    }
    let k_min = -(lower.len() as i64);
    let weights: Vec<f64> = lower.into_iter().rev().chain(upper).collect();
    Ok(PhotonDistribution::new(
        k_min,
        weights,
        DistributionKind::Quadrature { n0, b },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{purity_electron_exact, purity_photon};

    #[test]
    fn weber_first_integral() {
        let p = DetectionPoint::new(1.7, 0.0, 0.6).unwrap();
        let a = quad_joint_amplitude(0, 3, &p, 0.0).unwrap();
        let d = Complex::new(1.0, 0.6);
        let expect = (-(1.7f64 * 1.7) / (2.0 * d)).exp() / (d * PI.sqrt());
        assert!((a - expect).norm() < 1e-12);
    }

    #[test]
    fn off_axis_channel_vanishes_at_origin() {
        let p = DetectionPoint::new(0.0, 0.0, 0.0).unwrap();
        assert!(quad_joint_amplitude(2, 5, &p, 0.4).unwrap().norm() < 1e-300);
    }

    #[test]
    fn purity_limits() {
        assert!((quad_trace_purity(7, 1e-9).unwrap() - 1.0).abs() < 1e-12);
        let b: f64 = 0.3;
        let c = 1.0 / (2.0 * b * b);
        assert!((quad_trace_purity(0, b).unwrap() - c / (1.0 + c)).abs() < 1e-12);
        assert!(
            (quad_trace_purity(5, b).unwrap() - purity_electron_exact(5, b).unwrap()).abs() < 1e-10
        );
        assert!((quad_trace_purity_asymptotic(2.0).unwrap() - purity_photon(2.0)).abs() < 1e-12);
    }

    #[test]
    fn oracle_distribution_is_normalized() {
        let d = sum_oracle_distribution(6, 0.4).unwrap();
        assert!(d.norm_defect < 1e-9, "{}", d.norm_defect);
        assert_eq!(d.k_min, -6);
    }
}
