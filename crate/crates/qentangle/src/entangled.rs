//! Joint photon-electron detection amplitudes and the position-represented
//! entangled state.
//!
//! All coordinates are dimensionless: `x = r/w`, `theta = t/tau`. Amplitudes
//! carry an implicit physical factor `1/w`, probabilities `1/w^2`.

use std::f64::consts::{PI, TAU};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::displacement::ErrorTag;
use crate::error::{Error, Result};
use crate::specfun::{
    bessel_i_scaled, bessel_i_scaled_seq, laguerre_complex_log, ln_1p_complex,
    log_ratio_factorials, Complex, LogScaled,
};

/// Dimensionless detection coordinates of the electron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionPoint {
    /// Radial distance over packet width.
    pub x: f64,
    /// Azimuth in `[0, 2 pi)`.
    pub phi: f64,
    /// Time over the spreading time.
    pub theta: f64,
}

impl DetectionPoint {
    pub fn new(x: f64, phi: f64, theta: f64) -> Result<Self> {
        if !(x.is_finite() && x >= 0.0) || !phi.is_finite() || !theta.is_finite() {
            return Err(Error::domain(
                "DetectionPoint::new",
                format!("need finite x >= 0, phi, theta; got ({x}, {phi}, {theta})"),
            ));
        }
        Ok(DetectionPoint {
            x,
            phi: phi.rem_euclid(TAU),
            theta,
        })
    }

    /// Point on the `phi = 0` axis.
    pub fn radial(x: f64, theta: f64) -> Result<Self> {
        Self::new(x, 0.0, theta)
    }
}

/// How an amplitude was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeResult {
    pub value: Complex,
    pub k: i64,
    pub method: Method,
    pub error_tag: ErrorTag,
}

/// `beta = (1 + i theta + b^2) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaValue {
    pub value: Complex,
}

impl BetaValue {
    pub fn new(theta: f64, b: f64) -> Self {
        BetaValue {
            value: Complex::new(0.5 * (1.0 + b * b), 0.5 * theta),
        }
    }
}

/// `gamma = drive * x / (1 + i theta)`.
pub fn gamma_of(point: &DetectionPoint, drive: f64) -> Complex {
    Complex::new(drive * point.x, 0.0) / Complex::new(1.0, point.theta)
}

fn log_packet_factor(point: &DetectionPoint, drive: f64) -> Complex {
    let denom = Complex::new(1.0, point.theta);
    -0.5 * PI.ln() - denom.ln() - (drive * drive + point.x * point.x) / (2.0 * denom)
}

/// Free Gaussian packet factor `psi_g(x, theta)`.
pub fn packet_factor(point: &DetectionPoint, drive: f64) -> Complex {
    log_packet_factor(point, drive).exp()
}

/// `(-i)^k e^{-i k phi}`.
fn channel_phase(k: i64, phi: f64) -> Complex {
    Complex::from_polar(1.0, -(k as f64) * (phi + 0.5 * PI))
}

/// `psi_g * e^{|Re gamma|}`, bounded by `1/sqrt(pi)`.
fn balanced_packet(point: &DetectionPoint, drive: f64) -> Complex {
    (log_packet_factor(point, drive) + gamma_of(point, drive).re.abs()).exp()
}

/// Large-occupation joint amplitude `(-i)^k e^{-ik phi} psi_g I_k(gamma)`.
///
/// ```
/// use qentangle::entangled::{joint_amplitude_asymptotic, DetectionPoint};
/// let p = DetectionPoint::new(2.0, 0.3, 0.0).unwrap();
/// let a = joint_amplitude_asymptotic(1, &p, 2.0).value.norm();
/// let b = joint_amplitude_asymptotic(-1, &p, 2.0).value.norm();
/// assert!((a - b).abs() < 1e-16);
/// ```
pub fn joint_amplitude_asymptotic(k: i64, point: &DetectionPoint, drive: f64) -> AmplitudeResult {
    let gamma = gamma_of(point, drive);
    let value =
        channel_phase(k, point.phi) * balanced_packet(point, drive) * bessel_i_scaled(k, gamma);
    AmplitudeResult {
        value,
        k,
        method: Method::Asymptotic,
        error_tag: ErrorTag::InverseN0Pow34,
    }
}

/// Exact joint amplitude for occupation `n0` and per-photon coupling `b`.
pub fn joint_amplitude_exact(
    k: i64,
    n0: u64,
    point: &DetectionPoint,
    b: f64,
) -> Result<AmplitudeResult> {
    if k < -(n0 as i64) {
        return Err(Error::domain(
            "joint_amplitude_exact",
            format!("k = {k} < -n0 = -{n0}"),
        ));
    }
    let s = k.unsigned_abs();
    let y = point.x;
    let beta = BetaValue::new(point.theta, b).value;
    let zero = || AmplitudeResult {
        value: Complex::new(0.0, 0.0),
        k,
        method: Method::Exact,
        error_tag: ErrorTag::None,
    };
    if s > 0 && b * y == 0.0 {
        return Ok(zero());
    }
    let m = if k >= 0 { n0 } else { n0 - s };
    let ratio = if k >= 0 {
        log_ratio_factorials(n0, n0 + s)
    } else {
        log_ratio_factorials(n0 - s, n0)
    };
    let prefactor = channel_phase(k, point.phi) / (PI.sqrt() * 2.0 * beta);
    let power = if s == 0 {
        LogScaled::ONE
    } else {
        LogScaled::from_complex(b * y / (2.0 * beta)).powu(s)
    };
    let occupation = if b == 0.0 {
        LogScaled::ONE
    } else {
        LogScaled::exp(m as f64 * ln_1p_complex(-b * b / beta))
    };
    let arg = b * b * y * y / (4.0 * beta * (b * b - beta));
    let value = LogScaled::from_complex(prefactor)
        * power
        * LogScaled::exp(-y * y / (4.0 * beta))
        * occupation
        * laguerre_complex_log(m, s, arg)
        * LogScaled::new(0.5 * ratio, Complex::new(1.0, 0.0));
    Ok(AmplitudeResult {
        value: value.to_complex()?,
        k,
        method: Method::Exact,
        error_tag: ErrorTag::None,
    })
}

/// Half-width of the numerically significant photon-number band.
pub fn significant_band(gamma: Complex) -> i64 {
    let g = gamma.norm();
    g.ceil() as i64 + 40 + 10 * (g + 1.0).sqrt().ceil() as i64
}

/// Expansion coefficients of the large-occupation entangled state at one
/// detection point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XiCoefficients {
    pub k_start: i64,
    pub values: Vec<Complex>,
    /// `sum_k |coefficient|^2` over the range.
    pub photon_norm: f64,
    /// `ln |kappa'|` with `|kappa'|^2 sum_k |I_k(gamma)|^2 = 1` over the range.
    pub log_kappa_prime: f64,
    /// Fraction of `sum_k |I_k(gamma)|^2` lying outside the range.
    pub tail_estimate: f64,
    pub warning: Option<String>,
}

impl XiCoefficients {
    pub fn get(&self, k: i64) -> Option<Complex> {
        usize::try_from(k - self.k_start)
            .ok()
            .and_then(|i| self.values.get(i).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.k_start + i as i64, *v))
    }
}

/// Coefficients `psi_g (-i)^k e^{-ik phi} I_k(gamma)` for `k` in `k_range`.
pub fn xi_coefficients(
    point: &DetectionPoint,
    drive: f64,
    k_range: RangeInclusive<i64>,
) -> XiCoefficients {
    let gamma = gamma_of(point, drive);
    let (lo, hi) = (*k_range.start(), *k_range.end());
    let kmax = lo.unsigned_abs().max(hi.unsigned_abs());
    let scaled = bessel_i_scaled_seq(kmax, gamma);
    let packet = balanced_packet(point, drive);
    let values: Vec<Complex> = k_range
        .clone()
        .map(|k| channel_phase(k, point.phi) * packet * scaled[k.unsigned_abs() as usize])
        .collect();
    let bessel_mass: f64 = k_range
        .map(|k| scaled[k.unsigned_abs() as usize].norm_sqr())
        .sum();
    let re = gamma.re.abs();
    let total = bessel_i_scaled(0, Complex::new(2.0 * re, 0.0)).re;
    let tail_estimate = if total > 0.0 {
        (1.0 - bessel_mass / total).max(0.0)
    } else {
        0.0
    };
    let warning = (tail_estimate > 1e-10).then(|| {
        format!("k range [{lo}, {hi}] misses a fraction {tail_estimate:.3e} of the photon norm")
    });
    XiCoefficients {
        k_start: lo,
        photon_norm: values.iter().map(|v| v.norm_sqr()).sum(),
        values,
        log_kappa_prime: -re - 0.5 * bessel_mass.ln(),
        tail_estimate,
        warning,
    }
}

/// `|joint amplitude|^2` on an `(x, theta)` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityGrid {
    pub k: i64,
    pub drive: f64,
    pub x: Vec<f64>,
    pub theta: Vec<f64>,
    /// Row-major: `values[i * theta.len() + j]` is at `(x[i], theta[j])`.
    pub values: Vec<f64>,
    /// Physical factor omitted from `values`.
    pub density_unit: String,
}

impl ProbabilityGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.theta.len() + j]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

fn check_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.iter().any(|v| !v.is_finite()) || g.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain(
            "joint_probability_grid",
            format!("{name} grid must be finite and sorted"),
        ));
    }
    Ok(())
}

/// Evaluates `|joint_amplitude_asymptotic|^2` over `x_grid x theta_grid`,
/// parallel over rows with schedule-independent ordering.
pub fn joint_probability_grid(
    k: i64,
    x_grid: &[f64],
    theta_grid: &[f64],
    drive: f64,
) -> Result<ProbabilityGrid> {
    check_grid("x", x_grid)?;
    check_grid("theta", theta_grid)?;
    if x_grid.iter().any(|&x| x < 0.0) {
        return Err(Error::domain(
            "joint_probability_grid",
            "x grid must be >= 0",
        ));
    }
    let s = k.abs();
    let values = x_grid
        .par_iter()
        .flat_map_iter(|&x| {
            theta_grid.iter().map(move |&theta| {
                let p = DetectionPoint { x, phi: 0.0, theta };
                joint_amplitude_asymptotic(s, &p, drive).value.norm_sqr()
            })
        })
        .collect();
    Ok(ProbabilityGrid {
        k,
        drive,
        x: x_grid.to_vec(),
        theta: theta_grid.to_vec(),
        values,
        density_unit: "1/w^2".to_string(),
    })
}

/// Qualitative shape of a photon-number profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Monotonic,
    Oscillatory,
}

/// Classifies a profile `p_0, p_1, ...` of a `k <-> -k` symmetric
/// distribution.
///
/// The profile is mirrored (`p_{-1} = p_1`) so that a dip at `k = 0` counts
/// as a local minimum. Oscillatory iff some strict local minimum is followed
/// by a strict local maximum above `1e-12 * max`.
///
/// ```
/// use qentangle::entangled::{classify_shape, Shape};
/// assert_eq!(classify_shape(&[1.0, 0.5, 0.2, 0.1]), Shape::Monotonic);
/// assert_eq!(classify_shape(&[0.2, 0.5, 0.1, 0.3, 0.0]), Shape::Oscillatory);
/// ```
pub fn classify_shape(profile: &[f64]) -> Shape {
    if profile.len() < 2 {
        return Shape::Monotonic;
    }
    let ext: Vec<f64> = std::iter::once(profile[1])
        .chain(profile.iter().copied())
        .collect();
    let floor = 1e-12 * ext.iter().copied().fold(0.0, f64::max);
    let mut seen_min = false;
    for w in ext.windows(3) {
        let (a, m, c) = (w[0], w[1], w[2]);
        if m < a && m < c {
            seen_min = true;
        } else if seen_min && m > a && m > c && m > floor {
            return Shape::Oscillatory;
        }
    }
    Shape::Monotonic
}

/// `|joint amplitude|^2` for `k = 0..=kmax` at one point.
pub fn k_profile(point: &DetectionPoint, drive: f64, kmax: u64) -> Vec<f64> {
    let gamma = gamma_of(point, drive);
    let w = balanced_packet(point, drive).norm_sqr();
    bessel_i_scaled_seq(kmax, gamma)
        .into_iter()
        .map(|v| w * v.norm_sqr())
        .collect()
}

/// Shape of the profile at `(x, theta = s x)`.
pub fn shape_at(drive: f64, x: f64, s: f64) -> Shape {
    let point = DetectionPoint {
        x,
        phi: 0.0,
        theta: s * x,
    };
    let kmax = significant_band(gamma_of(&point, drive)) as u64;
    classify_shape(&k_profile(&point, drive, kmax))
}

/// Values of `s = theta/x` where the shape changes along the ray through
/// `x`, located on `s_grid` and refined by bisection.
pub fn shape_transitions(drive: f64, x: f64, s_grid: &[f64]) -> Vec<f64> {
    let shapes: Vec<Shape> = s_grid.par_iter().map(|&s| shape_at(drive, x, s)).collect();
    s_grid
        .windows(2)
        .zip(shapes.windows(2))
        .filter(|(_, sh)| sh[0] != sh[1])
        .map(|(s, sh)| {
            let (mut lo, mut hi) = (s[0], s[1]);
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                if shape_at(drive, x, mid) == sh[0] {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_reference_values() {
        let p = DetectionPoint::new(10.0, 0.0, 1.0).unwrap();
        assert!((gamma_of(&p, 4.0) - Complex::new(20.0, -20.0)).norm() < 1e-14);
        let p = DetectionPoint::new(2.0, 0.0, 0.0).unwrap();
        assert_eq!(gamma_of(&p, 2.0), Complex::new(4.0, 0.0));
        let p = DetectionPoint::new(0.0, 1.0, 3.0).unwrap();
        assert_eq!(gamma_of(&p, 2.0), Complex::new(0.0, 0.0));
    }

    #[test]
    fn packet_at_origin() {
        let p = DetectionPoint::new(0.0, 0.0, 0.0).unwrap();
        assert!((packet_factor(&p, 0.0).re - 1.0 / PI.sqrt()).abs() < 1e-16);
        let far = DetectionPoint::new(0.0, 0.0, 1e6).unwrap();
        assert!((packet_factor(&far, 0.0).norm() * 1e6 * PI.sqrt() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn off_axis_channels_vanish_at_origin() {
        let p = DetectionPoint::new(0.0, 0.0, 0.7).unwrap();
        assert_eq!(joint_amplitude_asymptotic(3, &p, 2.0).value.norm(), 0.0);
        assert_eq!(
            joint_amplitude_exact(2, 10, &p, 0.3).unwrap().value.norm(),
            0.0
        );
    }

    #[test]
    fn decoupled_exact_is_free_packet() {
        let p = DetectionPoint::new(1.3, 0.4, 0.9).unwrap();
        let a = joint_amplitude_exact(0, 12, &p, 0.0).unwrap().value;
        assert!((a - packet_factor(&p, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn domain_error_below_vacuum() {
        let p = DetectionPoint::new(1.0, 0.0, 0.0).unwrap();
        assert!(joint_amplitude_exact(-6, 5, &p, 0.2).is_err());
        assert!(DetectionPoint::new(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn phi_is_wrapped() {
        let p = DetectionPoint::new(1.0, -0.5, 0.0).unwrap();
        assert!((p.phi - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn xi_at_origin_is_single_channel() {
        let p = DetectionPoint::new(0.0, 0.0, 0.5).unwrap();
        let xi = xi_coefficients(&p, 2.0, -5..=5);
        for (k, v) in xi.iter() {
            assert_eq!(v.norm() > 0.0, k == 0);
        }
        assert!(xi.warning.is_none());
    }

    #[test]
    fn narrow_range_warns() {
        let p = DetectionPoint::new(3.0, 0.0, 0.0).unwrap();
        let xi = xi_coefficients(&p, 4.0, -2..=2);
        assert!(xi.warning.is_some());
        assert!(xi.tail_estimate > 0.1);
    }

    #[test]
    fn zero_drive_grid_is_zero_off_elastic() {
        let xs: Vec<f64> = (0..5).map(|i| i as f64).collect();
        let g = joint_probability_grid(2, &xs, &xs, 0.0).unwrap();
        assert!(g.values.iter().all(|&v| v == 0.0));
        assert!(joint_probability_grid(0, &[1.0, 0.5], &xs, 1.0).is_err());
    }

    #[test]
    fn shape_rules() {
        assert_eq!(classify_shape(&[5.0, 4.0, 3.0, 1.0]), Shape::Monotonic);
        assert_eq!(classify_shape(&[1.0, 2.0, 1.0]), Shape::Oscillatory);
        assert_eq!(classify_shape(&[1.0, 0.0, 1e-20, 0.0]), Shape::Monotonic);
    }
}
