//! Reduced density operators of the photon and the electron, their
//! distributions, and entanglement measures. Entropies are in nats.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::displacement::{overlap_product, SigmaValue};
use crate::entangled::significant_band;
use crate::error::{Error, Result};
use crate::specfun::{
    bessel_i_scaled, bessel_i_scaled_seq, jacobi_p_log, jacobi_p_log_one_plus, legendre_p_log,
    legendre_p_log_one_plus, Complex, LogScaled,
};

/// Which closed form produced a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionKind {
    Exact { n0: u64, b: f64 },
    Asymptotic { q: f64 },
    Quadrature { n0: u64, b: f64 },
}

/// Weights over photon-number shifts `k`, stored contiguously from `k_min`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonDistribution {
    pub k_min: i64,
    pub weights: Vec<f64>,
    pub kind: DistributionKind,
    /// `|1 - sum of weights|`.
    pub norm_defect: f64,
    pub warning: Option<String>,
}

impl PhotonDistribution {
    pub(crate) fn new(k_min: i64, weights: Vec<f64>, kind: DistributionKind) -> Self {
        let norm_defect = (1.0 - weights.iter().sum::<f64>()).abs();
        let warning = (norm_defect > 1e-8)
            .then(|| format!("normalization defect {norm_defect:.3e}; extend the k range"));
        PhotonDistribution {
            k_min,
            weights,
            kind,
            norm_defect,
            warning,
        }
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.weights.len() as i64 - 1
    }

    pub fn get(&self, k: i64) -> f64 {
        usize::try_from(k - self.k_min)
            .ok()
            .and_then(|i| self.weights.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(i, w)| (self.k_min + i as i64, *w))
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, w)| k as f64 * w).sum()
    }

    pub fn purity(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum()
    }

    /// `-sum w ln w`.
    pub fn shannon(&self) -> f64 {
        self.weights
            .iter()
            .filter(|&&w| w > 0.0)
            .map(|w| -w * w.ln())
            .sum()
    }
}

/// `ln(1 + x)` and `ln|1 - x|` pair used by the exact weights.
fn exact_weight_log(k: i64, n0: u64, b: f64) -> Result<f64> {
    let s = k.unsigned_abs();
    let m = if k >= 0 { n0 } else { n0 - s };
    let b2 = b * b;
    let b4 = b2 * b2;
    let ln_plus = b2.ln_1p();
    let (ln_ratio, ratio_sign) = if b < 1.0 {
        ((-b2).ln_1p() - ln_plus, 1.0)
    } else {
        ((b2 - 1.0).ln() - ln_plus, -1.0)
    };
    let jac = if b < 1.0 {
        jacobi_p_log_one_plus(m, s, 2.0 * b4 / (1.0 - b4))
    } else {
        jacobi_p_log(m, s, (1.0 + b4) / (1.0 - b4))
    };
    let sign = jac.phase.re * if m % 2 == 1 { ratio_sign } else { 1.0 };
    let lw = 2.0 * s as f64 * b.ln() - (1.0 + s as f64) * ln_plus
        + m as f64 * ln_ratio
        + jac.log_magnitude;
    if sign.is_nan() || sign <= 0.0 || lw.is_nan() {
        return Err(Error::range(
            "photon_dist_exact",
            format!("non-positive weight at k = {k}"),
        ));
    }
    Ok(lw)
}

/// Exact photon-number distribution `P_k` for occupation `n0` and coupling `b`.
///
/// Without `k_range` the range grows until the normalization defect drops
/// below `1e-10`.
pub fn photon_dist_exact(
    n0: u64,
    b: f64,
    k_range: Option<RangeInclusive<i64>>,
) -> Result<PhotonDistribution> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::domain(
            "photon_dist_exact",
            format!("b must be > 0, got {b}"),
        ));
    }
    if (b - 1.0).abs() < 1e-12 {
        return Err(Error::singular(
            "photon_dist_exact",
            "b = 1; perturb b slightly",
        ));
    }
    let kind = DistributionKind::Exact { n0, b };
    let floor = -(n0 as i64);
    let eval = |lo: i64, hi: i64| -> Result<Vec<f64>> {
        (lo..=hi)
            .map(|k| exact_weight_log(k, n0, b).map(f64::exp))
            .collect()
    };
    if let Some(r) = k_range {
        let (lo, hi) = (*r.start(), *r.end());
        if lo < floor {
            return Err(Error::domain(
                "photon_dist_exact",
                format!("k = {lo} < -n0"),
            ));
        }
        return Ok(PhotonDistribution::new(lo, eval(lo, hi)?, kind));
    }
    let spread = (2.0 * n0 as f64 + 1.0) * b * b;
    let mut half = 10 + (8.0 * spread.sqrt()).ceil() as i64;
    let mut previous = f64::INFINITY;
    loop {
        let lo = (-half).max(floor);
        let d = PhotonDistribution::new(lo, eval(lo, half)?, kind);
        // Stop once widening no longer helps: the defect is then rounding.
        if d.norm_defect < 1e-10 || d.norm_defect > 0.5 * previous || half > 1_000_000 {
            return Ok(d);
        }
        previous = d.norm_defect;
        half *= 2;
    }
}

/// Large-occupation distribution `p_k = e^{-q} I_k(q)`.
///
/// ```
/// use qentangle::density::photon_dist_asymptotic;
/// let d = photon_dist_asymptotic(2.5, None).unwrap();
/// assert!((d.get(0) - 0.2700).abs() < 5e-5);
/// assert_eq!(d.get(1), d.get(-1));
/// ```
pub fn photon_dist_asymptotic(
    q: f64,
    k_range: Option<RangeInclusive<i64>>,
) -> Result<PhotonDistribution> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::domain(
            "photon_dist_asymptotic",
            format!("q must be >= 0, got {q}"),
        ));
    }
    let band = significant_band(Complex::new(q, 0.0));
    let r = k_range.unwrap_or(-band..=band);
    let kmax = r.start().unsigned_abs().max(r.end().unsigned_abs());
    let seq = bessel_i_scaled_seq(kmax, Complex::new(q, 0.0));
    let weights = r
        .clone()
        .map(|k| seq[k.unsigned_abs() as usize].re)
        .collect();
    Ok(PhotonDistribution::new(
        *r.start(),
        weights,
        DistributionKind::Asymptotic { q },
    ))
}

/// Von Neumann entropy of the photon field,
/// `q - e^{-q} [I_0 ln I_0 + 2 sum_{k>=1} I_k ln I_k]`.
pub fn von_neumann_photon(q: f64) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    let kmax = significant_band(Complex::new(q, 0.0)) as u64;
    let seq = bessel_i_scaled_seq(kmax, Complex::new(q, 0.0));
    let term = |s: f64| if s > 0.0 { s * (s.ln() + q) } else { 0.0 };
    let s0 = seq[0].re;
    let mut acc = term(s0);
    for (k, v) in seq.iter().enumerate().skip(1) {
        let t = term(v.re);
        acc += 2.0 * t;
        if k as f64 > q && t.abs() < 1e-16 * acc.abs() {
            break;
        }
    }
    q - acc
}

/// Photon purity `Tr P^2 = e^{-2q} I_0(2q)`.
pub fn purity_photon(q: f64) -> f64 {
    bessel_i_scaled(0, Complex::new(2.0 * q, 0.0)).re
}

/// Linear entropy of the photon field, `1 - e^{-2q} I_0(2q)`.
pub fn linear_entropy_photon(q: f64) -> f64 {
    1.0 - purity_photon(q)
}

/// Exact electron purity `Tr P_e^2` for occupation `n0` and coupling `b`.
///
/// With `c = 1/(2 b^2)`:
/// `c/(1+c) * (|1-c|/(1+c))^n0 * P_n0((1+c^2)/|1-c^2|)`.
pub fn purity_electron_exact(n0: u64, b: f64) -> Result<f64> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::domain(
            "purity_electron_exact",
            format!("b must be > 0, got {b}"),
        ));
    }
    let c = 1.0 / (2.0 * b * b);
    if (c - 1.0).abs() < 1e-12 {
        return Err(Error::singular(
            "purity_electron_exact",
            "2 b^2 = 1; perturb b slightly",
        ));
    }
    let (ln_r, delta) = if c > 1.0 {
        ((-2.0 / (c + 1.0)).ln_1p(), 2.0 / (c * c - 1.0))
    } else {
        ((-2.0 * c / (1.0 + c)).ln_1p(), 2.0 * c * c / (1.0 - c * c))
    };
    let leg = legendre_p_log_one_plus(n0, delta);
    let ln_pref = c.ln() - c.ln_1p();
    let v = LogScaled::new(ln_pref + n0 as f64 * ln_r, Complex::new(1.0, 0.0)) * leg;
    let p = v.to_f64()?;
    if !(p > 0.0 && p <= 1.0 + 1e-12) {
        return Err(Error::range(
            "purity_electron_exact",
            format!("purity {p} outside (0, 1]"),
        ));
    }
    Ok(p)
}

/// Exact linear entropy of the electron, `1 - Tr P_e^2`.
pub fn linear_entropy_electron_exact(n0: u64, b: f64) -> Result<f64> {
    purity_electron_exact(n0, b).map(|p| 1.0 - p)
}

/// The Legendre closed form `c (1-c)^n P_n[(1+c^2)/(1-c)]`, `c = 1/(2b^2)`,
/// exactly as commonly quoted. It disagrees with the radial integral it is
/// meant to evaluate (already at `n0 = 0` it gives `c` instead of
/// `c/(1+c)`); kept for mismatch reports only.
pub fn purity_as_quoted(n0: u64, b: f64) -> f64 {
    let c = 1.0 / (2.0 * b * b);
    let base = LogScaled::from_real(1.0 - c).powu(n0);
    let leg = legendre_p_log(n0, (1.0 + c * c) / (1.0 - c));
    (LogScaled::from_real(c) * base * leg).to_f64_saturating()
}

/// Kernel `<k1| P_e(theta) |k2>` of the electron's momentum density operator
/// in dimensionless momenta `k = w p / hbar`.
pub fn electron_momentum_density(
    p1: [f64; 2],
    p2: [f64; 2],
    n0: u64,
    b: f64,
    theta: f64,
) -> Complex {
    let sq = |k: [f64; 2]| k[0] * k[0] + k[1] * k[1];
    let (a1, a2) = (sq(p1), sq(p2));
    let weights = (-(a1 + a2) / 2.0).exp() / PI;
    let kinetic = Complex::from_polar(1.0, -0.5 * theta * (a1 - a2));
    let s1 = SigmaValue::from_vector(b, p1);
    let s2 = SigmaValue::from_vector(b, p2);
    weights * kinetic * overlap_product(n0, s1, s2)
}

fn ln_packet(r: f64, theta: f64, drive: f64) -> Complex {
    let d = Complex::new(1.0, theta);
    -0.5 * PI.ln() - d.ln() - (drive * drive + r * r) / (2.0 * d)
}

/// Large-occupation electron density kernel `F(r1, r2)` in dimensionless
/// positions, summed over all photon channels in closed form.
pub fn electron_position_density(x1: [f64; 2], x2: [f64; 2], theta: f64, drive: f64) -> Complex {
    let (r1, r2) = (x1[0].hypot(x1[1]), x2[0].hypot(x2[1]));
    let dphi = x2[1].atan2(x2[0]) - x1[1].atan2(x1[0]);
    let d = Complex::new(1.0, theta);
    let g1 = drive * r1 / d;
    let g2 = (drive * r2 / d).conj();
    let w = (g1 * g1 + g2 * g2 + 2.0 * g1 * g2 * dphi.cos()).sqrt();
    let log_pref = ln_packet(r1, theta, drive) + ln_packet(r2, theta, drive).conj() + w.re.abs();
    log_pref.exp() * bessel_i_scaled(0, w)
}

/// Diagonal of the large-occupation position density,
/// `e^{-(d^2+x^2)/(1+theta^2)} I_0(2 d x/(1+theta^2)) / (pi (1+theta^2))`.
pub fn position_distribution(x: f64, theta: f64, drive: f64) -> f64 {
    let t = 1.0 + theta * theta;
    let arg = 2.0 * drive * x / t;
    (-(drive - x).powi(2) / t).exp() / (PI * t) * bessel_i_scaled(0, Complex::new(arg, 0.0)).re
}

/// Entanglement measures for the large-occupation state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub von_neumann: f64,
    pub linear: f64,
    pub renyi2: f64,
    pub schmidt_number: f64,
    /// Exact electron linear entropy at finite `n0`, when requested.
    pub electron_linear_exact: Option<f64>,
}

/// Bundles the photon entropies at `q`, plus the exact electron linear
/// entropy when `n0` and `b` are both given.
///
/// ```
/// use qentangle::density::entropy_report;
/// let r = entropy_report(0.0, None, None).unwrap();
/// assert_eq!((r.von_neumann, r.linear, r.renyi2, r.schmidt_number), (0.0, 0.0, 0.0, 1.0));
/// ```
pub fn entropy_report(q: f64, n0: Option<u64>, b: Option<f64>) -> Result<EntropyReport> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::domain(
            "entropy_report",
            format!("q must be >= 0, got {q}"),
        ));
    }
    let purity = purity_photon(q);
    let electron_linear_exact = match (n0, b) {
        (Some(n), Some(b)) => Some(linear_entropy_electron_exact(n, b)?),
        _ => None,
    };
    Ok(EntropyReport {
        von_neumann: von_neumann_photon(q),
        linear: 1.0 - purity,
        renyi2: -purity.ln(),
        schmidt_number: 1.0 / purity,
        electron_linear_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoupled_limit_is_delta() {
        let d = photon_dist_exact(10, 1e-9, None).unwrap();
        assert!((d.get(0) - 1.0).abs() < 1e-15);
        let d = photon_dist_asymptotic(0.0, None).unwrap();
        assert_eq!(d.get(0), 1.0);
        assert_eq!(d.get(3), 0.0);
    }

    #[test]
    fn exact_normalization_reference() {
        let b = 2.0 / (2.0 * 30f64.sqrt());
        let d = photon_dist_exact(30, b, None).unwrap();
        assert!(d.norm_defect < 1e-10, "{}", d.norm_defect);
        assert!(d.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn strong_coupling_is_still_positive() {
        let d = photon_dist_exact(6, 1.7, None).unwrap();
        assert!(d.weights.iter().all(|&w| w > 0.0));
        assert!(d.norm_defect < 1e-10);
    }

    #[test]
    fn singular_couplings_rejected() {
        assert!(matches!(
            photon_dist_exact(5, 1.0, None),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            purity_electron_exact(5, 0.5f64.sqrt()),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn explicit_short_range_warns() {
        let d = photon_dist_exact(20, 0.4, Some(-1..=1)).unwrap();
        assert!(d.warning.is_some());
    }

    #[test]
    fn vacuum_purity() {
        let b = 0.8;
        let p = purity_electron_exact(0, b).unwrap();
        assert!((p - 1.0 / (1.0 + 2.0 * b * b)).abs() < 1e-15);
        assert!((purity_as_quoted(0, b) - 1.0 / (2.0 * b * b)).abs() < 1e-15);
    }

    #[test]
    fn linear_entropy_reference() {
        // I_0(4) = 11.301921952136330
        let expect = 1.0 - 11.301_921_952_136_33 * (-4.0f64).exp();
        assert!((linear_entropy_photon(2.0) - expect).abs() < 1e-14);
        assert!((expect - 0.7930).abs() < 1e-4);
        assert_eq!(linear_entropy_photon(0.0), 0.0);
    }

    #[test]
    fn momentum_diagonal_is_time_independent() {
        let k = [0.3, -1.1];
        let a = electron_momentum_density(k, k, 7, 0.4, 0.0);
        let b = electron_momentum_density(k, k, 7, 0.4, 9.0);
        let g2 = (-(0.09 + 1.21f64)).exp() / PI;
        assert!((a.re - g2).abs() < 1e-16 && a.im.abs() < 1e-16);
        assert!((a - b).norm() < 1e-16);
    }

    #[test]
    fn free_position_density_spreads() {
        for &theta in &[0.0, 2.0] {
            let t = 1.0 + theta * theta;
            let v = position_distribution(1.3, theta, 0.0);
            assert!((v - (-1.69 / t).exp() / (PI * t)).abs() < 1e-16);
        }
    }

    #[test]
    fn reduces_to_collinear_form() {
        let (theta, drive) = (0.7, 2.0);
        let (x1, x2) = (1.2, 2.5);
        let v = electron_position_density([x1, 0.0], [x2, 0.0], theta, drive);
        let t = 1.0 + theta * theta;
        let arg = Complex::new(drive * (x1 + x2), drive * theta * (x2 - x1)) / t;
        let i0 = crate::specfun::bessel_i_int(0, arg).unwrap();
        let expect = (-drive * drive / t).exp() / (PI * t)
            * Complex::new(-(x1 * x1 + x2 * x2), -theta * (x2 * x2 - x1 * x1))
                .scale(0.5 / t)
                .exp()
            * i0;
        assert!((v - expect).norm() < 1e-15);
    }
}
