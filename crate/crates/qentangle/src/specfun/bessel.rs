//! Bessel functions of integer order (complex argument) and of real order
//! (real argument).

use num_complex::Complex64;

use super::gamma::{log_factorial, recip_gamma_ln};
use super::scaled::LogScaled;
use crate::error::Result;

/// Radius below which the power series is used unconditionally.
const SERIES_RADIUS: f64 = 5.0;
/// Rescaling threshold during backward recurrence.
const BIG: f64 = 1e100;

#[inline]
fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(-1)^s` as `f64`.
#[inline]
fn parity(s: u64) -> f64 {
    if s % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Power series for `I_s(z)` (`sign = +1`) or `J_s(z)` (`sign = -1`).
fn series(s: u64, z: Complex64, sign: f64) -> LogScaled {
    if z == c(0.0) {
        return if s == 0 {
            LogScaled::ONE
        } else {
            LogScaled::ZERO
        };
    }
    let half = z / 2.0;
    let q = half * half * sign;
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut m = 0u64;
    loop {
        m += 1;
        term = term * q / ((m * (m + s)) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && m > 2 {
            break;
        }
        if m > 10_000 {
            break;
        }
    }
    let lead = LogScaled::new(
        s as f64 * half.norm().ln() - log_factorial(s),
        Complex64::from_polar(1.0, s as f64 * half.arg()),
    );
    lead * LogScaled::from_complex(sum)
}

fn use_series(s: u64, r: f64) -> bool {
    r <= SERIES_RADIUS || r * r <= 4.0 * (s as f64 + 1.0)
}

/// Backward three-term recurrence `f_{k-1} = (2k/z) f_k + sign * f_{k+1}`
/// started far above the requested orders.
///
/// Values are stored with a rescaling level so that tiny high-order values
/// survive in log form.
struct Backward {
    vals: Vec<Complex64>,
    level: Vec<u32>,
    top: u32,
}

impl Backward {
    fn run(kmax: u64, z: Complex64, sign: f64) -> Self {
        let top = (kmax as f64).max(z.norm());
        let n = (top + 40.0 + 10.0 * top.sqrt()).ceil() as usize;
        let mut vals = vec![c(0.0); n + 2];
        let mut level = vec![0u32; n + 2];
        vals[n] = c(1e-30);
        let inv = z.inv();
        let mut lvl = 0u32;
        let (mut f1, mut f0) = (c(0.0), vals[n]);
        for k in (1..=n).rev() {
            let mut fm = inv * (2.0 * k as f64) * f0 + f1 * sign;
            if fm.norm() > BIG {
                fm /= BIG;
                f0 /= BIG;
                lvl += 1;
            }
            vals[k - 1] = fm;
            level[k - 1] = lvl;
            f1 = f0;
            f0 = fm;
        }
        Backward {
            vals,
            level,
            top: lvl,
        }
    }

    /// Value at order `k` in the units of the final level.
    fn at(&self, k: usize) -> Complex64 {
        match self.top - self.level[k] {
            0 => self.vals[k],
            1 => self.vals[k] / BIG,
            2 => self.vals[k] / (BIG * BIG),
            _ => c(0.0),
        }
    }

    fn log_at(&self, k: usize) -> LogScaled {
        let d = (self.top - self.level[k]) as f64;
        LogScaled::from_complex(self.vals[k]).scale_log(-d * BIG.ln())
    }

    /// `f_0 + 2 sum_{k>=1} w_k f_k` in final-level units.
    fn weighted_sum(&self, weight: impl Fn(usize) -> Complex64) -> Complex64 {
        let mut s = c(0.0);
        for k in (1..self.vals.len()).rev() {
            s += weight(k) * self.at(k) * 2.0;
        }
        s + self.at(0)
    }
}

/// Backward recurrence for `e^{-z} I_k(z)` with `Re z >= 0`.
struct MillerI {
    rec: Backward,
    norm: Complex64,
}

impl MillerI {
    fn new(kmax: u64, z: Complex64) -> Self {
        let rec = Backward::run(kmax, z, 1.0);
        let norm = rec.weighted_sum(|_| c(1.0));
        MillerI { rec, norm }
    }

    fn scaled(&self, k: u64) -> Complex64 {
        self.rec.at(k as usize) / self.norm
    }

    fn log_scaled(&self, k: u64) -> LogScaled {
        self.rec.log_at(k as usize) * LogScaled::from_complex(self.norm.inv())
    }
}

/// `I_k(z)` in log-scaled form for any integer order.
pub fn bessel_i_int_log(k: i64, z: Complex64) -> LogScaled {
    let s = k.unsigned_abs();
    let r = z.norm();
    if r == 0.0 {
        return if s == 0 {
            LogScaled::ONE
        } else {
            LogScaled::ZERO
        };
    }
    if use_series(s, r) {
        return series(s, z, 1.0);
    }
    let (w, sgn) = if z.re < 0.0 {
        (-z, parity(s))
    } else {
        (z, 1.0)
    };
    let m = MillerI::new(s, w);
    LogScaled::exp(w) * m.log_scaled(s) * LogScaled::from_real(sgn)
}

/// Modified Bessel function `I_k(z)` of integer order.
///
/// Fails with a range error when the value overflows `f64`; use
/// [`bessel_i_int_log`] or [`bessel_i_scaled_seq`] in that regime.
///
/// ```
/// use qentangle::specfun::bessel_i_int;
/// use num_complex::Complex64;
/// let v = bessel_i_int(0, Complex64::new(2.5, 0.0)).unwrap();
/// assert!((v.re - 3.289_839_144_050_123).abs() < 1e-12);
/// ```
pub fn bessel_i_int(k: i64, z: Complex64) -> Result<Complex64> {
    bessel_i_int_log(k, z).to_complex()
}

/// `e^{-|Re z|} I_k(z)` for `k = 0..=kmax`; never overflows.
pub fn bessel_i_scaled_seq(kmax: u64, z: Complex64) -> Vec<Complex64> {
    let r = z.norm();
    if r == 0.0 {
        let mut v = vec![c(0.0); kmax as usize + 1];
        v[0] = c(1.0);
        return v;
    }
    if r <= SERIES_RADIUS {
        let shift = -z.re.abs();
        return (0..=kmax)
            .map(|s| {
                series(s, z, 1.0)
                    .scale_log(shift)
                    .to_complex()
                    .unwrap_or(c(0.0))
            })
            .collect();
    }
    let (w, flip) = if z.re < 0.0 { (-z, true) } else { (z, false) };
    let m = MillerI::new(kmax, w);
    let rot = Complex64::from_polar(1.0, w.im);
    (0..=kmax)
        .map(|s| {
            let v = rot * m.scaled(s);
            if flip {
                v * parity(s)
            } else {
                v
            }
        })
        .collect()
}

/// `e^{-|Re z|} I_k(z)` for a single integer order.
pub fn bessel_i_scaled(k: i64, z: Complex64) -> Complex64 {
    bessel_i_int_log(k, z)
        .scale_log(-z.re.abs())
        .to_complex()
        .unwrap_or(c(0.0))
}

/// Bessel function `J_k(x)` of integer order and real argument.
///
/// ```
/// use qentangle::specfun::bessel_j;
/// assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-14);
/// assert!((bessel_j(-1, 1.0) + bessel_j(1, 1.0)).abs() < 1e-16);
/// ```
pub fn bessel_j(k: i64, x: f64) -> f64 {
    let s = k.unsigned_abs();
    let sign = if k < 0 { parity(s) } else { 1.0 } * if x < 0.0 { parity(s) } else { 1.0 };
    let a = x.abs();
    if use_series(s, a) {
        return sign * series(s, c(a), -1.0).to_f64_saturating();
    }
    sign * bessel_j_seq_abs(s, a)[s as usize]
}

/// `J_k(x)` for `k = 0..=kmax` and `x >= 0` by normalized backward recurrence.
fn bessel_j_seq_abs(kmax: u64, x: f64) -> Vec<f64> {
    let rec = Backward::run(kmax, c(x), -1.0);
    let norm = rec.weighted_sum(|k| c(if k % 2 == 0 { 1.0 } else { 0.0 }));
    (0..=kmax as usize).map(|k| (rec.at(k) / norm).re).collect()
}

/// `J_k(x)` for `k = 0..=kmax`.
pub fn bessel_j_seq(kmax: u64, x: f64) -> Vec<f64> {
    let a = x.abs();
    if a == 0.0 || a <= SERIES_RADIUS {
        return (0..=kmax as i64).map(|k| bessel_j(k, x)).collect();
    }
    let mut v = bessel_j_seq_abs(kmax, a);
    if x < 0.0 {
        v.iter_mut()
            .enumerate()
            .for_each(|(k, y)| *y *= parity(k as u64));
    }
    v
}

/// `J_k(w)` for complex argument via `J_k(w) = i^k I_k(-i w)`.
pub fn bessel_j_complex(k: i64, w: Complex64) -> Result<Complex64> {
    let ik = Complex64::i().powi(k.rem_euclid(4) as i32);
    Ok(ik * bessel_i_int(k, -Complex64::i() * w)?)
}

/// `I_nu(x)` for real order by the defining series, with the largest term
/// magnitude as a cancellation scale.
pub fn bessel_i_real_order_with_scale(nu: f64, x: f64) -> (f64, f64) {
    if nu == nu.floor() && nu < 0.0 {
        let v = series((-nu) as u64, c(x), 1.0).to_f64_saturating();
        return (v, v.abs());
    }
    let half = x / 2.0;
    let Some((lead_ln, lead_sign)) = recip_gamma_ln(nu + 1.0) else {
        return (0.0, 0.0);
    };
    let lead = lead_sign * (nu * half.ln() + lead_ln).exp();
    let q = half * half;
    let mut term = lead;
    let mut sum = lead;
    let mut scale = lead.abs();
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + nu));
        sum += term;
        scale = scale.max(term.abs());
        if m > half + 2.0 && term.abs() <= 1e-18 * scale {
            break;
        }
        if m > 5000.0 {
            break;
        }
    }
    (sum, scale)
}

/// `I_nu(x)` for real order and `x > 0`.
///
/// ```
/// use qentangle::specfun::bessel_i_real_order;
/// let x = 1.7_f64;
/// let closed = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sinh();
/// assert!((bessel_i_real_order(0.5, x) - closed).abs() < 1e-14);
/// ```
pub fn bessel_i_real_order(nu: f64, x: f64) -> f64 {
    bessel_i_real_order_with_scale(nu, x).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_i_int(0, c(0.0)).unwrap(), c(1.0));
        assert_eq!(bessel_i_int(3, c(0.0)).unwrap(), c(0.0));
        assert_eq!(bessel_j(0, 0.0), 1.0);
    }

    #[test]
    fn reference_values() {
        assert!((bessel_i_int(1, c(2.5)).unwrap().re - 2.516_716_245_288_700_6).abs() < 1e-13);
        let i0_20 = bessel_i_int(0, c(20.0)).unwrap().re;
        assert!((i0_20 / 43_558_282.559_553_534 - 1.0).abs() < 1e-13);
        let i5_50 = bessel_i_int(5, c(50.0)).unwrap().re;
        assert!((i5_50 / 2.278_548_307_911_281_5e20 - 1.0).abs() < 1e-12);
        assert!((bessel_j(0, 10.0) + 0.245_935_764_451_348_3).abs() < 1e-14);
        assert!((bessel_j(5, 30.0) + 0.143_240_295_512_077_06).abs() < 1e-13);
    }

    #[test]
    fn series_and_recurrence_agree_at_switch() {
        for &z in &[c(4.9), Complex64::new(3.0, 3.8), Complex64::new(0.5, -4.9)] {
            for k in 0..12 {
                let a = series(k, z, 1.0).to_complex().unwrap();
                let w = if z.re < 0.0 { -z } else { z };
                let b = MillerI::new(k, w).scaled(k) * w.exp();
                assert!(rel(b, a) < 1e-13, "k={k} z={z}");
            }
        }
    }

    #[test]
    fn half_integer_closed_form() {
        for &x in &[0.3, 2.0, 11.0, 40.0] {
            let v = bessel_i_real_order(-0.5, x);
            let closed = (2.0 / (PI * x)).sqrt() * x.cosh();
            assert!((v / closed - 1.0).abs() < 1e-13);
            let v = bessel_i_real_order(1.5, x);
            let closed = (2.0 / (PI * x)).sqrt() * (x.cosh() - x.sinh() / x);
            assert!((v / closed - 1.0).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn negative_integer_order_matches_positive() {
        let a = bessel_i_real_order(-3.0, 2.2);
        let b = bessel_i_int(3, c(2.2)).unwrap().re;
        assert!((a - b).abs() < 1e-15 * b);
    }

    #[test]
    fn real_order_agrees_with_integer_order() {
        for k in 0..6 {
            let a = bessel_i_real_order(k as f64, 7.5);
            let b = bessel_i_int(k, c(7.5)).unwrap().re;
            assert!((a / b - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn imaginary_axis_is_j() {
        for &y in &[6.0, 30.0, 200.0] {
            for k in [0i64, 1, 4, 17] {
                let ik = Complex64::i().powi(k as i32);
                let lhs = bessel_i_int(k, Complex64::new(0.0, y)).unwrap();
                let rhs = ik * bessel_j(k, y);
                assert!((lhs - rhs).norm() < 1e-12, "k={k} y={y}");
            }
        }
    }

    #[test]
    fn scaled_sequence_survives_overflow() {
        let z = c(2000.0);
        let seq = bessel_i_scaled_seq(3, z);
        let asym = 1.0 / (2.0 * PI * 2000.0).sqrt();
        assert!((seq[0].re / asym - 1.0).abs() < 1e-3);
        assert!(bessel_i_int(0, z).is_err());
        let lg = bessel_i_int_log(0, z);
        assert!((lg.log_magnitude - (2000.0 + asym.ln())).abs() < 1e-3);
    }

    #[test]
    fn left_half_plane_parity() {
        let z = Complex64::new(-12.0, 3.0);
        for k in 0..5i64 {
            let a = bessel_i_int(k, z).unwrap();
            let b = bessel_i_int(k, -z).unwrap() * parity(k as u64);
            assert!(rel(a, b) < 1e-14);
        }
        let seq = bessel_i_scaled_seq(4, z);
        for k in 0..5i64 {
            assert!(rel(seq[k as usize], bessel_i_scaled(k, z)) < 1e-12);
        }
    }

    #[test]
    fn tiny_high_orders_stay_log_representable() {
        let v = bessel_i_int_log(600, c(50.0));
        let expect = (1.297_078_897_583_820_5f64).ln() - 569.0 * 10f64.ln();
        assert!(
            (v.log_magnitude - expect).abs() < 1e-11,
            "{} vs {expect}",
            v.log_magnitude
        );
        let v = bessel_i_int_log(600, c(40.0));
        let expect = 6.376_741_214_409_785f64.ln() - 628.0 * 10f64.ln();
        assert!(
            (v.log_magnitude - expect).abs() < 1e-11,
            "{} vs {expect}",
            v.log_magnitude
        );
    }
}
