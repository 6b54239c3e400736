//! Orthogonal polynomials by three-term recurrence in the degree.
//!
//! Degrees above [`DD_THRESHOLD`] run in double-double arithmetic. Every
//! evaluator has a log-scaled form so large degrees never overflow.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::dd::{Dd, DdComplex};
use super::scaled::LogScaled;

/// Degree above which recurrences switch to double-double accumulation.
pub const DD_THRESHOLD: u64 = 10_000;

const RESCALE_EXP: i32 = 600;

trait Field: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_f64(x: f64) -> Self;
    fn mul_f64(self, b: f64) -> Self;
    fn div_f64(self, b: f64) -> Self;
    fn mag(self) -> f64;
    fn scale_pow2(self, e: i32) -> Self;
    fn to_log(self) -> LogScaled;
}

impl Field for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn mul_f64(self, b: f64) -> Self {
        self * b
    }
    fn div_f64(self, b: f64) -> Self {
        self / b
    }
    fn mag(self) -> f64 {
        self.abs()
    }
    fn scale_pow2(self, e: i32) -> Self {
        self * 2f64.powi(e)
    }
    fn to_log(self) -> LogScaled {
        LogScaled::from_real(self)
    }
}

impl Field for Complex64 {
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn mul_f64(self, b: f64) -> Self {
        self * b
    }
    fn div_f64(self, b: f64) -> Self {
        self / b
    }
    fn mag(self) -> f64 {
        self.re.abs() + self.im.abs()
    }
    fn scale_pow2(self, e: i32) -> Self {
        self * 2f64.powi(e)
    }
    fn to_log(self) -> LogScaled {
        LogScaled::from_complex(self)
    }
}

impl Field for Dd {
    fn from_f64(x: f64) -> Self {
        Dd::from(x)
    }
    fn mul_f64(self, b: f64) -> Self {
        self * b
    }
    fn div_f64(self, b: f64) -> Self {
        Dd::div_f64(self, b)
    }
    fn mag(self) -> f64 {
        self.hi.abs()
    }
    fn scale_pow2(self, e: i32) -> Self {
        Dd::scale_pow2(self, e)
    }
    fn to_log(self) -> LogScaled {
        LogScaled::from_real(self.to_f64())
    }
}

impl Field for DdComplex {
    fn from_f64(x: f64) -> Self {
        DdComplex {
            re: Dd::from(x),
            im: Dd::ZERO,
        }
    }
    fn mul_f64(self, b: f64) -> Self {
        DdComplex::mul_f64(self, b)
    }
    fn div_f64(self, b: f64) -> Self {
        DdComplex::div_f64(self, b)
    }
    fn mag(self) -> f64 {
        self.norm_l1()
    }
    fn scale_pow2(self, e: i32) -> Self {
        DdComplex::scale_pow2(self, e)
    }
    fn to_log(self) -> LogScaled {
        LogScaled::from_complex(self.to_complex())
    }
}

/// Runs `p_k = step(k, p_{k-1}, p_{k-2})` for `k = 2..=n` with rescaling.
fn recur<T: Field>(n: u64, p0: T, p1: T, step: impl Fn(u64, T, T) -> T) -> Rescaled<T> {
    if n == 0 {
        return Rescaled {
            value: p0,
            log_offset: 0.0,
        };
    }
    let (mut prev, mut cur) = (p0, p1);
    let mut log_offset = 0.0;
    let big = 2f64.powi(RESCALE_EXP);
    for k in 2..=n {
        let next = step(k, cur, prev);
        prev = cur;
        cur = next;
        let m = cur.mag().max(prev.mag());
        if m > big {
            cur = cur.scale_pow2(-RESCALE_EXP);
            prev = prev.scale_pow2(-RESCALE_EXP);
            log_offset += RESCALE_EXP as f64 * std::f64::consts::LN_2;
        } else if m < 1.0 / big && m > 0.0 {
            cur = cur.scale_pow2(RESCALE_EXP);
            prev = prev.scale_pow2(RESCALE_EXP);
            log_offset -= RESCALE_EXP as f64 * std::f64::consts::LN_2;
        }
    }
    Rescaled {
        value: cur,
        log_offset,
    }
}

/// Recurrence result `value * exp(log_offset)`.
struct Rescaled<T> {
    value: T,
    log_offset: f64,
}

impl<T: Field> Rescaled<T> {
    fn log(self) -> LogScaled {
        self.value.to_log().scale_log(self.log_offset)
    }
}

impl Rescaled<f64> {
    fn plain(self) -> f64 {
        if self.log_offset == 0.0 {
            self.value
        } else {
            self.log().to_f64_saturating()
        }
    }
}

fn laguerre_generic<T: Field>(n: u64, s: u64, x: T) -> Rescaled<T> {
    let sf = s as f64;
    let p1 = T::from_f64(1.0 + sf) - x;
    recur(n, T::from_f64(1.0), p1, |k, cur, prev| {
        let km = (k - 1) as f64;
        let a = T::from_f64(2.0 * km + 1.0 + sf) - x;
        (a * cur - prev.mul_f64(km + sf)).div_f64(km + 1.0)
    })
}

/// Generalized Laguerre polynomial `L_n^s(x)` in log-scaled form.
pub fn laguerre_log(n: u64, s: u64, x: f64) -> LogScaled {
    if n > DD_THRESHOLD {
        laguerre_generic(n, s, Dd::from(x)).log()
    } else {
        laguerre_generic(n, s, x).log()
    }
}

/// Generalized Laguerre polynomial `L_n^s(x)`; saturates to `±inf` on overflow.
///
/// ```
/// use qentangle::specfun::laguerre;
/// assert_eq!(laguerre(0, 3, 0.7), 1.0);
/// assert!((laguerre(1, 3, 0.7) - 3.3).abs() < 1e-15);
/// ```
pub fn laguerre(n: u64, s: u64, x: f64) -> f64 {
    if n > DD_THRESHOLD {
        laguerre_log(n, s, x).to_f64_saturating()
    } else {
        laguerre_generic(n, s, x).plain()
    }
}

/// `L_n^s(z)` for complex argument in log-scaled form.
pub fn laguerre_complex_log(n: u64, s: u64, z: Complex64) -> LogScaled {
    if n > DD_THRESHOLD {
        laguerre_generic(n, s, DdComplex::from(z)).log()
    } else {
        laguerre_generic(n, s, z).log()
    }
}

fn jacobi_generic<T: Field>(n: u64, alpha: u64, x: T) -> Rescaled<T> {
    let a = alpha as f64;
    let p1 = (x.mul_f64(a + 2.0) + T::from_f64(a)).div_f64(2.0);
    recur(n, T::from_f64(1.0), p1, |k, cur, prev| {
        let k = k as f64;
        let t = 2.0 * k + a;
        let lead = x.mul_f64(t).mul_f64(t - 2.0) + T::from_f64(a * a);
        let num =
            lead * cur.mul_f64(t - 1.0) - prev.mul_f64(2.0 * (k + a - 1.0) * (k - 1.0)).mul_f64(t);
        num.div_f64(2.0 * k).div_f64(k + a).div_f64(t - 2.0)
    })
}

/// Jacobi polynomial `P_n^{(alpha, 0)}(x)` in log-scaled form.
pub fn jacobi_p_log(n: u64, alpha: u64, x: f64) -> LogScaled {
    if n > DD_THRESHOLD {
        jacobi_generic(n, alpha, Dd::from(x)).log()
    } else {
        jacobi_generic(n, alpha, x).log()
    }
}

/// Rounding `1 + delta` costs a relative `eps / delta` in `delta`, which the
/// polynomial amplifies by up to `n^2 delta`.
fn needs_dd_one_plus(n: u64, delta: f64) -> bool {
    n > DD_THRESHOLD || (n > 16 && delta.abs() < 1.0)
}

/// `P_n^{(alpha, 0)}(1 + delta)`, keeping `delta` to full precision.
pub fn jacobi_p_log_one_plus(n: u64, alpha: u64, delta: f64) -> LogScaled {
    if needs_dd_one_plus(n, delta) {
        jacobi_generic(n, alpha, Dd::one_plus(delta)).log()
    } else {
        jacobi_generic(n, alpha, 1.0 + delta).log()
    }
}

/// Jacobi polynomial `P_n^{(alpha, 0)}(x)`; saturates on overflow.
pub fn jacobi_p(n: u64, alpha: u64, x: f64) -> f64 {
    if n > DD_THRESHOLD {
        jacobi_p_log(n, alpha, x).to_f64_saturating()
    } else {
        jacobi_generic(n, alpha, x).plain()
    }
}

fn legendre_generic<T: Field>(n: u64, x: T) -> Rescaled<T> {
    recur(n, T::from_f64(1.0), x, |k, cur, prev| {
        let k = k as f64;
        ((x * cur).mul_f64(2.0 * k - 1.0) - prev.mul_f64(k - 1.0)).div_f64(k)
    })
}

/// Legendre polynomial `P_n(x)` in log-scaled form.
pub fn legendre_p_log(n: u64, x: f64) -> LogScaled {
    if n > DD_THRESHOLD {
        legendre_generic(n, Dd::from(x)).log()
    } else {
        legendre_generic(n, x).log()
    }
}

/// `P_n(1 + delta)`, keeping `delta` to full precision.
pub fn legendre_p_log_one_plus(n: u64, delta: f64) -> LogScaled {
    if needs_dd_one_plus(n, delta) {
        legendre_generic(n, Dd::one_plus(delta)).log()
    } else {
        legendre_generic(n, 1.0 + delta).log()
    }
}

/// Legendre polynomial `P_n(x)`; saturates on overflow.
pub fn legendre_p(n: u64, x: f64) -> f64 {
    if n > DD_THRESHOLD {
        legendre_p_log(n, x).to_f64_saturating()
    } else {
        legendre_generic(n, x).plain()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!(laguerre(0, 2, 5.0), 1.0);
        let x = 0.37;
        let l2 = 0.5 * (x * x - 2.0 * (2.0 + 2.0) * x + (2.0 + 1.0) * (2.0 + 2.0));
        assert!((laguerre(2, 2, x) - l2).abs() < 1e-15);
        assert_eq!(legendre_p(0, 3.0), 1.0);
        assert_eq!(legendre_p(1, 3.0), 3.0);
        assert_eq!(jacobi_p(0, 4, 2.0), 1.0);
    }

    #[test]
    fn jacobi_degree_two_explicit() {
        // P_2^{(1,0)}(x) = (5 x^2 + 2 x - 1) / 2
        let x = 3.0;
        let expect = (5.0 * x * x + 2.0 * x - 1.0) / 2.0;
        assert!((jacobi_p(2, 1, x) - expect).abs() < 1e-13);
    }

    #[test]
    fn legendre_is_jacobi_alpha_zero() {
        for n in 0..12 {
            let a = legendre_p(n, 1.2);
            let b = jacobi_p(n, 0, 1.2);
            assert!((a - b).abs() < 1e-14 * a.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn double_double_path_agrees_at_threshold() {
        let n = DD_THRESHOLD;
        let x = 3.7e-5;
        let plain = laguerre_generic(n, 2, x).log();
        let dd = laguerre_generic(n, 2, Dd::from(x)).log();
        assert!((plain.log_magnitude - dd.log_magnitude).abs() < 1e-9);
        assert_eq!(plain.phase.re.signum(), dd.phase.re.signum());
        let z = Complex64::new(2.1e-4, -3.0e-4);
        let plain = laguerre_generic(n, 1, z).log();
        let dd = laguerre_generic(n, 1, DdComplex::from(z)).log();
        assert!((plain.log_magnitude - dd.log_magnitude).abs() < 1e-9);
        assert!((plain.phase - dd.phase).norm() < 1e-9);
    }

    #[test]
    fn large_degree_does_not_overflow() {
        let v = legendre_p_log(200_000, 1.5);
        assert!(v.log_magnitude.is_finite() && v.log_magnitude > 700.0);
        assert_eq!(v.phase.re, 1.0);
        let w = jacobi_p_log(5_000, 3, -1.5);
        assert!(w.log_magnitude.is_finite());
    }

    #[test]
    fn one_plus_form_matches_plain_argument() {
        let d = 0.125;
        let a = jacobi_p_log_one_plus(40, 2, d);
        let b = jacobi_p_log(40, 2, 1.0 + d);
        assert!((a.log_magnitude - b.log_magnitude).abs() < 1e-13);
        let a = legendre_p_log_one_plus(40_000, 1e-9);
        let b = legendre_generic(40_000, 1.0 + 1e-9).log();
        assert!((a.log_magnitude - b.log_magnitude).abs() < 1e-6);
    }
}
