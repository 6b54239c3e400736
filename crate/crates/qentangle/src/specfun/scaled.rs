use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `ln|x|` representable as a finite `f64`.
const LN_MAX: f64 = 709.782712893384;

/// A complex number stored as `phase * exp(log_magnitude)`.
///
/// Zero is `log_magnitude = -inf`. For real quantities the phase is `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaled {
    pub log_magnitude: f64,
    pub phase: Complex64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        log_magnitude: f64::NEG_INFINITY,
        phase: Complex64::new(1.0, 0.0),
    };
    pub const ONE: LogScaled = LogScaled {
        log_magnitude: 0.0,
        phase: Complex64::new(1.0, 0.0),
    };

    pub fn new(log_magnitude: f64, phase: Complex64) -> Self {
        LogScaled {
            log_magnitude,
            phase,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let r = z.norm();
        if r == 0.0 {
            LogScaled::ZERO
        } else {
            LogScaled {
                log_magnitude: r.ln(),
                phase: z / r,
            }
        }
    }

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 {
            LogScaled::ZERO
        } else {
            LogScaled {
                log_magnitude: x.abs().ln(),
                phase: Complex64::new(x.signum(), 0.0),
            }
        }
    }

    /// `exp(w)` for complex `w`.
    pub fn exp(w: Complex64) -> Self {
        LogScaled {
            log_magnitude: w.re,
            phase: Complex64::from_polar(1.0, w.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }

    pub fn powu(self, n: u64) -> Self {
        if n == 0 {
            return LogScaled::ONE;
        }
        LogScaled {
            log_magnitude: self.log_magnitude * n as f64,
            phase: Complex64::from_polar(1.0, self.phase.arg() * n as f64),
        }
    }

    /// Multiply by `exp(log_factor)`.
    pub fn scale_log(self, log_factor: f64) -> Self {
        LogScaled {
            log_magnitude: self.log_magnitude + log_factor,
            ..self
        }
    }

    pub fn to_complex(self) -> Result<Complex64> {
        if self.log_magnitude > LN_MAX {
            return Err(Error::range(
                "LogScaled::to_complex",
                format!("magnitude exp({:.3}) overflows f64", self.log_magnitude),
            ));
        }
        Ok(self.phase * self.log_magnitude.exp())
    }

    /// Real value; the imaginary part of the phase is discarded.
    pub fn to_f64(self) -> Result<f64> {
        self.to_complex().map(|z| z.re)
    }

    /// Real value saturating to `±inf` on overflow.
    pub fn to_f64_saturating(self) -> f64 {
        self.phase.re * self.log_magnitude.exp()
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;
    fn mul(self, o: LogScaled) -> LogScaled {
        LogScaled {
            log_magnitude: self.log_magnitude + o.log_magnitude,
            phase: self.phase * o.phase,
        }
    }
}

impl From<Complex64> for LogScaled {
    fn from(z: Complex64) -> Self {
        LogScaled::from_complex(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_complex() {
        let z = Complex64::new(-3.5, 1.25e-3);
        let back = LogScaled::from_complex(z).to_complex().unwrap();
        assert!((back - z).norm() < 1e-15 * z.norm());
    }

    #[test]
    fn overflow_is_reported() {
        let big = LogScaled::new(800.0, Complex64::new(1.0, 0.0));
        assert!(matches!(big.to_complex(), Err(Error::Range { .. })));
        let product = big * LogScaled::new(-100.0, Complex64::new(0.0, 1.0));
        let z = product.to_complex().unwrap();
        assert!((z.im - 700f64.exp()).abs() < 1e-12 * 700f64.exp());
    }

    #[test]
    fn zero_absorbs() {
        let z = LogScaled::ZERO * LogScaled::from_real(5.0);
        assert!(z.is_zero());
        assert_eq!(z.to_f64().unwrap(), 0.0);
    }

    #[test]
    fn integer_power_tracks_phase() {
        let i = LogScaled::from_complex(Complex64::new(0.0, 2.0));
        let p = i.powu(3).to_complex().unwrap();
        assert!((p - Complex64::new(0.0, -8.0)).norm() < 1e-13);
    }
}
