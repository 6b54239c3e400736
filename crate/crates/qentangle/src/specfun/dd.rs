//! Double-double arithmetic for long recurrences.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits of significand. Only the operations the polynomial
//! recurrences need are provided.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// `1 + delta` without rounding `delta` away.
    pub fn one_plus(delta: f64) -> Self {
        let (hi, lo) = two_sum(1.0, delta);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Exact scaling by a power of two.
    pub fn scale_pow2(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = ((self.hi - p) - e + self.lo) / b;
        Dd::new(q1, r)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_l1(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }

    pub fn scale_pow2(self, e: i32) -> Self {
        DdComplex {
            re: self.re.scale_pow2(e),
            im: self.im.scale_pow2(e),
        }
    }

    pub fn div_f64(self, b: f64) -> Self {
        DdComplex {
            re: self.re.div_f64(b),
            im: self.im.div_f64(b),
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        DdComplex {
            re: self.re * b,
            im: self.im * b,
        }
    }
}

impl From<Complex64> for DdComplex {
    fn from(z: Complex64) -> Self {
        DdComplex {
            re: z.re.into(),
            im: z.im.into(),
        }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, o: Self) -> Self {
        DdComplex {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, o: Self) -> Self {
        DdComplex {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, o: Self) -> Self {
        DdComplex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_plus_keeps_tiny_delta() {
        let x = Dd::one_plus(1e-20);
        assert_eq!(x.hi, 1.0);
        assert_eq!(x.lo, 1e-20);
        assert_eq!((x - Dd::ONE).to_f64(), 1e-20);
    }

    #[test]
    fn product_recovers_low_bits() {
        let a = Dd::one_plus(2f64.powi(-40));
        let sq = a * a;
        let expect = 2f64.powi(-39) + 2f64.powi(-80);
        assert_eq!((sq - Dd::ONE).to_f64(), expect);
    }

    #[test]
    fn division_is_inverse_of_multiplication() {
        let a = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
        let q = a.div_f64(3.0) * 3.0;
        assert!((q - a).to_f64().abs() < 1e-30);
    }

    #[test]
    fn complex_product_matches_f64() {
        let a = Complex64::new(1.5, -0.25);
        let b = Complex64::new(-2.0, 0.75);
        let p = (DdComplex::from(a) * DdComplex::from(b)).to_complex();
        assert!((p - a * b).norm() < 1e-15);
    }
}
