//! Special functions: Bessel functions of integer and real order, orthogonal
//! polynomials at large degree, log-gamma, and the log-scaled number type
//! that keeps them representable.

mod bessel;
pub mod dd;
mod gamma;
mod poly;
mod scaled;

pub use bessel::{
    bessel_i_int, bessel_i_int_log, bessel_i_real_order, bessel_i_real_order_with_scale,
    bessel_i_scaled, bessel_i_scaled_seq, bessel_j, bessel_j_complex, bessel_j_seq,
};
pub use gamma::{ln_gamma_signed, log_factorial, log_gamma, log_ratio_factorials};
pub use poly::{
    jacobi_p, jacobi_p_log, jacobi_p_log_one_plus, laguerre, laguerre_complex_log, laguerre_log,
    legendre_p, legendre_p_log, legendre_p_log_one_plus, DD_THRESHOLD,
};
pub use scaled::LogScaled;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// `ln(1 + w)` for complex `w`, accurate when `|w|` is small.
pub fn ln_1p_complex(w: Complex) -> Complex {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    Complex::new(re, w.im.atan2(1.0 + w.re))
}
