use qentangle::displacement::*;
use qentangle::specfun::{log_factorial, Complex};

fn sig(r: f64, arg: f64) -> SigmaValue {
    SigmaValue::new(Complex::from_polar(r, arg))
}

#[test]
fn identity_at_zero_displacement() {
    for k in -3..=3 {
        let v = element(k, 5, sig(0.0, 0.0)).unwrap();
        assert_eq!(v, Complex::new(if k == 0 { 1.0 } else { 0.0 }, 0.0));
    }
}

#[test]
fn vacuum_row_is_coherent_state() {
    let s = sig(1.3, 0.4);
    for k in 0..12u64 {
        let v = element(k as i64, 0, s).unwrap();
        let closed =
            s.value.powi(k as i32) * (-0.5 * 1.3f64.powi(2)).exp() / (0.5 * log_factorial(k)).exp();
        assert!((v - closed).norm() < 1e-14);
    }
}

#[test]
fn unitarity_examples() {
    for (n0, r) in [(5u64, 0.7), (50, 2.0)] {
        let s = sig(r, 1.1);
        let (lo, hi) = significant_k_range(n0, s);
        let total: f64 = (lo..=hi)
            .map(|k| element(k, n0, s).unwrap().norm_sqr())
            .sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}

#[test]
fn below_vacuum_is_a_domain_error() {
    assert!(element(-4, 3, sig(0.5, 0.0)).is_err());
}

#[test]
fn asymptotic_examples() {
    assert_eq!(
        element_asymptotic(0, 100, sig(0.0, 0.0)).value,
        Complex::new(1.0, 0.0)
    );
    let n0 = 10_000u64;
    let s = sig(3.0 / (2.0 * (n0 as f64).sqrt()), 0.3);
    let d = (element(2, n0, s).unwrap() - element_asymptotic(2, n0, s).value).norm();
    assert!(d < (n0 as f64).powf(-0.75));
    let b = 0.01;
    let a = element_asymptotic(3, n0, SigmaValue::from_momentum(b, 1.0, 0.4)).value;
    let flipped = element_asymptotic(
        3,
        n0,
        SigmaValue::from_momentum(b, 1.0, 0.4 + std::f64::consts::PI),
    )
    .value;
    assert!((a + flipped).norm() < 1e-14);
}

#[test]
fn moments() {
    assert_eq!(mean_variance(7, sig(0.0, 0.0)), (7.0, 0.0));
    let (m, v) = mean_variance(3, sig(0.5f64.sqrt(), 0.2));
    assert!((m - 3.5).abs() < 1e-15 && (v - 3.5).abs() < 1e-14);
}

#[test]
fn overlap_examples() {
    let s1 = sig(0.9, 0.3);
    assert!((overlap_product(6, s1, s1) - Complex::new(1.0, 0.0)).norm() < 1e-15);
    let o = overlap_product(6, s1, sig(0.0, 0.0));
    assert!((o - element(0, 6, s1).unwrap()).norm() < 1e-15);
}
