use std::f64::consts::PI;

use qentangle::entangled::*;
use qentangle::oracle::quad_joint_amplitude;
use qentangle::phase::xi_photon_part;
use qentangle::specfun::{bessel_i_int, Complex};

fn pt(x: f64, phi: f64, theta: f64) -> DetectionPoint {
    DetectionPoint::new(x, phi, theta).unwrap()
}

#[test]
fn gamma_is_bilinear() {
    let g = gamma_of(&pt(1.5, 0.0, 0.7), 2.0);
    assert!((gamma_of(&pt(3.0, 0.0, 0.7), 2.0) - 2.0 * g).norm() < 1e-15 * g.norm());
    assert!((gamma_of(&pt(1.5, 0.0, 0.7), 6.0) - 3.0 * g).norm() < 1e-15 * g.norm());
}

#[test]
fn packet_examples() {
    assert!((packet_factor(&pt(0.0, 0.0, 0.0), 0.0).re - 1.0 / PI.sqrt()).abs() < 1e-16);
    let a = packet_factor(&pt(1.0, 0.0, 0.0), 0.0).norm_sqr();
    assert!((a * PI - (-1.0f64).exp()).abs() < 1e-15);
    let far = |t: f64| packet_factor(&pt(0.0, 0.0, t), 0.0).norm() * t;
    assert!((far(1e4) - far(1e5)).abs() < 1e-8);
}

#[test]
fn asymptotic_channel_symmetry() {
    let p = pt(2.3, 1.1, 0.4);
    for k in 1..6 {
        let a = joint_amplitude_asymptotic(k, &p, 2.0).value.norm();
        let b = joint_amplitude_asymptotic(-k, &p, 2.0).value.norm();
        assert!((a - b).abs() <= 1e-15 * a);
    }
    assert_eq!(
        joint_amplitude_asymptotic(4, &pt(0.0, 0.0, 1.0), 2.0)
            .value
            .norm(),
        0.0
    );
}

#[test]
fn exact_matches_quadrature_reference_point() {
    let p = pt(2.0, 0.0, 0.0);
    let b = 2.0 / (2.0 * 20f64.sqrt());
    for k in -3..=3 {
        let e = joint_amplitude_exact(k, 20, &p, b).unwrap().value;
        let q = quad_joint_amplitude(k, 20, &p, b).unwrap();
        assert!((e - q).norm() < 1e-8, "k = {k}");
    }
}

#[test]
fn exact_converges_to_asymptotic() {
    let p = pt(1.7, 0.2, 0.6);
    let dev = |n0: u64| {
        let b = 2.0 / (2.0 * (n0 as f64).sqrt());
        (joint_amplitude_exact(1, n0, &p, b).unwrap().value
            - joint_amplitude_asymptotic(1, &p, 2.0).value)
            .norm()
    };
    let d: Vec<f64> = [100, 1_000, 10_000].map(dev).to_vec();
    assert!(d[0] > d[1] && d[1] > d[2]);
}

#[test]
fn xi_matches_critical_functional_form() {
    let (x, drive, n0) = (1.5, 2.0, 40usize);
    let p = pt(x, 0.0, 0.0);
    let gamma = drive * x;
    let st = xi_photon_part(&p, drive, n0, 120).unwrap();
    let raw: Vec<f64> = (0..120)
        .map(|n| {
            bessel_i_int(n as i64 - n0 as i64, Complex::new(gamma, 0.0))
                .unwrap()
                .norm()
        })
        .collect();
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    for (n, r) in raw.iter().enumerate() {
        assert!((st.coefficients[n].norm() - r / norm).abs() < 1e-14);
    }
    assert!((st.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn grid_examples() {
    let xs: Vec<f64> = (0..=40).map(|i| i as f64 * 0.2).collect();
    let ts: Vec<f64> = (0..=40).map(|i| i as f64 * 0.2).collect();
    let zero = joint_probability_grid(3, &xs, &ts, 0.0).unwrap();
    assert_eq!(zero.max(), 0.0);
    let g0 = joint_probability_grid(0, &xs, &ts, 2.0).unwrap();
    let g5 = joint_probability_grid(5, &xs, &ts, 2.0).unwrap();
    let gm5 = joint_probability_grid(-5, &xs, &ts, 2.0).unwrap();
    assert_eq!(g5.values, gm5.values);
    let ratio = g0.max() / g5.max();
    assert!(
        (ratio.log10() - (2e4f64 / 30.0).log10()).abs() < 1.0,
        "ratio {ratio}"
    );
    assert!(joint_probability_grid(0, &[1.0, 0.5], &ts, 2.0).is_err());
}

#[test]
fn shape_examples() {
    assert_eq!(classify_shape(&[0.5, 0.3, 0.1, 0.01]), Shape::Monotonic);
    assert_eq!(shape_at(4.0, 10.0, 1.0), Shape::Oscillatory);
    assert_eq!(shape_at(4.0, 10.0, 0.3), Shape::Monotonic);
}
