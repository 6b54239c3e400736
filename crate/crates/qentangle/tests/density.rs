use qentangle::density::*;

#[test]
fn asymptotic_reference_values() {
    let d = photon_dist_asymptotic(2.5, None).unwrap();
    assert!((d.get(0) - 0.2700).abs() < 5e-5);
    assert!((d.get(1) - 0.2066).abs() < 5e-5);
    assert!(d.norm_defect < 1e-12);
    assert!((linear_entropy_photon(2.0) - 0.7930).abs() < 5e-5);
}

#[test]
fn entropy_growth() {
    assert_eq!(von_neumann_photon(0.0), 0.0);
    let s: Vec<f64> = [10.0, 100.0, 1000.0].map(von_neumann_photon).to_vec();
    assert!(s[0] < s[1] && s[1] < s[2]);
    // Logarithmic: each decade adds about (ln 10)/2.
    let step = s[2] - s[1];
    assert!((step - 0.5 * 10f64.ln()).abs() < 0.01, "step {step}");
}

#[test]
fn entropy_orderings() {
    for q in [0.1, 1.0, 4.0, 30.0] {
        let r = entropy_report(q, None, None).unwrap();
        assert!(r.von_neumann >= r.renyi2 - 1e-12);
        assert!(r.renyi2 >= r.linear - 1e-12);
        let shannon = photon_dist_asymptotic(q, None).unwrap().shannon();
        assert!((shannon - r.von_neumann).abs() < 1e-10);
    }
}

#[test]
fn exact_distribution_is_normalized() {
    let d = photon_dist_exact(30, 0.3, None).unwrap();
    assert!(d.norm_defect < 1e-10);
    assert!(d.weights.iter().all(|&w| w >= 0.0));
    assert!(d.k_min >= -30);
}

#[test]
fn exact_distribution_errors() {
    assert!(photon_dist_exact(10, 1.0, None).is_err());
    assert!(photon_dist_exact(10, 0.0, None).is_err());
    assert!(photon_dist_exact(10, 0.3, Some(-11..=3)).is_err());
}

#[test]
fn electron_densities() {
    let (a, b) = ([0.3, -0.2], [1.1, 0.4]);
    let r12 = electron_momentum_density(a, b, 25, 0.2, 0.5);
    let r21 = electron_momentum_density(b, a, 25, 0.2, 0.5);
    assert!((r12 - r21.conj()).norm() < 1e-14);
    assert!(electron_momentum_density(a, a, 25, 0.2, 0.5).re >= 0.0);
    let x12 = electron_position_density(a, b, 0.7, 2.0);
    let x21 = electron_position_density(b, a, 0.7, 2.0);
    assert!((x12 - x21.conj()).norm() < 1e-14);
    for x in [0.0, 0.5, 2.0, 5.0] {
        assert!(position_distribution(x, 0.7, 2.0) >= 0.0);
    }
}

#[test]
fn exact_purity_tends_to_photon_purity() {
    let q = 2.0;
    let dev = |n0: u64| {
        let b = (q / (2.0 * n0 as f64 + 1.0)).sqrt();
        (purity_electron_exact(n0, b).unwrap() - purity_photon(q)).abs()
    };
    assert!(dev(10_000) < dev(100));
    assert!(dev(100_000) < 1e-4);
}
