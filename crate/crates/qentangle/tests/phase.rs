use qentangle::phase::*;
use qentangle::specfun::bessel_i_real_order;
use qentangle::Error;

#[test]
fn number_state_examples() {
    let ops = build_operators(30).unwrap();
    let st = FockState::number(6, 30);
    assert_eq!(expectation(&ops.n, &st).unwrap().re, 6.0);
    assert_eq!(expectation(&ops.c, &st).unwrap().norm(), 0.0);
    assert!(matches!(
        uncertainty_u1(&st),
        Err(Error::UndefinedProduct(_))
    ));
}

#[test]
fn ground_branch_regression() {
    let nu = find_nu(1.0, 0).unwrap();
    assert!((nu - 0.296_655_185_069_279_6).abs() < 1e-12);
    assert!(bessel_i_real_order(-nu - 1.0, 1.0).abs() < 1e-10);
}

#[test]
fn critical_state_properties() {
    for (g, s) in [(1.0, 0u32), (2.0, 1), (3.0, 2)] {
        let nu = find_nu(g, s).unwrap();
        let lo = 2.0 * f64::from(s);
        assert!(lo < nu && nu < lo + 1.0);
        let (st, p) = jackiw_state(g, s, default_dim(nu, g)).unwrap();
        let ops = build_operators(st.dim()).unwrap();
        assert!((uncertainty_u1(&st).unwrap() - 0.25).abs() < 1e-8);
        assert!(recursion_residual(&st, &p) < 1e-10);
        assert!(expectation(&ops.c, &st).unwrap().norm() < 1e-10);
        assert!((expectation(&ops.n, &st).unwrap().re - nu).abs() < 1e-8);
        let c2 = expectation(&(&ops.c * &ops.c), &st).unwrap().re;
        let sv = expectation(&ops.s, &st).unwrap().re;
        assert!((sv + 2.0 * g * c2).abs() < 1e-10, "<S> = {sv}");
    }
}

#[test]
fn truncated_basis_is_reported() {
    assert!(matches!(
        jackiw_state(2.0, 1, 6),
        Err(Error::Truncation { .. })
    ));
    assert!(matches!(find_nu(5.0, 0), Err(Error::NoRoot { .. })));
}
