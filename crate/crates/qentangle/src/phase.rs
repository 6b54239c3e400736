//! Susskind-Glogower phase operators on a truncated number basis, the
//! Carruthers-Nieto uncertainty products and Jackiw's critical states.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::entangled::{gamma_of, DetectionPoint};
use crate::error::{Error, Result};
use crate::specfun::{
    bessel_i_real_order, bessel_i_real_order_with_scale, bessel_i_scaled_seq, Complex,
};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense operator on `span{|0>, ..., |D-1>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub entries: DMatrix<Complex>,
}

impl FockOperator {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn identity(dim: usize) -> Self {
        FockOperator {
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn adjoint(&self) -> Self {
        FockOperator {
            entries: self.entries.adjoint(),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.entries[(row, col)]
    }

    pub fn commutator(&self, other: &FockOperator) -> FockOperator {
        self * other - other * self
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.entries - self.entries.adjoint())
            .iter()
            .all(|z| z.norm() <= tol)
    }

    /// Largest entrywise deviation from `other` over rows `0..rows`.
    pub fn max_deviation_rows(&self, other: &FockOperator, rows: usize) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..rows.min(d) {
            for j in 0..d {
                worst = worst.max((self.entry(i, j) - other.entry(i, j)).norm());
            }
        }
        worst
    }

    pub fn scale(&self, c: Complex) -> FockOperator {
        FockOperator {
            entries: &self.entries * c,
        }
    }
}

impl std::ops::Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, o: &FockOperator) -> FockOperator {
        FockOperator {
            entries: &self.entries * &o.entries,
        }
    }
}

impl std::ops::Add for FockOperator {
    type Output = FockOperator;
    fn add(self, o: FockOperator) -> FockOperator {
        FockOperator {
            entries: self.entries + o.entries,
        }
    }
}

impl std::ops::Sub for FockOperator {
    type Output = FockOperator;
    fn sub(self, o: FockOperator) -> FockOperator {
        FockOperator {
            entries: self.entries - o.entries,
        }
    }
}

/// State vector in the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub coefficients: DVector<Complex>,
}

impl FockState {
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn number(n: usize, dim: usize) -> Self {
        let mut v = DVector::from_element(dim, ZERO);
        v[n] = ONE;
        FockState { coefficients: v }
    }

    /// Normalized state from raw coefficients.
    pub fn from_coefficients(c: impl IntoIterator<Item = Complex>) -> Result<Self> {
        let data: Vec<Complex> = c.into_iter().collect();
        let v = DVector::from_vec(data);
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::domain(
                "FockState::from_coefficients",
                "zero or non-finite norm",
            ));
        }
        Ok(FockState {
            coefficients: v / Complex::new(norm, 0.0),
        })
    }

    pub fn norm(&self) -> f64 {
        self.coefficients.norm()
    }

    /// Norm of the top five coefficients.
    pub fn tail_norm(&self) -> f64 {
        let d = self.dim();
        self.coefficients.rows(d.saturating_sub(5), d.min(5)).norm()
    }
}

/// Number, phase and vacuum-projector operators.
#[derive(Debug, Clone)]
pub struct PhaseOperators {
    pub n: FockOperator,
    pub e: FockOperator,
    pub e_dag: FockOperator,
    pub c: FockOperator,
    pub s: FockOperator,
    pub p0: FockOperator,
}

/// Builds `N`, `E = sum |k><k+1|`, `C = (E + E^+)/2`, `S = (E - E^+)/2i` and
/// `P0 = |0><0|`.
pub fn build_operators(dim: usize) -> Result<PhaseOperators> {
    if dim < 2 {
        return Err(Error::domain("build_operators", format!("dim = {dim} < 2")));
    }
    let n = FockOperator {
        entries: DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex::new(i as f64, 0.0)
            } else {
                ZERO
            }
        }),
    };
    let e = FockOperator {
        entries: DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { ONE } else { ZERO }),
    };
    let e_dag = e.adjoint();
    let c = (e.clone() + e_dag.clone()).scale(Complex::new(0.5, 0.0));
    let s = (e.clone() - e_dag.clone()).scale(Complex::new(0.0, -0.5));
    let mut p0 = DMatrix::from_element(dim, dim, ZERO);
    p0[(0, 0)] = ONE;
    Ok(PhaseOperators {
        n,
        e,
        e_dag,
        c,
        s,
        p0: FockOperator { entries: p0 },
    })
}

fn check_tail(state: &FockState) -> Result<()> {
    let t = state.tail_norm();
    if t >= 1e-10 {
        return Err(Error::truncation(
            "expectation",
            format!("top-5 coefficient norm {t:.3e} >= 1e-10"),
        ));
    }
    Ok(())
}

/// `<psi| op |psi>`.
pub fn expectation(op: &FockOperator, state: &FockState) -> Result<Complex> {
    check_tail(state)?;
    let v = &state.coefficients;
    Ok(v.dotc(&(&op.entries * v)))
}

/// `<op^2> - <op>^2` for a hermitian operator.
pub fn variance(op: &FockOperator, state: &FockState) -> Result<f64> {
    check_tail(state)?;
    let v = &state.coefficients;
    let w = &op.entries * v;
    let mean = v.dotc(&w).re;
    Ok(w.norm_squared() - mean * mean)
}

fn product(
    state: &FockState,
    ops: &PhaseOperators,
    numerator: &FockOperator,
    denom: &FockOperator,
    label: &str,
) -> Result<f64> {
    let d = expectation(denom, state)?.re;
    if d.abs() < 1e-14 {
        return Err(Error::UndefinedProduct(format!("<{label}> = {d:e}")));
    }
    Ok(variance(&ops.n, state)? * variance(numerator, state)? / (d * d))
}

/// `(dN)^2 (dC)^2 / <S>^2`.
pub fn uncertainty_u1(state: &FockState) -> Result<f64> {
    let ops = build_operators(state.dim())?;
    product(state, &ops, &ops.c, &ops.s, "S")
}

/// `(dN)^2 (dS)^2 / <C>^2`.
pub fn uncertainty_u2(state: &FockState) -> Result<f64> {
    let ops = build_operators(state.dim())?;
    product(state, &ops, &ops.s, &ops.c, "C")
}

/// Parameters of a Jackiw critical state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JackiwParams {
    pub gamma: f64,
    pub nu: f64,
    pub branch: u32,
}

/// Inset of the root bracket from the branch endpoints.
const BRACKET_INSET: f64 = 1e-8;
const SCAN_CELLS: usize = 512;

/// Mean photon number `nu` of the critical state on branch `s`.
///
/// The recursion closes at `n = 0` iff `I_{-nu-1}(gamma) = 0`; the root is
/// searched in `(2s, 2s+1)` by a sign-change scan followed by bisection and
/// the smallest root is returned.
pub fn find_nu(gamma: f64, branch: u32) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::domain(
            "find_nu",
            format!("gamma must be > 0, got {gamma}"),
        ));
    }
    let f = |nu: f64| bessel_i_real_order(-nu - 1.0, gamma);
    let lo = 2.0 * branch as f64 + BRACKET_INSET;
    let hi = 2.0 * branch as f64 + 1.0 - BRACKET_INSET;
    let h = (hi - lo) / SCAN_CELLS as f64;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=SCAN_CELLS {
        let b = if i == SCAN_CELLS {
            hi
        } else {
            lo + i as f64 * h
        };
        let fb = f(b);
        if fa == 0.0 {
            return Ok(a);
        }
        if fa.signum() != fb.signum() {
            return Ok(bisect(&f, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoRoot { gamma, branch })
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > 4.0 * f64::EPSILON * b.abs() {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Residual of the root condition relative to its cancellation scale.
pub fn root_residual(gamma: f64, nu: f64) -> f64 {
    let (v, scale) = bessel_i_real_order_with_scale(-nu - 1.0, gamma);
    v.abs() / scale
}

/// Default basis size `ceil(nu) + ceil(gamma) + 60`.
pub fn default_dim(nu: f64, gamma: f64) -> usize {
    nu.ceil() as usize + gamma.ceil() as usize + 60
}

/// Critical state `kappa sum_n (-i)^n I_{n-nu}(gamma) |n>`.
pub fn jackiw_state(gamma: f64, branch: u32, dim: usize) -> Result<(FockState, JackiwParams)> {
    let nu = find_nu(gamma, branch)?;
    let raw: Vec<Complex> = (0..dim)
        .map(|n| Complex::new(0.0, -1.0).powi(n as i32) * bessel_i_real_order(n as f64 - nu, gamma))
        .collect();
    let total: f64 = raw.iter().map(|z| z.norm_sqr()).sum();
    let top = raw[dim - 1].norm_sqr();
    if top >= 1e-20 * total {
        return Err(Error::truncation(
            "jackiw_state",
            format!(
                "dim = {dim} too small: |a_(D-1)|^2 / sum = {:.3e}",
                top / total
            ),
        ));
    }
    Ok((
        FockState::from_coefficients(raw)?,
        JackiwParams { gamma, nu, branch },
    ))
}

/// `max_n |(nu - n) a_n - (i gamma / 2)(a_{n-1} + a_{n+1})|` with `a_{-1} = 0`,
/// over rows whose neighbours lie inside the basis.
pub fn recursion_residual(state: &FockState, params: &JackiwParams) -> f64 {
    let a = &state.coefficients;
    let ig2 = Complex::new(0.0, 0.5 * params.gamma);
    (0..state.dim() - 1)
        .map(|n| {
            let prev = if n == 0 { ZERO } else { a[n - 1] };
            ((params.nu - n as f64) * a[n] - ig2 * (prev + a[n + 1])).norm()
        })
        .fold(0.0, f64::max)
}

/// Normalized photon part of the entangled state at one detection point,
/// `sum_n (-i)^(n-n0) e^{-i(n-n0) phi} I_{n-n0}(gamma) |n>`.
pub fn xi_photon_part(
    point: &DetectionPoint,
    drive: f64,
    n0: usize,
    dim: usize,
) -> Result<FockState> {
    if n0 >= dim {
        return Err(Error::domain(
            "xi_photon_part",
            format!("n0 = {n0} >= dim = {dim}"),
        ));
    }
    let gamma = gamma_of(point, drive);
    let kmax = n0.max(dim - n0) as u64;
    let scaled = bessel_i_scaled_seq(kmax, gamma);
    let raw: Vec<Complex> = (0..dim)
        .map(|n| {
            let k = n as i64 - n0 as i64;
            Complex::from_polar(1.0, -(k as f64) * (point.phi + 0.5 * std::f64::consts::PI))
                * scaled[k.unsigned_abs() as usize]
        })
        .collect();
    let total: f64 = raw.iter().map(|z| z.norm_sqr()).sum();
    if raw[dim - 1].norm_sqr() >= 1e-20 * total {
        return Err(Error::truncation(
            "xi_photon_part",
            format!("dim = {dim} too small"),
        ));
    }
    FockState::from_coefficients(raw)
}
