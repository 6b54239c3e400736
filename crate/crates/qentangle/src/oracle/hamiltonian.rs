//! Truncated-Fock check that the displaced number states diagonalize the
//! electron-mode Hamiltonian at fixed transverse momentum.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::displacement::{element, SigmaValue};
use crate::error::{Error, Result};
use crate::specfun::Complex;

/// `H = |p|^2/2 + omega (N + 1/2) + g ((p.e) A + (p.e*) A^+)` with
/// `p.e = (p_x + i p_y)/sqrt 2`, in units where the mode quantum is `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    /// Highest retained Fock index.
    pub n_max: usize,
    pub p_dimless: [f64; 2],
    pub coupling: f64,
    pub omega_ratio: f64,
}

impl HamiltonianSpec {
    fn p_dot_e(&self) -> Complex {
        Complex::new(self.p_dimless[0], self.p_dimless[1]) / std::f64::consts::SQRT_2
    }

    /// Displacement `sigma = -g (p.e*) / omega` of the eigenvectors.
    pub fn sigma(&self) -> SigmaValue {
        SigmaValue::new(-self.coupling * self.p_dot_e().conj() / self.omega_ratio)
    }

    /// Predicted eigenvalue `|p|^2/2 + omega (n0 + 1/2 - |sigma|^2)`.
    pub fn eigenvalue(&self, n0: u64) -> f64 {
        let p2 = self.p_dimless[0].powi(2) + self.p_dimless[1].powi(2);
        0.5 * p2 + self.omega_ratio * (n0 as f64 + 0.5 - self.sigma().value.norm_sqr())
    }

    /// Dense tridiagonal Hamiltonian on `0..=n_max`.
    pub fn matrix(&self) -> DMatrix<Complex> {
        let dim = self.n_max + 1;
        let p2 = self.p_dimless[0].powi(2) + self.p_dimless[1].powi(2);
        let pe = self.coupling * self.p_dot_e();
        DMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Complex::new(0.5 * p2 + self.omega_ratio * (r as f64 + 0.5), 0.0)
            } else if r + 1 == c {
                pe * (c as f64).sqrt()
            } else if c + 1 == r {
                pe.conj() * (r as f64).sqrt()
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenCheck {
    /// `||H v - E v|| / ||H v||`.
    pub residual: f64,
    pub eigenvalue: f64,
    /// Norm of `v` on the ten highest retained levels.
    pub top_band_norm: f64,
    /// Set when truncation rather than the eigen-relation limits the residual.
    pub inconclusive: bool,
}

/// Residual of the candidate eigenvector `v_k = <k| D(sigma) |n0>`.
///
/// ```
/// use qentangle::oracle::{eigen_residual, HamiltonianSpec};
/// let spec = HamiltonianSpec { n_max: 200, p_dimless: [0.8, 0.3], coupling: 1.3, omega_ratio: 1.0 };
/// let r = eigen_residual(&spec, 5).unwrap();
/// assert!(r.residual < 1e-10 && !r.inconclusive);
/// ```
pub fn eigen_residual(spec: &HamiltonianSpec, n0: u64) -> Result<EigenCheck> {
    if n0 as usize > spec.n_max || spec.omega_ratio <= 0.0 {
        return Err(Error::domain(
            "eigen_residual",
            format!(
                "need n0 <= n_max and omega > 0; got n0 = {n0}, n_max = {}",
                spec.n_max
            ),
        ));
    }
    let sigma = spec.sigma();
    let v = (0..=spec.n_max)
        .map(|k| element(k as i64 - n0 as i64, n0, sigma))
        .collect::<Result<Vec<_>>>()?;
    let v = DVector::from_vec(v);
    let hv = spec.matrix() * &v;
    let e = spec.eigenvalue(n0);
    let residual = (&hv - &v * Complex::new(e, 0.0)).norm() / hv.norm();
    let top = spec.n_max.saturating_sub(9);
    let top_band_norm = v.rows(top, spec.n_max + 1 - top).norm();
    Ok(EigenCheck {
        residual,
        eigenvalue: e,
        top_band_norm,
        inconclusive: top_band_norm > 1e-12,
    })
}
