//! The consistency matrix: every closed form paired with an oracle.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hamiltonian::{eigen_residual, HamiltonianSpec};
use super::integrals::{
    quad_joint_amplitude, quad_joint_amplitude_with, quad_trace_purity,
    quad_trace_purity_asymptotic, sum_oracle_distribution,
};
use super::quad::{integrate_real, QuadOptions};
use crate::density::{
    electron_momentum_density, electron_position_density, linear_entropy_photon,
    photon_dist_asymptotic, photon_dist_exact, position_distribution, purity_electron_exact,
    von_neumann_photon,
};
use crate::displacement::{
    element, mean_variance, overlap_product, significant_k_range, SigmaValue,
};
use crate::entangled::{
    gamma_of, joint_amplitude_exact, significant_band, xi_coefficients, DetectionPoint,
};
use crate::error::Result;
use crate::specfun::{bessel_j, Complex};

/// Grid density of the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

/// One closed-form/oracle pairing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyEntry {
    pub operation: String,
    pub oracle: String,
    /// Largest deviation over the grid; absent when an evaluation failed.
    pub max_deviation: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub error: Option<String>,
}

impl ConsistencyEntry {
    fn from_result(operation: &str, oracle: &str, tolerance: f64, r: Result<f64>) -> Self {
        let (max_deviation, error) = match r {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        };
        ConsistencyEntry {
            operation: operation.into(),
            oracle: oracle.into(),
            pass: max_deviation.is_some_and(|d| d <= tolerance),
            max_deviation,
            tolerance,
            error,
        }
    }
}

fn max_over<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    items
        .par_iter()
        .map(f)
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max))
}

fn coupling(drive: f64, n0: u64) -> f64 {
    drive / (2.0 * (n0 as f64).sqrt())
}

fn amplitude_grid(level: Level) -> Vec<(i64, u64, f64, f64)> {
    let n0s: &[u64] = match level {
        Level::Quick => &[1, 5, 20],
        Level::Full => &[1, 5, 20, 50],
    };
    let ks: &[i64] = match level {
        Level::Quick => &[-1, 0, 2],
        Level::Full => &[-3, -1, 0, 1, 2, 5],
    };
    let mut g = Vec::new();
    for &n0 in n0s {
        for &x in &[0.5, 2.0, 4.0] {
            for &theta in &[0.0, 0.5, 2.0] {
                for &k in ks.iter().filter(|&&k| k >= -(n0 as i64)) {
                    g.push((k, n0, x, theta));
                }
            }
        }
    }
    g
}

/// Largest deviation of `closed(k, n0, point, b)` from the amplitude
/// quadrature over the standard grid. Lets mutated closed forms be tested.
pub fn amplitude_pair_deviation(
    level: Level,
    closed: impl Fn(i64, u64, &DetectionPoint, f64) -> Result<Complex> + Sync + Send,
) -> Result<f64> {
    max_over(&amplitude_grid(level), |&(k, n0, x, theta)| {
        let p = DetectionPoint::new(x, 0.3, theta)?;
        let b = coupling(2.0, n0);
        Ok((closed(k, n0, &p, b)? - quad_joint_amplitude(k, n0, &p, b)?).norm())
    })
}

fn check_amplitudes(level: Level) -> Result<f64> {
    amplitude_pair_deviation(level, |k, n0, p, b| {
        joint_amplitude_exact(k, n0, p, b).map(|a| a.value)
    })
}

fn check_quadrature_invariance() -> Result<f64> {
    let p = DetectionPoint::new(2.0, 0.0, 0.5)?;
    let b = coupling(2.0, 20);
    let base = quad_joint_amplitude(1, 20, &p, b)?;
    let opts = QuadOptions {
        initial_segments: 32,
        ..QuadOptions::default()
    };
    let finer = quad_joint_amplitude_with(1, 20, &p, b, opts, 1.0)?;
    let wider = quad_joint_amplitude_with(1, 20, &p, b, QuadOptions::default(), 2.0)?;
    Ok((base - finer).norm().max((base - wider).norm()))
}

fn distribution_grid(level: Level) -> Vec<(u64, f64)> {
    match level {
        Level::Quick => vec![(3, 0.4), (20, coupling(2.0, 20))],
        Level::Full => vec![
            (1, 0.6),
            (3, 0.4),
            (10, 1.4),
            (20, coupling(2.0, 20)),
            (50, coupling(4.0, 50)),
        ],
    }
}

fn check_distributions(level: Level) -> Result<(f64, f64)> {
    let devs = distribution_grid(level)
        .par_iter()
        .map(|&(n0, b)| {
            let oracle = sum_oracle_distribution(n0, b)?;
            let exact = photon_dist_exact(n0, b, Some(oracle.k_min..=oracle.k_max()))?;
            let d = oracle
                .iter()
                .map(|(k, w)| (w - exact.get(k)).abs())
                .fold(0.0, f64::max);
            Ok((d, oracle.norm_defect))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(devs
        .into_iter()
        .fold((0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1))))
}

fn check_purity(level: Level) -> Result<f64> {
    let n0s: &[u64] = match level {
        Level::Quick => &[1, 5],
        Level::Full => &[1, 5, 20, 50],
    };
    let grid: Vec<(u64, f64)> = n0s
        .iter()
        .flat_map(|&n| [0.5, 2.0, 3.0].map(|d| (n, coupling(d, n))))
        .collect();
    max_over(&grid, |&(n0, b)| {
        Ok((purity_electron_exact(n0, b)? - quad_trace_purity(n0, b)?).abs())
    })
}

fn check_eigen(level: Level) -> Result<f64> {
    let mut specs = vec![(
        HamiltonianSpec {
            n_max: 200,
            p_dimless: [0.8 * std::f64::consts::SQRT_2, 0.0],
            coupling: 1.0,
            omega_ratio: 1.0,
        },
        5,
    )];
    if level == Level::Full {
        specs.push((
            HamiltonianSpec {
                n_max: 250,
                p_dimless: [1.2, -0.7],
                coupling: 1.5,
                omega_ratio: 0.8,
            },
            20,
        ));
        specs.push((
            HamiltonianSpec {
                n_max: 300,
                p_dimless: [0.4, 2.0],
                coupling: 0.9,
                omega_ratio: 1.3,
            },
            50,
        ));
    }
    max_over(&specs, |(spec, n0)| {
        let r = eigen_residual(spec, *n0)?;
        Ok(if r.inconclusive {
            f64::INFINITY
        } else {
            r.residual
        })
    })
}

fn check_photon_purity_asymptotic() -> Result<f64> {
    max_over(&[0.5, 2.0, 4.0], |&drive| {
        Ok((1.0
            - linear_entropy_photon(drive * drive / 2.0)
            - quad_trace_purity_asymptotic(drive)?)
        .abs())
    })
}

fn check_asymptotic_weights() -> Result<f64> {
    let drive: f64 = 3.0;
    let d = photon_dist_asymptotic(drive * drive / 2.0, None)?;
    let grid: Vec<i64> = (0..=8).collect();
    max_over(&grid, |&k| {
        let f = |t: f64| 2.0 * t * (-t * t).exp() * bessel_j(k, drive * t).powi(2);
        Ok((integrate_real(f, 0.0, 7.0, QuadOptions::default())? - d.get(k)).abs())
    })
}

fn check_entropies() -> Result<(f64, f64)> {
    let mut dl: f64 = 0.0;
    let mut dv: f64 = 0.0;
    for q in [0.1, 2.5, 25.0, 50.0] {
        let d = photon_dist_asymptotic(q, None)?;
        dl = dl.max((linear_entropy_photon(q) - (1.0 - d.purity())).abs());
        dv = dv.max((von_neumann_photon(q) - d.shannon()).abs());
    }
    Ok((dl, dv))
}

fn check_displacement() -> Result<(f64, f64, f64)> {
    let cases = [(0u64, 0.7), (3, 1.1), (12, 2.5), (30, 0.4)];
    let mut unit: f64 = 0.0;
    let mut moments: f64 = 0.0;
    let mut overlap: f64 = 0.0;
    for (n0, r) in cases {
        let s1 = SigmaValue::new(Complex::from_polar(r, 0.4));
        let s2 = SigmaValue::new(Complex::from_polar(0.8 * r, -1.1));
        let (lo, hi) = significant_k_range(n0, s1);
        let (lo2, hi2) = significant_k_range(n0, s2);
        let (lo, hi) = (lo.min(lo2), hi.max(hi2));
        let e1 = (lo..=hi)
            .map(|k| element(k, n0, s1))
            .collect::<Result<Vec<_>>>()?;
        let e2 = (lo..=hi)
            .map(|k| element(k, n0, s2))
            .collect::<Result<Vec<_>>>()?;
        let w: Vec<f64> = e1.iter().map(|v| v.norm_sqr()).collect();
        unit = unit.max((w.iter().sum::<f64>() - 1.0).abs());
        let mean: f64 = (lo..=hi)
            .zip(&w)
            .map(|(k, p)| (n0 as i64 + k) as f64 * p)
            .sum();
        let var: f64 = (lo..=hi)
            .zip(&w)
            .map(|(k, p)| ((n0 as i64 + k) as f64 - mean).powi(2) * p)
            .sum();
        let (m, v) = mean_variance(n0, s1);
        moments = moments.max((mean - m).abs()).max((var - v).abs());
        let direct: Complex = e1.iter().zip(&e2).map(|(a, b)| b.conj() * a).sum();
        overlap = overlap.max((direct - overlap_product(n0, s1, s2)).norm());
    }
    Ok((unit, moments, overlap))
}

fn position_points() -> Vec<(f64, f64, f64)> {
    let mut v = Vec::new();
    for drive in [0.5, 2.0, 4.0] {
        for theta in [0.0, 0.5, 1.0, 3.0] {
            v.push((drive, theta, 1.3));
        }
    }
    v
}

fn check_position_sum() -> Result<f64> {
    max_over(&position_points(), |&(drive, theta, x)| {
        let p = DetectionPoint::new(x, 0.0, theta)?;
        let band = significant_band(gamma_of(&p, drive));
        let direct = xi_coefficients(&p, drive, -band..=band).photon_norm;
        let closed = position_distribution(x, theta, drive);
        let kernel = electron_position_density([x, 0.0], [x, 0.0], theta, drive).re;
        Ok(((direct - closed).abs() / closed).max((kernel - closed).abs() / closed))
    })
}

fn check_position_norm() -> Result<f64> {
    max_over(&position_points(), |&(drive, theta, _)| {
        let t = 1.0 + theta * theta;
        let r = drive + 9.0 * t.sqrt();
        let f = |x: f64| TAU * x * position_distribution(x, theta, drive);
        Ok((integrate_real(f, 0.0, r, QuadOptions::default())? - 1.0).abs())
    })
}

fn check_momentum_trace() -> Result<f64> {
    max_over(&[(3u64, 0.4, 0.0), (10, 0.2, 1.5)], |&(n0, b, theta)| {
        let f = |p: f64| TAU * p * electron_momentum_density([p, 0.0], [p, 0.0], n0, b, theta).re;
        Ok((integrate_real(f, 0.0, 9.0, QuadOptions::default())? - 1.0).abs())
    })
}

/// Evaluates every closed-form/oracle pairing.
pub fn consistency_matrix(level: Level) -> Vec<ConsistencyEntry> {
    let mut out = Vec::new();
    let mut push = |op: &str, oracle: &str, tol: f64, r: Result<f64>| {
        out.push(ConsistencyEntry::from_result(op, oracle, tol, r));
    };
    push(
        "joint_amplitude_exact",
        "quad_joint_amplitude",
        1e-8,
        check_amplitudes(level),
    );
    push(
        "quad_joint_amplitude",
        "halved step and doubled radius",
        2e-10,
        check_quadrature_invariance(),
    );
    match check_distributions(level) {
        Ok((d, n)) => {
            push("photon_dist_exact", "sum_oracle_distribution", 1e-9, Ok(d));
            push("sum_oracle_distribution", "unit normalization", 1e-9, Ok(n));
        }
        Err(e) => {
            let msg = e.to_string();
            push("photon_dist_exact", "sum_oracle_distribution", 1e-9, Err(e));
            push(
                "sum_oracle_distribution",
                "unit normalization",
                1e-9,
                Err(crate::Error::Config(msg)),
            );
        }
    }
    push(
        "purity_electron_exact",
        "quad_trace_purity",
        1e-6,
        check_purity(level),
    );
    push(
        "eigenvector construction",
        "eigen_residual",
        1e-10,
        check_eigen(level),
    );
    push(
        "linear_entropy_photon",
        "quad_trace_purity_asymptotic",
        1e-10,
        check_photon_purity_asymptotic(),
    );
    push(
        "photon_dist_asymptotic",
        "Bessel-squared radial quadrature",
        1e-12,
        check_asymptotic_weights(),
    );
    match check_entropies() {
        Ok((l, v)) => {
            push(
                "linear_entropy_photon",
                "direct sum of squared weights",
                1e-12,
                Ok(l),
            );
            push("von_neumann_photon", "direct Shannon sum", 1e-12, Ok(v));
        }
        Err(e) => push("photon entropies", "direct sums", 1e-12, Err(e)),
    }
    match check_displacement() {
        Ok((u, m, o)) => {
            push("element", "unitarity sum", 1e-10, Ok(u));
            push("mean_variance", "moment sums", 1e-10, Ok(m));
            push(
                "overlap_product",
                "truncated completeness sum",
                1e-10,
                Ok(o),
            );
        }
        Err(e) => push("displacement", "direct sums", 1e-10, Err(e)),
    }
    push(
        "position_distribution",
        "coefficient sum and kernel diagonal",
        1e-10,
        check_position_sum(),
    );
    push(
        "position_distribution",
        "radial normalization quadrature",
        1e-6,
        check_position_norm(),
    );
    push(
        "electron_momentum_density",
        "trace quadrature",
        1e-10,
        check_momentum_trace(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_matrix_passes() {
        let m = consistency_matrix(Level::Quick);
        for e in &m {
            assert!(e.pass, "{e:?}");
        }
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"max_deviation\""));
    }

    #[test]
    fn perturbed_constant_is_caught() {
        let mutated = |k, n0, p: &DetectionPoint, b| {
            joint_amplitude_exact(k, n0, p, b).map(|a| a.value * (1.0 + 1e-3))
        };
        assert!(amplitude_pair_deviation(Level::Quick, mutated).unwrap() > 1e-8);
    }
}
