//! Acceptance criteria as executable, reportable checks.

use std::f64::consts::TAU;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{
    linear_entropy_electron_exact, linear_entropy_photon, photon_dist_asymptotic,
    photon_dist_exact, position_distribution, von_neumann_photon,
};
use crate::displacement::{element, SigmaValue};
use crate::entangled::{
    gamma_of, joint_amplitude_asymptotic, joint_amplitude_exact, k_profile, shape_at,
    shape_transitions, significant_band, xi_coefficients, DetectionPoint, Shape,
};
use crate::error::{Error, Result};
use crate::oracle::quad::{integrate_real, QuadOptions};
use crate::oracle::{consistency_matrix, loglog_slope, quad_trace_purity_asymptotic, Level};
use crate::params::{
    intensity_for_q, occupation_coefficient, q_for_intensity, reference_lasers,
    DEFAULT_LAMBDA_OVER_W,
};
use crate::phase::{
    build_operators, default_dim, expectation, jackiw_state, recursion_residual, uncertainty_u1,
    FockOperator, FockState,
};
use crate::specfun::{bessel_j, Complex};

/// How a measured value is judged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rule {
    Abs {
        expected: f64,
        tolerance: f64,
    },
    Rel {
        expected: f64,
        tolerance: f64,
    },
    AtMost {
        limit: f64,
    },
    AtLeast {
        limit: f64,
    },
    /// Open interval.
    Between {
        lo: f64,
        hi: f64,
    },
    /// Boolean outcome stored as `1.0` for true.
    Flag,
    /// Reported for context; never fails.
    Info,
}

impl Rule {
    fn accepts(&self, m: f64) -> bool {
        match *self {
            Rule::Abs {
                expected,
                tolerance,
            } => (m - expected).abs() <= tolerance,
            Rule::Rel {
                expected,
                tolerance,
            } => (m / expected - 1.0).abs() <= tolerance,
            Rule::AtMost { limit } => m <= limit,
            Rule::AtLeast { limit } => m >= limit,
            Rule::Between { lo, hi } => lo < m && m < hi,
            Rule::Flag => m == 1.0,
            Rule::Info => true,
        }
    }

    /// Multiplies tolerances and upper limits by `factor`; other rules are
    /// unchanged.
    pub fn relaxed(self, factor: f64) -> Rule {
        match self {
            Rule::Abs {
                expected,
                tolerance,
            } => Rule::Abs {
                expected,
                tolerance: tolerance * factor,
            },
            Rule::Rel {
                expected,
                tolerance,
            } => Rule::Rel {
                expected,
                tolerance: tolerance * factor,
            },
            Rule::AtMost { limit } => Rule::AtMost {
                limit: limit * factor,
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Absent when the evaluation itself failed.
    pub measured: Option<f64>,
    pub rule: Rule,
    pub pass: bool,
    pub error: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, measured: f64, rule: Rule) -> Self {
        let pass = rule.accepts(measured);
        Check {
            name: name.into(),
            measured: Some(measured),
            rule,
            pass,
            error: None,
        }
    }

    pub fn from_result(name: impl Into<String>, r: Result<f64>, rule: Rule) -> Self {
        match r {
            Ok(m) => Check::new(name, m, rule),
            Err(e) => Check {
                name: name.into(),
                measured: None,
                rule,
                pass: false,
                error: Some(e.to_string()),
            },
        }
    }

    fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { 1.0 } else { 0.0 }, Rule::Flag)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub pass: bool,
}

impl CriterionReport {
    /// One line: `PASS|FAIL [id] title (n/m checks, t s)`.
    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        format!(
            "{} [{}] {} ({ok}/{} checks, {:.2} s of {} s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len(),
            self.seconds,
            self.budget_seconds
        )
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Re-judges every check with its rule relaxed by `factor`.
    pub fn relax(&mut self, factor: f64) {
        for c in &mut self.checks {
            c.rule = c.rule.relaxed(factor);
            c.pass = c.error.is_none() && c.measured.is_some_and(|m| c.rule.accepts(m));
        }
        self.pass = self.checks.iter().all(|c| c.pass) && self.seconds <= self.budget_seconds;
    }
}

fn timed(
    id: u8,
    title: &str,
    budget_seconds: f64,
    run: impl FnOnce() -> Vec<Check>,
) -> CriterionReport {
    let start = Instant::now();
    let checks = run();
    let seconds = start.elapsed().as_secs_f64();
    let pass = checks.iter().all(|c| c.pass) && seconds <= budget_seconds;
    CriterionReport {
        id,
        title: title.into(),
        checks,
        seconds,
        budget_seconds,
        pass,
    }
}

/// Occupation coefficients of the reference lasers against the table.
pub fn criterion_occupation_table() -> CriterionReport {
    timed(1, "occupation-table coefficients within 15%", 1.0, || {
        reference_lasers()
            .iter()
            .map(|l| {
                Check::new(
                    format!("{} coefficient", l.name),
                    occupation_coefficient(l.photon_energy_ev, l.bandwidth_ratio),
                    Rule::Rel {
                        expected: l.tabulated_coefficient,
                        tolerance: 0.15,
                    },
                )
            })
            .collect()
    })
}

/// `q <-> I` at unit photon energy and the default `lambda/w`.
pub fn criterion_intensity_mapping() -> CriterionReport {
    timed(2, "intensity <-> q mapping within 1%", 1.0, || {
        [
            (2.5, 1.25e12),
            (5.0, 2.5e12),
            (25.0, 1.25e13),
            (50.0, 2.5e13),
        ]
        .into_iter()
        .flat_map(|(q, i)| {
            [
                Check::new(
                    format!("I(q = {q})"),
                    intensity_for_q(q, 1.0, DEFAULT_LAMBDA_OVER_W),
                    Rule::Rel {
                        expected: i,
                        tolerance: 0.01,
                    },
                ),
                Check::new(
                    format!("q(I = {i:e})"),
                    q_for_intensity(i, 1.0, DEFAULT_LAMBDA_OVER_W),
                    Rule::Rel {
                        expected: q,
                        tolerance: 0.01,
                    },
                ),
            ]
        })
        .collect()
    })
}

fn radial_norm(drive: f64, theta: f64, density: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let r = drive + 10.0 * (1.0 + theta * theta).sqrt();
    let opts = QuadOptions {
        initial_segments: 32,
        ..QuadOptions::default()
    };
    let failure = std::cell::Cell::new(None);
    let v = integrate_real(
        |x| {
            density(x).unwrap_or_else(|e| {
                failure.set(Some(e));
                f64::NAN
            }) * TAU
                * x
        },
        0.0,
        r,
        opts,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => v,
    }
}

fn xi_norm_at(x: f64, theta: f64, drive: f64) -> Result<f64> {
    let p = DetectionPoint::radial(x, theta)?;
    let band = significant_band(gamma_of(&p, drive));
    Ok(xi_coefficients(&p, drive, -band..=band).photon_norm)
}

const NORM_GRID: [(f64, f64); 12] = [
    (0.5, 0.0),
    (0.5, 0.5),
    (0.5, 1.0),
    (0.5, 3.0),
    (2.0, 0.0),
    (2.0, 0.5),
    (2.0, 1.0),
    (2.0, 3.0),
    (4.0, 0.0),
    (4.0, 0.5),
    (4.0, 1.0),
    (4.0, 3.0),
];

/// Photon weights, coefficient sums and position density all normalized.
pub fn criterion_normalization() -> CriterionReport {
    timed(3, "normalization suite", 30.0, || {
        let mut checks: Vec<Check> = [0.0, 0.1, 1.0, 2.5, 5.0, 10.0, 25.0, 50.0]
            .into_iter()
            .map(|q| {
                Check::from_result(
                    format!("sum p_k(q = {q})"),
                    photon_dist_asymptotic(q, None).map(|d| d.total()),
                    Rule::Abs {
                        expected: 1.0,
                        tolerance: 1e-12,
                    },
                )
            })
            .collect();
        let radial: Vec<Check> = NORM_GRID
            .par_iter()
            .flat_map_iter(|&(drive, theta)| {
                [
                    Check::from_result(
                        format!("2 pi int x sum|xi_k|^2 (drive {drive}, theta {theta})"),
                        radial_norm(drive, theta, |x| xi_norm_at(x, theta, drive)),
                        Rule::Abs {
                            expected: 1.0,
                            tolerance: 1e-6,
                        },
                    ),
                    Check::from_result(
                        format!("2 pi int x P(x) (drive {drive}, theta {theta})"),
                        radial_norm(drive, theta, |x| Ok(position_distribution(x, theta, drive))),
                        Rule::Abs {
                            expected: 1.0,
                            tolerance: 1e-6,
                        },
                    ),
                ]
            })
            .collect();
        checks.extend(radial);
        checks
    })
}

/// Exact electron linear entropy approaches the photon one as `n0` grows.
pub fn criterion_entropy_equality() -> CriterionReport {
    timed(4, "electron/photon linear-entropy equality", 60.0, || {
        let n0s = [1_000u64, 10_000, 100_000, 1_000_000];
        [0.5f64, 2.0, 8.0]
            .par_iter()
            .flat_map_iter(|&q| {
                let drive = (2.0 * q).sqrt();
                let target = linear_entropy_photon(q);
                let devs: Result<Vec<f64>> = n0s
                    .iter()
                    .map(|&n| {
                        let b = drive / (2.0 * (n as f64).sqrt());
                        linear_entropy_electron_exact(n, b).map(|s| (s - target).abs())
                    })
                    .collect();
                let mut out = Vec::new();
                match devs {
                    Ok(d) => {
                        out.push(Check::new(
                            format!("deviation at n0 = 1e6 (q = {q})"),
                            d[3],
                            Rule::AtMost { limit: 1e-3 },
                        ));
                        out.push(Check::flag(
                            format!("deviation decreasing over n0 = 1e3..1e6 (q = {q})"),
                            d.windows(2).all(|w| w[1] < w[0]),
                        ));
                    }
                    Err(e) => out.push(Check::from_result(
                        format!("exact entropy (q = {q})"),
                        Err(e),
                        Rule::Flag,
                    )),
                }
                let summed = photon_dist_asymptotic(q, None).map(|d| 1.0 - d.purity());
                let radial = quad_trace_purity_asymptotic(drive).map(|p| 1.0 - p);
                out.push(Check::from_result(
                    format!("sum p_k^2 vs radial quadrature (q = {q})"),
                    summed.and_then(|a| radial.map(|b| (a - b).abs())),
                    Rule::AtMost { limit: 1e-12 },
                ));
                out
            })
            .collect()
    })
}

/// Closed forms against the oracles on `n0 <= 50` grids.
pub fn criterion_consistency() -> CriterionReport {
    timed(5, "exact-vs-oracle consistency matrix", 300.0, || {
        consistency_matrix(Level::Full)
            .into_iter()
            .map(|e| {
                let name = format!("{} vs {}", e.operation, e.oracle);
                let rule = Rule::AtMost { limit: e.tolerance };
                match (e.max_deviation, e.error) {
                    (Some(d), _) => Check::new(name, d, rule),
                    (None, err) => Check {
                        name,
                        measured: None,
                        rule,
                        pass: false,
                        error: Some(err.unwrap_or_default()),
                    },
                }
            })
            .collect()
    })
}

/// Occupations used for the convergence fits.
pub const CONVERGENCE_N0: [u64; 7] = [10, 30, 100, 300, 1_000, 3_000, 10_000];

/// Largest `|exact - asymptotic|` amplitude over `k = -3..=3`.
pub fn amplitude_deviation(n0: u64, point: &DetectionPoint, drive: f64) -> Result<f64> {
    let b = drive / (2.0 * (n0 as f64).sqrt());
    (-3..=3).try_fold(0.0f64, |m, k| {
        let e = joint_amplitude_exact(k, n0, point, b)?.value;
        Ok(m.max((e - joint_amplitude_asymptotic(k, point, drive).value).norm()))
    })
}

/// Largest `|P_k - p_k|` between the exact and asymptotic distributions.
pub fn distribution_deviation(n0: u64, drive: f64) -> Result<f64> {
    let b = drive / (2.0 * (n0 as f64).sqrt());
    let exact = photon_dist_exact(n0, b, None)?;
    let asym = photon_dist_asymptotic(drive * drive / 2.0, None)?;
    Ok(exact
        .iter()
        .map(|(k, w)| (w - asym.get(k)).abs())
        .fold(0.0, f64::max))
}

fn fitted_slope(dev: impl Fn(u64) -> Result<f64> + Sync) -> Result<f64> {
    let ys = CONVERGENCE_N0
        .par_iter()
        .map(|&n| dev(n))
        .collect::<Result<Vec<f64>>>()?;
    let xs: Vec<f64> = CONVERGENCE_N0.iter().map(|&n| n as f64).collect();
    loglog_slope(&xs, &ys)
}

/// Power-law rate of the exact-to-asymptotic deviation.
pub fn criterion_convergence() -> CriterionReport {
    timed(6, "asymptotic convergence exponents", 120.0, || {
        let rule = Rule::Between {
            lo: -1.0 - 1e-12,
            hi: -0.5,
        };
        let mut checks = Vec::new();
        for drive in [1.0, 2.0] {
            for (x, theta) in [(2.0, 0.0), (1.0, 0.5), (3.0, 1.0)] {
                let slope = DetectionPoint::radial(x, theta)
                    .and_then(|p| fitted_slope(|n| amplitude_deviation(n, &p, drive)));
                checks.push(Check::from_result(
                    format!("amplitude slope (drive {drive}, x {x}, theta {theta})"),
                    slope,
                    rule,
                ));
            }
            checks.push(Check::from_result(
                format!("distribution slope (drive {drive})"),
                fitted_slope(|n| distribution_deviation(n, drive)),
                rule,
            ));
        }
        checks
    })
}

/// `(gamma, branch)` pairs with a critical state.
pub const JACKIW_CASES: [(f64, u32); 6] =
    [(0.5, 0), (1.0, 0), (1.0, 1), (2.0, 1), (3.0, 2), (5.0, 3)];

fn jackiw_checks(gamma: f64, branch: u32) -> Result<Vec<Check>> {
    let nu = crate::phase::find_nu(gamma, branch)?;
    let (state, params) = jackiw_state(gamma, branch, default_dim(nu, gamma))?;
    let ops = build_operators(state.dim())?;
    let tag = format!("(gamma {gamma}, s {branch})");
    let s = 2.0 * branch as f64;
    Ok(vec![
        Check::new(
            format!("u1 {tag}"),
            uncertainty_u1(&state)?,
            Rule::Abs {
                expected: 0.25,
                tolerance: 1e-8,
            },
        ),
        Check::new(
            format!("recursion residual {tag}"),
            recursion_residual(&state, &params),
            Rule::AtMost { limit: 1e-10 },
        ),
        Check::new(
            format!("|<C>| {tag}"),
            expectation(&ops.c, &state)?.norm(),
            Rule::AtMost { limit: 1e-10 },
        ),
        Check::new(
            format!("<N> {tag}"),
            expectation(&ops.n, &state)?.re,
            Rule::Abs {
                expected: nu,
                tolerance: 1e-8,
            },
        ),
        Check::new(
            format!("nu {tag}"),
            nu,
            Rule::Between { lo: s, hi: s + 1.0 },
        ),
    ])
}

/// Smallest `u1` over randomly perturbed critical states.
pub fn perturbed_u1_minimum(samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = Vec::new();
    for &(g, s) in &JACKIW_CASES {
        let nu = crate::phase::find_nu(g, s)?;
        bases.push(jackiw_state(g, s, default_dim(nu, g))?.0);
    }
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let base = &bases[rng.random_range(0..bases.len())];
        let eps = 10f64.powf(rng.random_range(-6.0..-0.5));
        let active = base.dim() - 10;
        let coeffs: Vec<Complex> = base
            .coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n < active {
                    c + eps * Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                } else {
                    *c
                }
            })
            .collect();
        match uncertainty_u1(&FockState::from_coefficients(coeffs)?) {
            Ok(u) => worst = worst.min(u),
            Err(Error::UndefinedProduct(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

/// Critical states minimize the number-cosine uncertainty product.
pub fn criterion_jackiw() -> CriterionReport {
    timed(7, "critical-state suite", 60.0, || {
        let mut checks: Vec<Check> = JACKIW_CASES
            .iter()
            .flat_map(|&(g, s)| {
                jackiw_checks(g, s).unwrap_or_else(|e| {
                    vec![Check::from_result(
                        format!("critical state (gamma {g}, s {s})"),
                        Err(e),
                        Rule::Flag,
                    )]
                })
            })
            .collect();
        checks.push(Check::from_result(
            "min u1 over 1000 perturbed states",
            perturbed_u1_minimum(1000, 0x5eed),
            Rule::AtLeast { limit: 0.25 - 1e-9 },
        ));
        checks
    })
}

fn radial_peak(k: i64, drive: f64, weight_by_x: bool) -> (f64, f64) {
    (0..=8000)
        .map(|i| {
            let x = i as f64 * 1e-3;
            let p = DetectionPoint {
                x,
                phi: 0.0,
                theta: 0.0,
            };
            let v = joint_amplitude_asymptotic(k, &p, drive).value.norm_sqr();
            (x, if weight_by_x { x * v } else { v })
        })
        .fold(
            (0.0, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 { b } else { a },
        )
}

/// Qualitative features of the joint-probability figures.
pub fn criterion_figure_shapes() -> CriterionReport {
    timed(8, "figure-shape checks", 120.0, || {
        let mut checks: Vec<Check> = [
            (0.3, Shape::Monotonic),
            (0.6, Shape::Oscillatory),
            (1.0, Shape::Oscillatory),
            (1.5, Shape::Oscillatory),
        ]
        .into_iter()
        .map(|(s, want)| {
            Check::flag(
                format!("profile at s = {s} is {want:?}"),
                shape_at(4.0, 10.0, s) == want,
            )
        })
        .collect();
        for (s, expected) in [
            (0.3, 1.10e-5),
            (0.6, 9.15e-5),
            (1.0, 1.97e-4),
            (1.5, 1.86e-4),
        ] {
            let point = DetectionPoint {
                x: 10.0,
                phi: 0.0,
                theta: s * 10.0,
            };
            let kmax = significant_band(gamma_of(&point, 4.0)) as u64;
            let peak = k_profile(&point, 4.0, kmax).into_iter().fold(0.0, f64::max);
            checks.push(Check::new(
                format!("profile maximum at s = {s}"),
                peak,
                Rule::Rel {
                    expected,
                    tolerance: 5e-3,
                },
            ));
        }
        let grid: Vec<f64> = (1..=80).map(|i| i as f64 * 0.05).collect();
        let t = shape_transitions(4.0, 10.0, &grid);
        checks.push(Check::new(
            "number of shape transitions",
            t.len() as f64,
            Rule::Abs {
                expected: 2.0,
                tolerance: 0.0,
            },
        ));
        checks.push(Check::new(
            "lower boundary tangent",
            t.first().copied().unwrap_or(f64::NAN),
            Rule::Rel {
                expected: 0.4,
                tolerance: 0.2,
            },
        ));
        checks.push(Check::new(
            "upper boundary tangent",
            t.last().copied().unwrap_or(f64::NAN),
            Rule::Rel {
                expected: 2.8,
                tolerance: 0.2,
            },
        ));
        let (x_peak, _) = radial_peak(0, 2.0, true);
        checks.push(Check::new(
            "k = 0 radial-density peak position",
            x_peak,
            Rule::Rel {
                expected: 2.0,
                tolerance: 0.1,
            },
        ));
        checks.push(Check::new(
            "k = 0 |amplitude|^2 peak position",
            radial_peak(0, 2.0, false).0,
            Rule::Info,
        ));
        let peaks: Vec<f64> = (0..=25).map(|k| radial_peak(k, 2.0, false).1).collect();
        let dominant = peaks[0].min(peaks[1]);
        let rest = peaks[2..].iter().copied().fold(0.0, f64::max);
        checks.push(Check::new(
            "min(k=0,1) peak over max |k|>=2 peak",
            dominant / rest,
            Rule::AtLeast { limit: 1.0 },
        ));
        checks
    })
}

/// Phase-operator algebra on interior rows.
pub fn criterion_operator_algebra() -> CriterionReport {
    timed(
        9,
        "operator-algebra suite",
        5.0,
        || match operator_algebra(40) {
            Ok(c) => c,
            Err(e) => vec![Check::from_result("build operators", Err(e), Rule::Flag)],
        },
    )
}

fn operator_algebra(dim: usize) -> Result<Vec<Check>> {
    let o = build_operators(dim)?;
    let id = FockOperator::identity(dim);
    let i = Complex::new(0.0, 1.0);
    let rows = dim - 1;
    let rule = Rule::AtMost { limit: 1e-13 };
    let pairs: [(&str, FockOperator, FockOperator); 6] = [
        ("E E+ = 1", &o.e * &o.e_dag, id.clone()),
        ("E+ E = 1 - P0", &o.e_dag * &o.e, id.clone() - o.p0.clone()),
        (
            "C^2 + S^2 = 1 - P0/2",
            &o.c * &o.c + &o.s * &o.s,
            id - o.p0.scale(Complex::new(0.5, 0.0)),
        ),
        ("[N, C] = -i S", o.n.commutator(&o.c), o.s.scale(-i)),
        ("[N, S] = i C", o.n.commutator(&o.s), o.c.scale(i)),
        (
            "[C, S] = (i/2) P0",
            o.c.commutator(&o.s),
            o.p0.scale(0.5 * i),
        ),
    ];
    Ok(pairs
        .into_iter()
        .map(|(name, a, b)| Check::new(name, a.max_deviation_rows(&b, rows), rule))
        .collect())
}

/// All nine criteria in order.
pub fn acceptance_suite() -> Vec<CriterionReport> {
    vec![
        criterion_occupation_table(),
        criterion_intensity_mapping(),
        criterion_normalization(),
        criterion_entropy_equality(),
        criterion_consistency(),
        criterion_convergence(),
        criterion_jackiw(),
        criterion_figure_shapes(),
        criterion_operator_algebra(),
    ]
}

/// Elementary identities plus the quick consistency matrix.
pub fn quick_suite() -> Vec<CriterionReport> {
    let identities = timed(0, "elementary identities", 60.0, || {
        let p0 = DetectionPoint {
            x: 0.0,
            phi: 0.0,
            theta: 0.7,
        };
        let mut v = vec![
            Check::new(
                "J_3(0)",
                bessel_j(3, 0.0),
                Rule::Abs {
                    expected: 0.0,
                    tolerance: 0.0,
                },
            ),
            Check::from_result(
                "<5| D(0) |5>",
                element(0, 5, SigmaValue::new(Complex::new(0.0, 0.0))).map(|z| z.re),
                Rule::Abs {
                    expected: 1.0,
                    tolerance: 0.0,
                },
            ),
            Check::new(
                "S_photon(q = 0)",
                von_neumann_photon(0.0),
                Rule::Abs {
                    expected: 0.0,
                    tolerance: 0.0,
                },
            ),
            Check::new(
                "linear entropy (q = 0)",
                linear_entropy_photon(0.0),
                Rule::Abs {
                    expected: 0.0,
                    tolerance: 1e-16,
                },
            ),
            Check::new(
                "k = 2 asymptotic amplitude at the origin",
                joint_amplitude_asymptotic(2, &p0, 2.0).value.norm(),
                Rule::Abs {
                    expected: 0.0,
                    tolerance: 0.0,
                },
            ),
        ];
        v.extend(operator_algebra(12).unwrap_or_default());
        v
    });
    let matrix = timed(5, "quick consistency matrix", 60.0, || {
        consistency_matrix(Level::Quick)
            .into_iter()
            .map(|e| {
                Check::from_result(
                    format!("{} vs {}", e.operation, e.oracle),
                    e.max_deviation
                        .ok_or_else(|| Error::Config(e.error.unwrap_or_default())),
                    Rule::AtMost { limit: e.tolerance },
                )
            })
            .collect()
    });
    vec![identities, matrix]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        assert!(Rule::Rel {
            expected: 2.0,
            tolerance: 0.1
        }
        .accepts(2.1));
        assert!(!Rule::Between { lo: 0.0, hi: 1.0 }.accepts(1.0));
        assert!(Rule::Info.accepts(f64::NAN));
        assert!(!Rule::AtMost { limit: 1.0 }.accepts(f64::NAN));
    }

    #[test]
    fn relaxing_rejudges_checks() {
        let mut r = timed(0, "t", 1.0, || {
            vec![Check::new("a", 1.5, Rule::AtMost { limit: 1.0 })]
        });
        assert!(!r.pass);
        r.relax(2.0);
        assert!(r.pass);
        assert_eq!(r.checks[0].rule, Rule::AtMost { limit: 2.0 });
    }

    #[test]
    fn quick_suite_passes() {
        for r in quick_suite() {
            assert!(
                r.pass,
                "{}: {:?}",
                r.summary(),
                r.failures().collect::<Vec<_>>()
            );
        }
    }
}
