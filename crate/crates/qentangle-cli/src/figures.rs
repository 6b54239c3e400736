use clap::Args;
use qentangle::density::{linear_entropy_photon, photon_dist_asymptotic, von_neumann_photon};
use qentangle::entangled::{
    classify_shape, gamma_of, joint_probability_grid, k_profile, shape_transitions,
    significant_band, DetectionPoint, Shape,
};
use qentangle::params::{intensity_for_q, q_for_intensity, PhysicalConfig};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Figure parameters; unset values take the figure's own defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct FigureArgs {
    /// Oscillation amplitude over packet width (figures 1 to 3).
    #[arg(long)]
    pub drive: Option<f64>,
    /// Points per axis of the figure 1 grid.
    #[arg(long, default_value_t = 161)]
    pub grid_points: usize,
}

const FIG1_K: [i64; 4] = [0, 1, 5, 25];
const FIG2_S: [f64; 4] = [0.3, 0.6, 1.0, 1.5];
const FIG2_X: f64 = 10.0;
const FIG4_Q: [f64; 4] = [2.5, 5.0, 25.0, 50.0];

pub fn figure(n: u8, args: &FigureArgs, cfg: &PhysicalConfig) -> CliResult<Vec<Table>> {
    if let Some(d) = args.drive {
        if !(d.is_finite() && d >= 0.0) {
            return Err(CliError::Input(format!("drive must be >= 0, got {d}")));
        }
    }
    match n {
        1 => fig1(args.drive.unwrap_or(2.0), args.grid_points),
        2 => Ok(fig2(args.drive.unwrap_or(4.0))),
        3 => Ok(fig3(args.drive.unwrap_or(4.0))),
        4 => fig4(cfg),
        5 => Ok(vec![entropy_sweep("fig5", cfg, 10.0, 14.0, false)]),
        6 => Ok(vec![entropy_sweep("fig6", cfg, 10.0, 16.0, true)]),
        _ => Err(CliError::Input(format!(
            "figure index must be 1..=6, got {n}"
        ))),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::Monotonic => "monotonic",
        Shape::Oscillatory => "oscillatory",
    }
}

fn fig1(drive: f64, points: usize) -> CliResult<Vec<Table>> {
    if points < 2 {
        return Err(CliError::Input(format!(
            "grid needs >= 2 points per axis, got {points}"
        )));
    }
    let axis = linspace(0.0, 8.0, points);
    FIG1_K
        .iter()
        .map(|&k| {
            let grid = joint_probability_grid(k, &axis, &axis, drive)?;
            let mut t = Table::new(
                format!("fig1_k{k}"),
                &["x [r/w]", "theta [t/tau]", "k", "probability [1/w^2]"],
            );
            for (i, &x) in grid.x.iter().enumerate() {
                for (j, &theta) in grid.theta.iter().enumerate() {
                    t.push(vec![
                        x.into(),
                        theta.into(),
                        k.into(),
                        grid.values[i * grid.theta.len() + j].into(),
                    ]);
                }
            }
            Ok(t)
        })
        .collect()
}

/// `|amplitude|^2` for `k` in `-kmax..=kmax`, mirrored from `k >= 0`.
fn symmetric_profile(point: &DetectionPoint, drive: f64) -> (i64, Vec<f64>) {
    let kmax = significant_band(gamma_of(point, drive));
    let half = k_profile(point, drive, kmax as u64);
    let full = half
        .iter()
        .skip(1)
        .rev()
        .chain(half.iter())
        .copied()
        .collect();
    (kmax, full)
}

fn fig2(drive: f64) -> Vec<Table> {
    let mut profiles = Table::new(
        "fig2",
        &[
            "s [theta/x]",
            "x [r/w]",
            "theta [t/tau]",
            "k",
            "probability [1/w^2]",
            "relative",
        ],
    );
    let mut shapes = Table::new(
        "fig2_shapes",
        &["s [theta/x]", "max probability [1/w^2]", "shape"],
    );
    for s in FIG2_S {
        let point = DetectionPoint {
            x: FIG2_X,
            phi: 0.0,
            theta: s * FIG2_X,
        };
        let (kmax, p) = symmetric_profile(&point, drive);
        let peak = p.iter().copied().fold(0.0, f64::max);
        for (i, &v) in p.iter().enumerate() {
            let k = i as i64 - kmax;
            let rel = if peak > 0.0 { v / peak } else { 0.0 };
            profiles.push(vec![
                s.into(),
                FIG2_X.into(),
                point.theta.into(),
                k.into(),
                v.into(),
                rel.into(),
            ]);
        }
        let shape = classify_shape(&p[kmax as usize..]);
        shapes.push(vec![s.into(), peak.into(), shape_name(shape).into()]);
    }
    vec![profiles, shapes]
}

fn fig3(drive: f64) -> Vec<Table> {
    let xs: Vec<f64> = (1..=48).map(|i| 0.25 * i as f64).collect();
    let thetas: Vec<f64> = (0..=144).map(|i| 0.25 * i as f64).collect();
    let cells: Vec<(f64, f64, Shape)> = xs
        .par_iter()
        .flat_map_iter(|&x| {
            thetas.iter().map(move |&theta| {
                let point = DetectionPoint { x, phi: 0.0, theta };
                let kmax = significant_band(gamma_of(&point, drive)) as u64;
                (x, theta, classify_shape(&k_profile(&point, drive, kmax)))
            })
        })
        .collect();
    let mut map = Table::new(
        "fig3",
        &["x [r/w]", "theta [t/tau]", "s [theta/x]", "shape"],
    );
    for (x, theta, shape) in cells {
        map.push(vec![
            x.into(),
            theta.into(),
            (theta / x).into(),
            shape_name(shape).into(),
        ]);
    }
    let s_grid: Vec<f64> = (1..=250).map(|i| 0.02 * i as f64).collect();
    let mut bounds = Table::new("fig3_boundaries", &["x [r/w]", "index", "s [theta/x]"]);
    for x in [2.0, 4.0, 6.0, 8.0, 10.0, 12.0] {
        for (i, s) in shape_transitions(drive, x, &s_grid).into_iter().enumerate() {
            bounds.push(vec![x.into(), (i as i64).into(), s.into()]);
        }
    }
    vec![map, bounds]
}

fn fig4(cfg: &PhysicalConfig) -> CliResult<Vec<Table>> {
    let mut t = Table::new("fig4", &["q", "intensity [W/cm^2]", "k", "p_k"]);
    for q in FIG4_Q {
        let intensity = intensity_for_q(q, cfg.photon_energy_ev, cfg.lambda_over_w);
        let d = photon_dist_asymptotic(q, None)?;
        for (k, p) in d.iter() {
            t.push(vec![q.into(), intensity.into(), k.into(), p.into()]);
        }
    }
    Ok(vec![t])
}

fn entropy_sweep(
    name: &str,
    cfg: &PhysicalConfig,
    lo_decade: f64,
    hi_decade: f64,
    linear: bool,
) -> Table {
    let steps = ((hi_decade - lo_decade) * 20.0).round() as usize;
    let intensities: Vec<f64> = std::iter::once(0.0)
        .chain(
            linspace(lo_decade, hi_decade, steps + 1)
                .into_iter()
                .map(|e| 10f64.powf(e)),
        )
        .collect();
    let rows: Vec<Vec<Cell>> = intensities
        .par_iter()
        .map(|&i| {
            let q = q_for_intensity(i, cfg.photon_energy_ev, cfg.lambda_over_w);
            let mut row: Vec<Cell> = vec![i.into(), q.into(), von_neumann_photon(q).into()];
            if linear {
                row.push(linear_entropy_photon(q).into());
            }
            row
        })
        .collect();
    let columns: &[&'static str] = if linear {
        &["intensity [W/cm^2]", "q", "S", "H"]
    } else {
        &["intensity [W/cm^2]", "q", "S"]
    };
    let mut t = Table::new(name, columns);
    rows.into_iter().for_each(|r| t.push(r));
    t
}
