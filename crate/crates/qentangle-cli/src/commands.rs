use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use qentangle::params::{occupation_coefficient, reference_lasers, PhysicalConfig};
use qentangle::phase::{
    build_operators, default_dim, expectation, find_nu, jackiw_state, recursion_residual,
    root_residual, uncertainty_u1,
};
use qentangle::verify::{acceptance_suite, quick_suite, CriterionReport};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::table::Table;

/// Extra laser row for the occupation table.
#[derive(Debug, Clone, Default, Args)]
pub struct CustomLaser {
    /// Add a row for a laser with this bandwidth ratio `omega/d omega`, at
    /// the configured photon energy.
    #[arg(long)]
    pub bandwidth_ratio: Option<f64>,
    /// Label of the extra row.
    #[arg(long, default_value = "custom")]
    pub name: String,
}

pub fn occupation_table(custom: &CustomLaser, cfg: &PhysicalConfig) -> CliResult<Table> {
    let mut t = Table::new(
        "occupation_table",
        &[
            "laser",
            "photon energy [eV]",
            "omega/d omega",
            "coefficient [per W/cm^2]",
            "tabulated [per W/cm^2]",
            "mean occupation at configured intensity",
        ],
    );
    for l in reference_lasers() {
        let c = occupation_coefficient(l.photon_energy_ev, l.bandwidth_ratio);
        t.push(vec![
            l.name.into(),
            l.photon_energy_ev.into(),
            l.bandwidth_ratio.into(),
            c.into(),
            l.tabulated_coefficient.into(),
            (c * cfg.intensity_w_cm2).into(),
        ]);
    }
    if let Some(bw) = custom.bandwidth_ratio {
        if !(bw.is_finite() && bw > 0.0) {
            return Err(CliError::Input(format!(
                "bandwidth ratio must be > 0, got {bw}"
            )));
        }
        let c = occupation_coefficient(cfg.photon_energy_ev, bw);
        t.push(vec![
            custom.name.clone().into(),
            cfg.photon_energy_ev.into(),
            bw.into(),
            c.into(),
            "".into(),
            (c * cfg.intensity_w_cm2).into(),
        ]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    /// Elementary identities and the quick oracle matrix.
    Quick,
    /// The entire acceptance suite.
    Full,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub tolerance_factor: f64,
    pub pass: bool,
    pub failed_checks: usize,
    pub criteria: Vec<CriterionReport>,
}

pub fn verify(level: VerifyLevel, tolerance_factor: f64) -> CliResult<VerifyReport> {
    if !(tolerance_factor.is_finite() && tolerance_factor > 0.0) {
        return Err(CliError::Input(format!(
            "tolerance factor must be > 0, got {tolerance_factor}"
        )));
    }
    let mut criteria = match level {
        VerifyLevel::Quick => quick_suite(),
        VerifyLevel::Full => acceptance_suite(),
    };
    if tolerance_factor != 1.0 {
        criteria.iter_mut().for_each(|c| c.relax(tolerance_factor));
    }
    let failed_checks = criteria.iter().map(|c| c.failures().count()).sum();
    let pass = criteria.iter().all(|c| c.pass);
    Ok(VerifyReport {
        level,
        tolerance_factor,
        pass,
        failed_checks,
        criteria,
    })
}

pub fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> CliResult<PathBuf> {
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

#[derive(Debug, Clone, Args)]
pub struct JackiwArgs {
    /// Coupling `gamma > 0` of the critical state.
    #[arg(long)]
    pub gamma: f64,
    /// Branch `s`; the mean photon number lies in `(2s, 2s + 1)`.
    #[arg(long, default_value_t = 0)]
    pub branch: u32,
    /// Fock basis size; defaults to `ceil(nu) + ceil(gamma) + 60`.
    #[arg(long)]
    pub dim: Option<usize>,
}

pub fn jackiw(args: &JackiwArgs) -> CliResult<(Table, Table)> {
    let nu = find_nu(args.gamma, args.branch)?;
    let dim = args.dim.unwrap_or_else(|| default_dim(nu, args.gamma));
    let (state, params) = jackiw_state(args.gamma, args.branch, dim)?;
    let ops = build_operators(dim)?;
    let mean_n = expectation(&ops.n, &state)?.re;
    let mut summary = Table::new(
        "jackiw_summary",
        &[
            "gamma",
            "branch",
            "dim",
            "nu",
            "mean N",
            "u1",
            "recursion residual",
            "root residual",
        ],
    );
    summary.push(vec![
        args.gamma.into(),
        i64::from(args.branch).into(),
        (dim as i64).into(),
        nu.into(),
        mean_n.into(),
        uncertainty_u1(&state)?.into(),
        recursion_residual(&state, &params).into(),
        root_residual(args.gamma, nu).into(),
    ]);
    let mut coeffs = Table::new("jackiw_state", &["n", "re a_n", "im a_n", "|a_n|^2"]);
    for (n, a) in state.coefficients.iter().enumerate() {
        coeffs.push(vec![
            (n as i64).into(),
            a.re.into(),
            a.im.into(),
            a.norm_sqr().into(),
        ]);
    }
    Ok((summary, coeffs))
}
