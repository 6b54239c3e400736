//! Physical inputs and the dimensionless groups derived from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pair-creation energy `2 m c^2` in eV.
pub const TWO_MC2_EV: f64 = 1.021_998e6;
/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.035_999;
/// Prefactor of the engineering formula for the mean occupation number.
pub const OCCUPATION_PREFACTOR: f64 = 2.7e-5;
/// Default ratio of wavelength to packet width.
pub const DEFAULT_LAMBDA_OVER_W: f64 = 4.0 * PI * 1.0e3;

/// Physical parameters, in eV, cm and W/cm^2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConfig {
    #[serde(rename = "photon_energy_eV")]
    pub photon_energy_ev: f64,
    #[serde(rename = "intensity_W_cm2")]
    pub intensity_w_cm2: f64,
    #[serde(default = "default_width")]
    pub packet_width_cm: f64,
    #[serde(default = "default_lambda_over_w")]
    pub lambda_over_w: f64,
    #[serde(default)]
    pub n0: u64,
    #[serde(default)]
    pub plasma_ratio: f64,
    #[serde(default = "default_bandwidth")]
    pub bandwidth_ratio: f64,
}

fn default_width() -> f64 {
    1.0e-4
}

fn default_lambda_over_w() -> f64 {
    DEFAULT_LAMBDA_OVER_W
}

fn default_bandwidth() -> f64 {
    1.0
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        PhysicalConfig {
            photon_energy_ev: 1.0,
            intensity_w_cm2: 1.0e12,
            packet_width_cm: default_width(),
            lambda_over_w: DEFAULT_LAMBDA_OVER_W,
            n0: 0,
            plasma_ratio: 0.0,
            bandwidth_ratio: 1.0,
        }
    }
}

impl PhysicalConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("photon_energy_eV", self.photon_energy_ev),
            ("packet_width_cm", self.packet_width_cm),
            ("lambda_over_w", self.lambda_over_w),
            ("bandwidth_ratio", self.bandwidth_ratio),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        if !(self.intensity_w_cm2.is_finite() && self.intensity_w_cm2 >= 0.0) {
            return Err(Error::Config(format!(
                "intensity_W_cm2 must be finite and >= 0, got {}",
                self.intensity_w_cm2
            )));
        }
        if !(0.0..1.0).contains(&self.plasma_ratio) {
            return Err(Error::Config(format!(
                "plasma_ratio must lie in [0, 1), got {}",
                self.plasma_ratio
            )));
        }
        Ok(())
    }
}

/// Dimensionless groups consumed by every other module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Dimensionless intensity parameter.
    pub mu: f64,
    #[serde(rename = "Lambda_over_w")]
    pub lambda_bar_over_w: f64,
    /// Classical oscillation amplitude over packet width.
    pub drive: f64,
    /// `drive^2 / 2`.
    pub q: f64,
    /// Per-photon coupling `drive / (2 sqrt(n0))`; absent for `n0 = 0`.
    pub b: Option<f64>,
    pub mass_ratio: f64,
    pub omega_tau0: f64,
    pub tau_ratio: f64,
}

/// Computes the dimensionless groups.
///
/// ```
/// use qentangle::params::{derive, PhysicalConfig};
/// let p = derive(&PhysicalConfig::default()).unwrap();
/// assert!((p.mu - 1e-3).abs() < 1e-15);
/// assert!((p.drive - 2.0).abs() < 1e-12);
/// assert!((p.q - 2.0).abs() < 1e-12);
/// ```
pub fn derive(cfg: &PhysicalConfig) -> Result<DerivedParams> {
    cfg.validate()?;
    let mu = 1.0e-9 * cfg.intensity_w_cm2.sqrt() / cfg.photon_energy_ev;
    let lambda_bar_over_w = cfg.lambda_over_w / (2.0 * PI);
    let drive = mu * lambda_bar_over_w;
    let b = (cfg.n0 > 0).then(|| drive / (2.0 * (cfg.n0 as f64).sqrt()));
    let mass_ratio = (1.0 + cfg.plasma_ratio) / (1.0 - cfg.plasma_ratio);
    let omega_tau0 =
        0.5 * (TWO_MC2_EV / cfg.photon_energy_ev) * (2.0 * PI / cfg.lambda_over_w).powi(2);
    Ok(DerivedParams {
        mu,
        lambda_bar_over_w,
        drive,
        q: drive * drive / 2.0,
        b,
        mass_ratio,
        omega_tau0,
        tau_ratio: mass_ratio,
    })
}

impl DerivedParams {
    /// Per-photon coupling for an explicit occupation number.
    pub fn b_for(&self, n0: u64) -> Result<f64> {
        if n0 == 0 {
            return Err(Error::domain(
                "DerivedParams::b_for",
                "n0 = 0 has no per-photon coupling",
            ));
        }
        Ok(self.drive / (2.0 * (n0 as f64).sqrt()))
    }
}

/// Intensity in W/cm^2 that produces the given `q`.
pub fn intensity_for_q(q: f64, photon_energy_ev: f64, lambda_over_w: f64) -> f64 {
    let drive = (2.0 * q).sqrt();
    let mu = drive * 2.0 * PI / lambda_over_w;
    (mu * photon_energy_ev * 1.0e9).powi(2)
}

/// `q` for a given intensity.
pub fn q_for_intensity(intensity: f64, photon_energy_ev: f64, lambda_over_w: f64) -> f64 {
    let mu = 1.0e-9 * intensity.sqrt() / photon_energy_ev;
    let drive = mu * lambda_over_w / (2.0 * PI);
    drive * drive / 2.0
}

/// Mean occupation per unit intensity: `2.7e-5 (omega/d omega) / E_ph^4`.
pub fn occupation_coefficient(photon_energy_ev: f64, bandwidth_ratio: f64) -> f64 {
    OCCUPATION_PREFACTOR * bandwidth_ratio / photon_energy_ev.powi(4)
}

/// Mean photon occupation of the mode from the engineering formula.
pub fn mean_occupation(cfg: &PhysicalConfig) -> f64 {
    occupation_coefficient(cfg.photon_energy_ev, cfg.bandwidth_ratio) * cfg.intensity_w_cm2
}

/// Mean occupation from the underlying mode-density balance with pinned
/// constants, `pi/(16 alpha) (2mc^2/E)^2 (omega/d omega) mu^2`.
pub fn mean_occupation_from_constants(cfg: &PhysicalConfig) -> f64 {
    let mu = 1.0e-9 * cfg.intensity_w_cm2.sqrt() / cfg.photon_energy_ev;
    PI / (16.0 * FINE_STRUCTURE)
        * (TWO_MC2_EV / cfg.photon_energy_ev).powi(2)
        * cfg.bandwidth_ratio
        * mu
        * mu
}

/// A laser line of the occupation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Laser {
    pub name: String,
    pub photon_energy_ev: f64,
    pub bandwidth_ratio: f64,
    /// Tabulated coefficient, rounded to one significant figure.
    pub tabulated_coefficient: f64,
}

/// The three reference lasers.
pub fn reference_lasers() -> Vec<Laser> {
    [
        ("Ti:Sa 5.2 fs", 1.57, 2.0, 9.0e-6),
        ("Nd:Glass 5.2 ps", 1.17, 3.0e3, 6.0e-2),
        ("He-Ne CW", 1.96, 1.0e8, 2.0e3),
    ]
    .into_iter()
    .map(|(name, e, bw, tab)| Laser {
        name: name.to_string(),
        photon_energy_ev: e,
        bandwidth_ratio: bw,
        tabulated_coefficient: tab,
    })
    .collect()
}
