use std::path::{Path, PathBuf};

use clap::Args;
use qentangle::params::{derive, DerivedParams, PhysicalConfig};

use crate::error::{CliError, CliResult};

/// Physical configuration: a JSON file plus per-field overrides.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON file with `PhysicalConfig` fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Intensity in W/cm^2.
    #[arg(long, global = true)]
    pub intensity: Option<f64>,
    /// Photon energy in eV.
    #[arg(long, global = true)]
    pub photon_energy: Option<f64>,
    /// Wavelength over packet width.
    #[arg(long, global = true)]
    pub lambda_over_w: Option<f64>,
    /// Initial photon occupation.
    #[arg(long, global = true)]
    pub n0: Option<u64>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> CliResult<(PhysicalConfig, DerivedParams)> {
        let mut cfg = match &self.config {
            Some(path) => read_config(path)?,
            None => PhysicalConfig::default(),
        };
        if let Some(v) = self.intensity {
            cfg.intensity_w_cm2 = v;
        }
        if let Some(v) = self.photon_energy {
            cfg.photon_energy_ev = v;
        }
        if let Some(v) = self.lambda_over_w {
            cfg.lambda_over_w = v;
        }
        if let Some(v) = self.n0 {
            cfg.n0 = v;
        }
        let derived = derive(&cfg).map_err(|e| CliError::Input(e.to_string()))?;
        Ok((cfg, derived))
    }
}

fn read_config(path: &Path) -> CliResult<PhysicalConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply_after_defaults() {
        let args = ConfigArgs {
            intensity: Some(4e12),
            ..ConfigArgs::default()
        };
        let (cfg, d) = args.resolve().unwrap();
        assert_eq!(cfg.intensity_w_cm2, 4e12);
        assert!((d.drive - 4.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_values_are_input_errors() {
        let args = ConfigArgs {
            photon_energy: Some(-1.0),
            ..ConfigArgs::default()
        };
        assert!(matches!(args.resolve(), Err(CliError::Input(_))));
    }
}
