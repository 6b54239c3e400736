use std::path::{Path, PathBuf};

use qentangle::params::{DerivedParams, PhysicalConfig};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Figure,
    OccupationTable,
    Verify,
    Jackiw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ChecksFailed,
    Error,
}

/// Record of one invocation, written beside its outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: CommandKind,
    pub arguments: Vec<String>,
    pub config: PhysicalConfig,
    pub derived: DerivedParams,
    pub outputs: Vec<PathBuf>,
    pub status: Status,
    pub error: Option<String>,
    pub tool_version: &'static str,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: CommandKind, config: PhysicalConfig, derived: DerivedParams) -> Self {
        RunManifest {
            command,
            arguments: std::env::args().skip(1).collect(),
            config,
            derived,
            outputs: Vec::new(),
            status: Status::Ok,
            error: None,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    pub fn finish(&mut self, outcome: &CliResult<()>) {
        (self.status, self.error) = match outcome {
            Ok(()) => (Status::Ok, None),
            Err(e @ CliError::ChecksFailed(_)) => (Status::ChecksFailed, Some(e.to_string())),
            Err(e) => (Status::Error, Some(e.to_string())),
        };
    }

    pub fn write(&self, dir: &Path) -> CliResult<PathBuf> {
        let path = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}
