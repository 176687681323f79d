//! Optional JSON config file: every field is a default that explicit
//! command-line flags override. Environment variables are never consulted,
//! so a (config, flags) pair fully determines a run.

use crate::{CliError, ModeArg};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub limit: Option<u64>,
    pub checkpoints: Option<Vec<u64>>,
    pub steps: Option<u64>,
    pub replicates: Option<u64>,
    pub seed: Option<u64>,
    pub mode: Option<String>,
    pub xi: Option<f64>,
    pub lil_n0: Option<u64>,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
}

impl FileConfig {
    /// The mode string parsed to the same vocabulary the --mode flag accepts.
    pub fn mode_arg(&self) -> Result<Option<ModeArg>, CliError> {
        match self.mode.as_deref() {
            None => Ok(None),
            Some("asymptotic") => Ok(Some(ModeArg::Asymptotic)),
            Some("empirical") => Ok(Some(ModeArg::Empirical)),
            Some("empirical-fixed") => Ok(Some(ModeArg::EmpiricalFixed)),
            Some(other) => Err(CliError::Config(format!(
                "config file mode '{other}' is not one of asymptotic, empirical, empirical-fixed"
            ))),
        }
    }
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|err| {
        CliError::Config(format!("cannot read config file {}: {err}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|err| {
        CliError::Config(format!(
            "config file {} is not valid: {err}",
            path.display()
        ))
    })
}
