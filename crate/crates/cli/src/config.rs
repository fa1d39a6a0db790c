//! Config resolution: explicit flag, then `MOTIONCURVE_CONFIG`, then defaults.

use std::path::Path;

use anyhow::{Context, Result};
use motioncurve::io::{read_config, RunConfig, CONFIG_ENV_VAR};

pub fn load(explicit: Option<&Path>) -> Result<RunConfig> {
    if let Some(path) = explicit {
        return read_config(path).with_context(|| format!("loading config {}", path.display()));
    }
    if let Ok(path) = std::env::var(CONFIG_ENV_VAR) {
        if !path.is_empty() {
            return read_config(Path::new(&path))
                .with_context(|| format!("loading config from ${CONFIG_ENV_VAR}={path}"));
        }
    }
    Ok(RunConfig::default())
}
