//! Settings file: sampler, ingestion and semantics tables, in TOML or JSON.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use bongard_core::{IngestOptions, SamplerConfig, Semantics};
use serde::Deserialize;

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub sampler: SamplerConfig,
    pub ingest: IngestOptions,
    pub semantics: Semantics,
}

impl Settings {
    /// Reads `.json` files as JSON and everything else as TOML.
    pub fn load(path: &Path) -> Result<Settings> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let parsed = if is_json {
            serde_json::from_str(&text).map_err(anyhow::Error::from)
        } else {
            toml::from_str(&text).map_err(anyhow::Error::from)
        };
        match parsed {
            Ok(s) => Ok(s),
            Err(e) => bail!("invalid config {}: {e}", path.display()),
        }
    }
}
