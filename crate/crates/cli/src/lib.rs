//! Scenario runner and catalog front end for `msk-core`.

pub mod catalog;
pub mod env;
pub mod error;
pub mod report;
pub mod runner;
pub mod scenario;

use std::collections::BTreeMap;
use std::path::Path;

pub use error::CliError;
pub use report::Report;
pub use runner::{run_scenario, RunOptions};
pub use scenario::Scenario;

/// Reads and runs a scenario file.
pub fn check_file(path: &Path, opts: RunOptions) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let sc = Scenario::from_json(&text)?;
    run_scenario(&sc, &path.display().to_string(), opts)
}

/// Parses `key=value` words.
pub fn parse_params<S: AsRef<str>>(words: &[S]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for w in words {
        let w = w.as_ref();
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| CliError::BadParameters(format!("expected key=value, got `{w}`")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::BadParameters(format!("parameter `{k}` given twice")));
        }
    }
    Ok(out)
}

/// The catalog entry as scenario JSON.
pub fn catalog_command<S: AsRef<str>>(name: &str, words: &[S]) -> Result<String, CliError> {
    Ok(catalog::build(name, &parse_params(words)?)?.to_json())
}
