//! Recipe files: a description plus the argument list of one invocation.

use std::path::Path;

use clap::Parser;
use serde::Deserialize;

use crate::{Cli, CliError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    pub description: String,
    pub args: Vec<String>,
}

pub fn parse(text: &str) -> Result<(String, Cli), CliError> {
    let r: Recipe = toml::from_str(text).map_err(|e| CliError::Usage(format!("bad recipe: {e}")))?;
    let argv = std::iter::once("lrwalk".to_string()).chain(r.args);
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(format!("bad recipe arguments: {e}")))?;
    Ok((r.description, cli))
}

pub fn load(path: &Path) -> Result<(String, Cli), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read recipe {}: {e}", path.display())))?;
    parse(&text)
}
