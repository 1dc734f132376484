//! `key = value` configuration files mirroring the global flags.
//!
//! Blank lines and lines starting with `#` are ignored. Recognized keys are
//! `format`, `max` and `seed`; anything else is a usage error so that typos
//! do not pass silently.

use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Usage(format!("unknown format '{s}' (expected text or json)"))),
        }
    }
}

/// Settings after merging defaults, the config file and flags.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Settings {
    pub format: Format,
    /// Suite range override; each suite documents what it bounds.
    pub max: Option<u32>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigFile {
    pub format: Option<Format>,
    pub max: Option<u32>,
    pub seed: Option<u64>,
}

fn number<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> CliResult<T> {
    v.parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: '{key}' needs a non-negative integer, got '{v}'")))
}

pub fn parse_config(text: &str) -> CliResult<ConfigFile> {
    let mut cfg = ConfigFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key=value", i + 1)));
        };
        let (k, v) = (k.trim(), v.trim());
        match k {
            "format" => cfg.format = Some(Format::parse(v)?),
            "max" => cfg.max = Some(number(k, v, i + 1)?),
            "seed" => cfg.seed = Some(number(k, v, i + 1)?),
            _ => return Err(CliError::Usage(format!("config line {}: unknown key '{k}'", i + 1))),
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> CliResult<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        let c = parse_config("# ranges\nmax = 4\n\nseed=7\nformat = json\n").unwrap();
        assert_eq!(c, ConfigFile { format: Some(Format::Json), max: Some(4), seed: Some(7) });
        assert!(parse_config("max=-1").is_err());
        assert!(parse_config("colour=red").is_err());
        assert!(parse_config("max").is_err());
    }
}
