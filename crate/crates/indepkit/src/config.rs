//! Run configuration.
//!
//! Each setting comes from the first source that has it: a command-line
//! flag, an `INDEPKIT_*` environment variable, the TOML config file, or the
//! built-in default.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use indepkit_core::check::DEFAULT_ORACLE_BOUND;
use indepkit_core::implication::{Bounds, DEFAULT_UNIVERSE_LIMIT};
use indepkit_core::Notation;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Symbols {
    /// Unicode when the locale is UTF-8
    #[default]
    Auto,
    Ascii,
    Unicode,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchFile {
    pub max_attributes: Option<usize>,
    pub max_rows: Option<usize>,
    pub domain_size: Option<usize>,
    pub max_candidates: Option<u64>,
}

/// Contents of a config file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub oracle_bound: Option<u64>,
    pub saturation_limit: Option<usize>,
    pub format: Option<Format>,
    pub symbols: Option<Symbols>,
    pub seed: Option<u64>,
    pub search: Option<SearchFile>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }
}

/// Settings given as flags or environment variables.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// TOML config file
    #[arg(long, global = true, env = "INDEPKIT_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Largest number of groundings the oracle may enumerate
    #[arg(long, global = true, env = "INDEPKIT_ORACLE_BOUND", value_name = "N")]
    pub oracle_bound: Option<u64>,
    /// Largest attribute universe saturation accepts
    #[arg(long, global = true, env = "INDEPKIT_SATURATION_LIMIT", value_name = "N")]
    pub saturation_limit: Option<usize>,
    /// Counterexample search: attributes
    #[arg(long, global = true, env = "INDEPKIT_MAX_ATTRIBUTES", value_name = "N")]
    pub max_attributes: Option<usize>,
    /// Counterexample search: rows
    #[arg(long, global = true, env = "INDEPKIT_MAX_ROWS", value_name = "N")]
    pub max_rows: Option<usize>,
    /// Counterexample search: values per attribute
    #[arg(long, global = true, env = "INDEPKIT_DOMAIN_SIZE", value_name = "N")]
    pub domain_size: Option<usize>,
    /// Counterexample search: candidate budget
    #[arg(long, global = true, env = "INDEPKIT_MAX_CANDIDATES", value_name = "N")]
    pub max_candidates: Option<u64>,
    #[arg(long, global = true, env = "INDEPKIT_FORMAT", value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, env = "INDEPKIT_SYMBOLS", value_enum)]
    pub symbols: Option<Symbols>,
    /// Seed for generated random inputs
    #[arg(long, global = true, env = "INDEPKIT_SEED", value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub oracle_bound: u64,
    pub saturation_limit: usize,
    pub search: Bounds,
    pub format: Format,
    pub notation: Notation,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            oracle_bound: DEFAULT_ORACLE_BOUND,
            saturation_limit: DEFAULT_UNIVERSE_LIMIT,
            search: Bounds::default(),
            format: Format::Text,
            notation: Notation::Ascii,
            seed: 0,
        }
    }
}

fn utf8_locale() -> bool {
    ["LC_ALL", "LC_CTYPE", "LANG"]
        .iter()
        .filter_map(|k| std::env::var(k).ok())
        .find(|v| !v.is_empty())
        .map(|v| {
            let v = v.to_ascii_lowercase();
            v.contains("utf-8") || v.contains("utf8")
        })
        .unwrap_or(false)
}

impl RunConfig {
    /// Reads the config file named by `over`, if any, and layers `over` on top.
    pub fn resolve(over: &Overrides) -> Result<Self> {
        let file = match &over.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
                FileConfig::parse(&text).with_context(|| p.display().to_string())?
            }
            None => FileConfig::default(),
        };
        Self::layer(&file, over)
    }

    pub fn layer(file: &FileConfig, over: &Overrides) -> Result<Self> {
        let d = RunConfig::default();
        let s = file.search.clone().unwrap_or_default();
        let symbols = over.symbols.or(file.symbols).unwrap_or_default();
        let cfg = RunConfig {
            oracle_bound: over.oracle_bound.or(file.oracle_bound).unwrap_or(d.oracle_bound),
            saturation_limit: over
                .saturation_limit
                .or(file.saturation_limit)
                .unwrap_or(d.saturation_limit),
            search: Bounds::new(
                over.max_attributes
                    .or(s.max_attributes)
                    .unwrap_or(d.search.max_attributes),
                over.max_rows.or(s.max_rows).unwrap_or(d.search.max_rows),
                over.domain_size.or(s.domain_size).unwrap_or(d.search.domain_size),
            )
            .with_max_candidates(
                over.max_candidates
                    .or(s.max_candidates)
                    .unwrap_or(d.search.max_candidates),
            ),
            format: over.format.or(file.format).unwrap_or(d.format),
            notation: match symbols {
                Symbols::Ascii => Notation::Ascii,
                Symbols::Unicode => Notation::Unicode,
                Symbols::Auto if utf8_locale() => Notation::Unicode,
                Symbols::Auto => Notation::Ascii,
            },
            seed: over.seed.or(file.seed).unwrap_or(d.seed),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let b = &self.search;
        if self.oracle_bound == 0 || self.saturation_limit == 0 {
            bail!("oracle bound and saturation limit must be positive");
        }
        if b.max_attributes == 0 || b.max_rows == 0 || b.max_candidates == 0 {
            bail!("search bounds must be positive");
        }
        if b.domain_size < 2 {
            bail!("search domain size must be at least 2");
        }
        Ok(())
    }
}
