//! Flags win over the optional JSON config file, which wins over defaults.
//! `THREADS` in the environment overrides the config file but not `--threads`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
    Latex,
}

/// Contents of `--config`. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub n_max: Option<u32>,
    pub primes: Option<Vec<u64>>,
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub window: Option<bool>,
    pub depth: Option<u32>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub format: Format,
    pub n_max: u32,
    pub primes: Vec<u64>,
    pub budget: u64,
    pub threads: usize,
    pub window: bool,
    pub depth: Option<u32>,
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Default, Clone)]
pub struct Flags {
    pub format: Option<Format>,
    pub n_max: Option<u32>,
    pub primes: Option<Vec<u64>>,
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub window: Option<bool>,
    pub depth: Option<u32>,
}

pub fn resolve(flags: &Flags, file: &FileConfig, env_threads: Option<&str>, default_format: Format) -> Result<Config> {
    let env_threads = match env_threads {
        Some(s) => Some(s.trim().parse::<usize>().with_context(|| format!("THREADS={s} is not a number"))?),
        None => None,
    };
    let threads = flags.threads.or(env_threads).or(file.threads).unwrap_or(1);
    if threads == 0 {
        bail!("threads must be at least 1");
    }
    Ok(Config {
        format: flags.format.or(file.format).unwrap_or(default_format),
        n_max: flags.n_max.or(file.n_max).unwrap_or(8),
        primes: flags.primes.clone().or_else(|| file.primes.clone()).unwrap_or_default(),
        budget: flags.budget.or(file.budget).unwrap_or(poincare_core::counter::DEFAULT_BUDGET),
        threads,
        window: flags.window.or(file.window).unwrap_or(false),
        depth: flags.depth.or(file.depth),
    })
}
