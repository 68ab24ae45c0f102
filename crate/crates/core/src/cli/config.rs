//! Run configuration.
//!
//! Sources, lowest precedence first: built-in defaults, a `key = value`
//! file given by `--config`, command-line flags, and `QPL_<KEY>` variables.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::constants::DEFAULT_BITS;
use crate::pencil::classify::DEFAULT_PRIME_BUDGET;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{source_name} line {line}: {message}")]
    Syntax {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
    #[error("bad value for {key}: {value:?} ({message})")]
    BadValue {
        key: String,
        value: String,
        message: String,
    },
    #[error("QPL_CI=1 requires an explicit --seed")]
    SeedRequired,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub seed: u64,
    pub precision: u32,
    pub p_max: u64,
    pub fixtures_dir: PathBuf,
    pub network_enabled: bool,
    pub endpoint: String,
    pub cache_dir: PathBuf,
    pub retry_cap: usize,
    pub prime_budget: usize,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            precision: DEFAULT_BITS,
            p_max: 10_000,
            fixtures_dir: PathBuf::from("data"),
            network_enabled: false,
            endpoint: String::new(),
            cache_dir: PathBuf::from(".qpl-cache"),
            retry_cap: crate::pencil::algebra::DEFAULT_RETRY_CAP,
            prime_budget: DEFAULT_PRIME_BUDGET,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

pub const KEYS: [&str; 10] = [
    "seed",
    "precision",
    "p_max",
    "fixtures_dir",
    "network_enabled",
    "endpoint",
    "cache_dir",
    "retry_cap",
    "prime_budget",
    "jobs",
];

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T, ConfigError> {
    let bad = |message: &str| ConfigError::BadValue {
        key: key.into(),
        value: value.into(),
        message: message.into(),
    };
    let v: T = value.trim().parse().map_err(|_| bad("not a number"))?;
    if v <= T::default() {
        return Err(bad("must be positive"));
    }
    Ok(v)
}

fn boolean(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(ConfigError::BadValue {
            key: key.into(),
            value: value.into(),
            message: "expected true or false".into(),
        }),
    }
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "seed" => {
                self.seed = value.trim().parse().map_err(|_| ConfigError::BadValue {
                    key: key.into(),
                    value: value.into(),
                    message: "not a non-negative integer".into(),
                })?
            }
            "precision" => self.precision = positive(key, value)?,
            "p_max" => self.p_max = positive(key, value)?,
            "fixtures_dir" => self.fixtures_dir = PathBuf::from(value.trim()),
            "network_enabled" => self.network_enabled = boolean(key, value)?,
            "endpoint" => self.endpoint = value.trim().to_string(),
            "cache_dir" => self.cache_dir = PathBuf::from(value.trim()),
            "retry_cap" => self.retry_cap = positive(key, value)?,
            "prime_budget" => self.prime_budget = positive(key, value)?,
            "jobs" => self.jobs = positive(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str, source_name: &str) -> Result<(), ConfigError> {
        for (ln, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                source_name: source_name.into(),
                line: ln + 1,
                message: "expected key = value".into(),
            })?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.apply_text(&text, &path.display().to_string())
    }

    /// Apply every `QPL_<KEY>` present in `env`. Returns whether a seed was set.
    pub fn apply_env(&mut self, env: &BTreeMap<String, String>) -> Result<bool, ConfigError> {
        let mut seed_set = false;
        for key in KEYS {
            if let Some(v) = env.get(&format!("QPL_{}", key.to_ascii_uppercase())) {
                self.set(key, v)?;
                seed_set |= key == "seed";
            }
        }
        Ok(seed_set)
    }
}

/// Flag values that override the file; `None` leaves the setting alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub precision: Option<u32>,
    pub p_max: Option<u64>,
    pub jobs: Option<usize>,
}

/// Resolve the configuration. `randomized` marks subcommands that consume
/// the seed; in CI mode they must be given one explicitly.
pub fn resolve(
    file: Option<&Path>,
    flags: &Overrides,
    env: &BTreeMap<String, String>,
    randomized: bool,
) -> Result<Config, ConfigError> {
    let mut cfg = Config::default();
    if let Some(path) = file {
        cfg.apply_file(path)?;
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if let Some(b) = flags.precision {
        cfg.set("precision", &b.to_string())?;
    }
    if let Some(p) = flags.p_max {
        cfg.set("p_max", &p.to_string())?;
    }
    if let Some(j) = flags.jobs {
        cfg.set("jobs", &j.to_string())?;
    }
    let env_seed = cfg.apply_env(env)?;
    let ci = env.get("QPL_CI").map_or(false, |v| v.trim() == "1");
    if ci && randomized && flags.seed.is_none() && !env_seed {
        return Err(ConfigError::SeedRequired);
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("qpl.conf");
        std::fs::write(&path, "seed = 1\np_max = 50 # comment\nprecision = 100\n").unwrap();
        let flags = Overrides {
            seed: Some(2),
            p_max: Some(60),
            ..Default::default()
        };
        let cfg = resolve(Some(&path), &flags, &env(&[("QPL_SEED", "3")]), false).unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.p_max, 60);
        assert_eq!(cfg.precision, 100);
        assert!(!cfg.network_enabled);
    }

    #[test]
    fn rejects_bad_input() {
        let mut cfg = Config::default();
        assert!(matches!(cfg.apply_text("p_max = 0", "t"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(cfg.apply_text("colour = red", "t"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(cfg.apply_text("\n\nseed", "t"), Err(ConfigError::Syntax { line: 3, .. })));
    }

    #[test]
    fn ci_needs_seed() {
        let ci = env(&[("QPL_CI", "1")]);
        assert_eq!(
            resolve(None, &Overrides::default(), &ci, true),
            Err(ConfigError::SeedRequired)
        );
        assert!(resolve(None, &Overrides::default(), &ci, false).is_ok());
        let flags = Overrides {
            seed: Some(0),
            ..Default::default()
        };
        assert!(resolve(None, &flags, &ci, true).is_ok());
    }
}
