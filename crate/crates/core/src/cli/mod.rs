//! Command-line front end.

pub mod commands;
pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::geometry::davenport::DEFAULT_QMC_POINTS;
pub use config::{Config, ConfigError, Overrides};
pub use report::{Format, RunReport, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Parser)]
#[command(name = "qpl", version, about = "Checks for quadruples of quinary alternating forms and quintic field densities")]
pub struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "jsonl")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Table1Command {
    /// Build the cusp dissection and compare it with the bundled table.
    Generate {
        /// Also write the dissection in table format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every row of a table file against the generated dissection.
    Verify {
        #[arg(long)]
        table: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate or verify the cusp dissection.
    #[command(subcommand)]
    Table1(Table1Command),
    /// Torus weight of one coordinate, or of all forty.
    Weights {
        #[arg(long)]
        coord: Option<String>,
    },
    /// Exponents of the invariant measure in s1..s7.
    Haar,
    /// Classify each quadruple of a file.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Include the characteristic quintic and factorization data.
        #[arg(long)]
        detail: bool,
    },
    /// Local mass at p, or at infinity.
    Beta {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, conflicts_with = "p")]
        infinity: bool,
    },
    /// Zeta values, field-density constants and the two c5 evaluations.
    Constants {
        #[arg(long)]
        p_max: Option<u64>,
        /// Working precision in bits.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Euler-factor identities and S5 class data.
    Identities,
    /// p^2 times the series bounding the weakly divisible count.
    WpBound {
        #[arg(long, required = true, num_args = 1..)]
        p: Vec<u64>,
    },
    /// Spread of the normalized orbit-map Jacobian over random chart points.
    Jacobian {
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Use the first quadruple of this file instead of a random one.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Lattice point count against volume for a region file or a random batch.
    Davenport {
        #[arg(long)]
        region: Option<PathBuf>,
        /// Number of random sheared ellipsoids.
        #[arg(long)]
        batch: Option<usize>,
        #[arg(long, default_value_t = 1e6)]
        max_shear: f64,
        /// Quasi-Monte Carlo points per region.
        #[arg(long, default_value_t = DEFAULT_QMC_POINTS)]
        points: usize,
    },
    /// Classify random quadruples from a box.
    Sample {
        #[arg(long)]
        radius: i64,
        #[arg(long)]
        count: usize,
    },
    /// Download a local field table into the cache.
    Fetch {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table1(Table1Command::Generate { .. }) => "table1 generate",
            Command::Table1(Table1Command::Verify { .. }) => "table1 verify",
            Command::Weights { .. } => "weights",
            Command::Haar => "haar",
            Command::Classify { .. } => "classify",
            Command::Beta { .. } => "beta",
            Command::Constants { .. } => "constants",
            Command::Identities => "identities",
            Command::WpBound { .. } => "wp-bound",
            Command::Jacobian { .. } => "jacobian",
            Command::Davenport { .. } => "davenport",
            Command::Sample { .. } => "sample",
            Command::Fetch { .. } => "fetch",
        }
    }

    pub fn randomized(&self) -> bool {
        matches!(
            self,
            Command::Classify { .. }
                | Command::Jacobian { .. }
                | Command::Davenport { .. }
                | Command::Sample { .. }
        )
    }
}

/// What the process should print and return.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub report: Option<RunReport>,
}

fn usage_error(message: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {}\n", message),
        code: EXIT_USAGE,
        report: None,
    }
}

fn inputs_digest(cli: &Cli, cfg: &Config) -> String {
    let mut cfg = cfg.clone();
    cfg.jobs = 0;
    let files: Vec<serde_json::Value> = commands::input_files(&cli.command, &cfg)
        .iter()
        .map(|p| {
            let hash = std::fs::read(p).ok().map(|b| report::sha256_hex(&b));
            json!({ "path": p.display().to_string(), "sha256": hash })
        })
        .collect();
    let doc = json!({
        "command": format!("{:?}", cli.command),
        "config": cfg,
        "files": files,
    });
    report::sha256_hex(doc.to_string().as_bytes())
}

/// Parse `args` (including the program name), resolve the configuration
/// against `env`, and run the subcommand.
pub fn run<I, T>(args: I, env: &BTreeMap<String, String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                    report: None,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                    report: None,
                },
            };
        }
    };
    let (p_max, precision) = match &cli.command {
        Command::Constants { p_max, precision } => (*p_max, *precision),
        _ => (None, None),
    };
    let flags = Overrides {
        seed: cli.seed,
        precision,
        p_max,
        jobs: cli.jobs,
    };
    let cfg = match config::resolve(cli.config.as_deref(), &flags, env, cli.command.randomized()) {
        Ok(c) => c,
        Err(e) => return usage_error(e.to_string()),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
        Ok(p) => p,
        Err(e) => return usage_error(e.to_string()),
    };
    let records = match pool.install(|| commands::dispatch(&cli.command, &cfg)) {
        Ok(r) => r,
        Err(e) => return usage_error(e.to_string()),
    };
    let report = RunReport::new(cli.command.name(), inputs_digest(&cli, &cfg), records);
    Outcome {
        stdout: report.render(cli.format),
        stderr: String::new(),
        code: report.exit_code,
        report: Some(report),
    }
}

/// The process environment, restricted to `QPL_` variables.
pub fn qpl_env() -> BTreeMap<String, String> {
    std::env::vars().filter(|(k, _)| k.starts_with("QPL_")).collect()
}
