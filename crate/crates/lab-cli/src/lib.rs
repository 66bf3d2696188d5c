//! Experiment runner behind the `hypdrift` binary: JSON configs, builtin
//! experiments, report files and the regression suite.

pub mod builtin;
pub mod catalog;
pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod suite;

use std::path::{Path, PathBuf};

pub use builtin::{builtin, builtins, BUILTIN_NAMES};
pub use config::{ExperimentConfig, SCHEMA_VERSION};
pub use error::{exit, CliError, Result};
pub use report::{without_timestamp, Check, Report, Status};
pub use runner::run_experiment;
pub use suite::{run_suite, SuiteOutcome};

/// Environment variable overriding the output directory.
pub const OUT_ENV: &str = "HYPDRIFT_OUT";

/// `--out`, then `HYPDRIFT_OUT`, then the config's `out`, then `hypdrift-out/<name>`.
pub fn output_dir(flag: Option<&Path>, env: Option<PathBuf>, config: &ExperimentConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or(env)
        .or_else(|| config.out.clone())
        .unwrap_or_else(|| PathBuf::from("hypdrift-out").join(&config.name))
}

/// A config file path, or a builtin name when no such file exists.
pub fn load_config(arg: &str) -> Result<ExperimentConfig> {
    let path = Path::new(arg);
    if path.exists() || arg.ends_with(".json") {
        ExperimentConfig::load(path)
    } else {
        builtin(arg)
    }
}
