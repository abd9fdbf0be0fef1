//! Batch front end for `spectrace-core`: TOML run configurations, command
//! dispatch, and CSV/JSON result tables with a JSON run manifest.

pub mod config;
pub mod run;
pub mod table;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

pub use config::{parse_config, RunConfig};
pub use run::{run, RunOutput};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] config::ConfigError),
    #[error("cannot read {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },
    #[error("solver: {0}")]
    Solver(spectrace_core::Error),
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
}

impl CliError {
    /// 2 for configuration problems, 3 for solver failures, 4 for requests
    /// beyond the trusted index range, 1 for output failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(e) if e.kind == config::ConfigErrorKind::TrustedRange => 4,
            CliError::Config(_) | CliError::ReadConfig { .. } => 2,
            CliError::Solver(spectrace_core::Error::TrustedRange { .. }) => 4,
            CliError::Solver(_) => 3,
            CliError::Write { .. } => 1,
        }
    }
}

impl From<spectrace_core::Error> for CliError {
    fn from(e: spectrace_core::Error) -> Self {
        CliError::Solver(e)
    }
}

/// Command-line overrides applied on top of the document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub command: Option<config::Command>,
    pub output: Option<PathBuf>,
    pub format: Option<config::Format>,
    pub seed: Option<u64>,
}

/// Reads, overrides and validates a configuration file.
pub fn load_config(path: &Path, overrides: &Overrides) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig { path: path.to_path_buf(), source })?;
    let mut raw = config::parse_raw(&text)?;
    if let Some(c) = overrides.command {
        raw.command = Some(c);
    }
    if let Some(o) = &overrides.output {
        raw.output = Some(o.clone());
    }
    if let Some(f) = overrides.format {
        raw.format = Some(f);
    }
    Ok(raw.validate(&text, path.parent())?)
}

/// Encodes the table in the configured format.
pub fn render(cfg: &RunConfig, out: &RunOutput) -> String {
    match cfg.format {
        config::Format::Csv => out.table.to_csv_string(),
        config::Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.table.to_json()).expect("json encodes");
            s.push('\n');
            s
        }
    }
}

/// Parameters, version, timings and summary scalars of one run.
pub fn manifest(cfg: &RunConfig, out: &RunOutput, seed: Option<u64>, total_seconds: f64) -> Value {
    json!({
        "program": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": cfg.command.name(),
        "parameters": cfg.to_raw(),
        "seed": seed,
        "rows": out.table.rows.len(),
        "summary": out.summary,
        "timings": {
            "compute_seconds": out.elapsed.as_secs_f64(),
            "total_seconds": total_seconds,
        },
    })
}

/// Runs a validated configuration and writes the table (to `output` or
/// stdout) and the manifest (next to the output as `<output>.manifest.json`,
/// or to stderr).
pub fn execute(cfg: &RunConfig, seed: Option<u64>) -> Result<RunOutput, CliError> {
    let start = Instant::now();
    let out = run(cfg)?;
    let body = render(cfg, &out);
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| CliError::Write { path: path.to_path_buf(), message: e.to_string() })
    };
    match &cfg.output {
        Some(path) => {
            write(path, &body)?;
            let m = manifest(cfg, &out, seed, start.elapsed().as_secs_f64());
            let mut mpath = path.clone().into_os_string();
            mpath.push(".manifest.json");
            write(Path::new(&mpath), &(serde_json::to_string_pretty(&m).expect("json encodes") + "\n"))?;
        }
        None => {
            print!("{body}");
            let m = manifest(cfg, &out, seed, start.elapsed().as_secs_f64());
            eprintln!("{m}");
        }
    }
    Ok(out)
}
