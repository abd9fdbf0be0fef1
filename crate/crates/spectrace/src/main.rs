use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spectrace::config::{Command, Format};
use spectrace::{execute, load_config, Overrides};

/// Spectra and trace-formula checks for periodic fourth-order operators.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// spectrum | trace | sweep | contour | oracle-compare | asymptotics
    #[arg(long, value_parser = parse_command)]
    command: Option<Command>,
    /// Table destination; the manifest goes to `<output>.manifest.json`.
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv | json
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Reserved; every pipeline is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_command(s: &str) -> Result<Command, String> {
    Command::parse(s).ok_or_else(|| format!("unknown command `{s}`"))
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::parse(s).ok_or_else(|| format!("unknown format `{s}` (csv or json)"))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let overrides = Overrides { command: args.command, output: args.output, format: args.format, seed: args.seed };
    let result = load_config(&args.config, &overrides).and_then(|cfg| execute(&cfg, args.seed));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spectrace: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
