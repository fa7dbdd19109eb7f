use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use iwalog::config::ScenarioConfig;
use iwalog::runner::{run, Command};

const CONFIG_ERROR: u8 = 2;

/// Verification harness for logarithmic matrices, signed minors and
/// rank-growth bounds over Z_p^2-extensions.
#[derive(Debug, Parser)]
#[command(name = "iwalog", version)]
struct Cli {
    /// validate, log-matrices, closed-form, vanishing-pattern, convergence,
    /// conjugacy, coinvariants, h-large, growth, mw-bound or all
    command: Command,
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the seed in the scenario file.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the p-adic precision N.
    #[arg(long)]
    precision: Option<u32>,
    /// Output directory (default: the scenario's out_dir, else ./iwalog-out).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(cli: &Cli) -> anyhow::Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig::load(&cli.config)
        .with_context(|| format!("loading {}", cli.config.display()))?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(n) = cli.precision {
        cfg.precision = n;
    }
    cfg.check().context("invalid configuration")?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let report = match run(&cfg, cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let dir = cli
        .out
        .clone()
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("iwalog-out"));
    match report.emit(&dir) {
        Ok(paths) => {
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: cannot write reports to {}: {e}", dir.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    }
    for (name, t) in &report.timings {
        eprintln!("time {name}: {:.3}s", t.as_secs_f64());
    }
    for c in &report.checks {
        let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from));
        eprintln!("[{}] {}: {}", status.unwrap_or_default(), c.name, c.detail);
    }
    ExitCode::from(report.exit_code() as u8)
}
