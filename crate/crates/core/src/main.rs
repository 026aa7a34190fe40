use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tqd_lhm::cli::{load_layers, run, ConfigError, RunError, RunOptions};

/// Steady-state optical response of a triple quantum dot medium.
#[derive(Debug, Parser)]
#[command(name = "tqd-lhm", version)]
struct Args {
    /// Configuration document (`key = value` per line).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Preset to expand before any override: fig2, fig3 or fig4.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Override one key; repeatable, applied last.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// csv or json.
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
    /// Sweep the preset's whole family of curves.
    #[arg(long)]
    family: bool,
    /// Cross-check every 50th point against time evolution.
    #[arg(long)]
    oracle: bool,
    /// Print the summary without writing output files.
    #[arg(long)]
    summary_only: bool,
}

fn fail(err: &RunError) -> ExitCode {
    eprintln!("error[{}]: {err}", err.category());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();

    let file_text = match &args.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => return fail(&RunError::Io { path: path.clone(), source: e }),
        },
        None => String::new(),
    };

    let mut flags = String::new();
    if let Some(p) = &args.preset {
        flags.push_str(&format!("preset = {p}\n"));
    }
    if let Some(o) = &args.output {
        flags.push_str(&format!("output = {}\n", o.display()));
    }
    if let Some(f) = &args.format {
        flags.push_str(&format!("format = {f}\n"));
    }
    if args.family {
        flags.push_str("family = true\n");
    }
    let mut sets = String::new();
    for (k, kv) in args.set.iter().enumerate() {
        let Some((key, value)) = kv.split_once('=') else {
            let err = ConfigError::Parse { line: k + 1, reason: format!("--set expects KEY=VALUE, got `{kv}`") };
            return fail(&err.into());
        };
        sets.push_str(&format!("{} = {}\n", key.trim(), value.trim()));
    }

    let config = match load_layers(&[&file_text, &flags, &sets]) {
        Ok(c) => c,
        Err(e) => return fail(&e.into()),
    };
    for (key, prov) in &config.provenance {
        log::info!("{key}: {prov:?}");
    }

    let options = RunOptions { oracle: args.oracle, summary_only: args.summary_only };
    match run(&config, options) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            ExitCode::SUCCESS
        }
        Err(err) => {
            if let RunError::OracleMismatch { summary, .. } = &err {
                print!("{summary}");
            }
            fail(&err)
        }
    }
}
