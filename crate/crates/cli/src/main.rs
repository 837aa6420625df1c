use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spinthermal_cli::{run, Exit, RawConfig};

/// Thermal pairwise entanglement of three-qubit Heisenberg rings.
#[derive(Parser, Debug)]
#[command(name = "spinthermal", version)]
struct Cli {
    /// eig, thermal, concurrence, critical, sweep or verify
    command: Option<String>,

    /// INI-style run configuration; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,

    /// xx, xxz, xxzfield or xyz
    #[arg(long)]
    model: Option<String>,

    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<String>,

    #[arg(long, allow_negative_numbers = true)]
    delta: Option<String>,

    #[arg(long = "B", allow_negative_numbers = true)]
    b: Option<String>,

    #[arg(long = "T")]
    t: Option<String>,

    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv or json
    #[arg(long)]
    format: Option<String>,

    /// Any other setting, e.g. `grid.steps=400` or `J2=0.5`
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn fail(code: Exit, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("spinthermal: {msg}");
    ExitCode::from(code.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut raw = match &cli.config {
        Some(path) => match fs::read_to_string(path) {
            Ok(text) => match RawConfig::parse(&text) {
                Ok(raw) => raw,
                Err(e) => return fail(Exit::ConfigError, format!("{}: {e}", path.display())),
            },
            Err(e) => return fail(Exit::ConfigError, format!("{}: {e}", path.display())),
        },
        None => RawConfig::default(),
    };
    let mut overrides: Vec<(String, String)> = Vec::new();
    for kv in &cli.set {
        match kv.split_once('=') {
            Some((k, v)) => overrides.push((k.trim().to_string(), v.to_string())),
            None => return fail(Exit::ConfigError, format!("--set expects KEY=VALUE, got '{kv}'")),
        }
    }
    let flags = [
        ("command", cli.command),
        ("model.model", cli.model),
        ("model.J", cli.j),
        ("model.delta", cli.delta),
        ("model.B", cli.b),
        ("T", cli.t),
        ("output.path", cli.out.map(|p| p.display().to_string())),
        ("output.format", cli.format),
    ];
    overrides.extend(flags.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))));
    for (k, v) in &overrides {
        if let Err(e) = raw.set(k, v) {
            return fail(Exit::ConfigError, e);
        }
    }
    let config = match raw.resolve() {
        Ok(c) => c,
        Err(e) => return fail(Exit::ConfigError, e),
    };
    match run(&config, &mut io::stdout().lock()) {
        Ok(exit) => ExitCode::from(exit.code() as u8),
        Err(e) => fail(e.exit(), e),
    }
}
