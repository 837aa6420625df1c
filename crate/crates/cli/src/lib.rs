//! Command-line front end for `spinthermal`.

pub mod config;
pub mod output;
mod verify;

use std::fs;
use std::io::{self, Write};

use serde_json::{json, Map, Value};
use spinthermal::analysis::{sweep, xx_critical, xxz_critical};
use spinthermal::complexlinalg::hermitian_eigen;
use spinthermal::concurrence::concurrence_general;
use spinthermal::spinmodel::{analytic_spectrum, build_hamiltonian};
use spinthermal::thermalstate::{gibbs_density, log_partition_function};
use spinthermal::{CriticalPoint, ModelSpec};
use thiserror::Error;

pub use config::{parse_config, Command, ConfigError, Format, RawConfig, RunConfig};
pub use output::{fmt_g, Table};
pub use verify::{verify_checks, Check};

/// Process exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok,
    VerifyFailed,
    ConfigError,
    NumericFailure,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Ok => 0,
            Exit::VerifyFailed => 1,
            Exit::ConfigError => 2,
            Exit::NumericFailure => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Numeric(#[from] spinthermal::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl RunError {
    pub fn exit(&self) -> Exit {
        use spinthermal::Error as E;
        match self {
            RunError::Config(_) | RunError::Io { .. } => Exit::ConfigError,
            RunError::Numeric(E::InvalidTemperature(_) | E::InvalidGrid(_) | E::UnsupportedModel(_) | E::OutOfDomain { .. }) => {
                Exit::ConfigError
            }
            RunError::Numeric(_) => Exit::NumericFailure,
        }
    }
}

fn stdout_err(source: io::Error) -> RunError {
    RunError::Io {
        path: "stdout".into(),
        source,
    }
}

/// Executes `config`, writing results to its output path or to `stdout`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<Exit, RunError> {
    let table = match config.command {
        Command::Eig => eig(&config.model_spec()?)?,
        Command::Thermal => thermal(&config.model_spec()?, config.t.expect("validated"))?,
        Command::Concurrence => concurrence(config)?,
        Command::Critical => critical(config, stdout)?,
        Command::Sweep => {
            let cfg = config.sweep_config()?;
            let columns = cfg.output_columns();
            let mut table = Table::new(columns.iter().map(|c| c.name()));
            for rec in sweep(&cfg)? {
                table.push(columns.iter().map(|&c| rec.value(c)).collect());
            }
            table
        }
        Command::Verify => {
            let checks = verify_checks();
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in &checks {
                writeln!(stdout, "{c}").map_err(stdout_err)?;
            }
            writeln!(
                stdout,
                "verify: {} checks, {} passed, {} failed",
                checks.len(),
                checks.len() - failed,
                failed
            )
            .map_err(stdout_err)?;
            return Ok(if failed == 0 { Exit::Ok } else { Exit::VerifyFailed });
        }
    };
    let text = match config.output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(meta(config)),
    };
    match &config.output.path {
        Some(path) => fs::write(path, text).map_err(|source| RunError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None if config.command == Command::Critical => {}
        None => stdout.write_all(text.as_bytes()).map_err(stdout_err)?,
    }
    Ok(Exit::Ok)
}

/// The resolved configuration as JSON.
pub fn meta(config: &RunConfig) -> Value {
    let n = |v: Option<f64>| output::number(v);
    let mut m = Map::new();
    m.insert("command".into(), json!(config.command.name()));
    m.insert("model".into(), config.model.map_or(Value::Null, |k| json!(k.name())));
    m.insert("J".into(), n(config.j));
    m.insert("delta".into(), n(config.delta));
    m.insert("B".into(), n(config.b));
    m.insert("T".into(), n(config.t));
    for k in 0..3 {
        m.insert(format!("J{}", k + 1), n(config.j_xyz[k]));
    }
    for k in 0..3 {
        m.insert(format!("B{}", k + 1), n(config.b_xyz[k]));
    }
    let grids: Vec<Value> = config
        .grids
        .iter()
        .map(|g| json!({"axis": g.axis.name(), "min": n(Some(g.min)), "max": n(Some(g.max)), "steps": g.steps}))
        .collect();
    m.insert("grid".into(), Value::Array(grids));
    m.insert(
        "output".into(),
        json!({
            "path": config.output.path.as_ref().map(|p| p.display().to_string()),
            "format": config.output.format.to_string(),
            "columns": config.output.columns.iter().map(|c| c.name()).collect::<Vec<_>>(),
        }),
    );
    Value::Object(m)
}

fn eig(spec: &ModelSpec) -> Result<Table, RunError> {
    let numeric = hermitian_eigen(&build_hamiltonian(spec))?.eigenvalues;
    let analytic = analytic_spectrum(spec);
    let mut table = Table::new(["k", "E", "E_analytic"]);
    for (k, e) in numeric.iter().enumerate() {
        table.push(vec![Some(k as f64), Some(*e), analytic.as_ref().map(|a| a[k])]);
    }
    Ok(table)
}

/// `Z`, `ln Z` and the reduced state of qubits 1 and 2, one row.
fn thermal(spec: &ModelSpec, t: f64) -> Result<Table, RunError> {
    let ln_z = log_partition_function(spec, t)?;
    let rho = gibbs_density(spec, t)?.trace_out(3)?;
    let m = rho.matrix();
    let mut columns = vec!["T".to_string(), "Z".into(), "lnZ".into()];
    let mut row = vec![Some(t), Some(ln_z.exp()), Some(ln_z)];
    for i in 0..4 {
        columns.push(format!("rho{}{}", i + 1, i + 1));
        row.push(Some(m[(i, i)].re));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            columns.push(format!("re{}{}", i + 1, j + 1));
            columns.push(format!("im{}{}", i + 1, j + 1));
            row.push(Some(m[(i, j)].re));
            row.push(Some(m[(i, j)].im));
        }
    }
    let mut table = Table::new(columns);
    table.push(row);
    Ok(table)
}

fn concurrence(config: &RunConfig) -> Result<Table, RunError> {
    let kind = config.model.expect("validated");
    let p = config.fixed_parameters(kind)?;
    let rec = spinthermal::analysis::sweep::evaluate(kind, &p)?;
    let rho = gibbs_density(&kind.spec(&p), p.t)?.trace_out(3)?;
    let lambdas = concurrence_general(&rho)?.lambdas;
    let mut table = Table::new(["T", "C", "C_numeric", "lambda1", "lambda2", "lambda3", "lambda4", "witness"]);
    let mut row = vec![Some(p.t), Some(rec.c), Some(rec.c_numeric)];
    row.extend(lambdas.iter().map(|&l| Some(l)));
    row.push(rec.witness);
    table.push(row);
    Ok(table)
}

fn critical(config: &RunConfig, stdout: &mut dyn Write) -> Result<Table, RunError> {
    let point: Option<CriticalPoint> = match config.model.expect("validated") {
        spinthermal::analysis::ModelKind::Xxz => xxz_critical(config.delta.expect("validated"))?,
        _ => Some(xx_critical()),
    };
    let tc = point.and_then(|p| config.j.and_then(|j| p.temperature(j)));
    let mut lines = Vec::new();
    match point {
        Some(p) => {
            lines.push(format!("z_c = {:.6}", p.z_c));
            lines.push(format!("x_c = {:.6}", p.x_c));
            lines.push(match p.t_c {
                Some(t) => format!("T_c/|J| = {t:.6}"),
                None => "T_c/|J| = none".into(),
            });
            if let Some(j) = config.j {
                lines.push(match tc {
                    Some(t) if j < 0.0 => format!("T_c = {t:.6}"),
                    _ => "T_c = none (J >= 0 is never entangled)".into(),
                });
            }
        }
        None => lines.push("no entanglement at any temperature for delta >= 1".into()),
    }
    for l in lines {
        writeln!(stdout, "{l}").map_err(stdout_err)?;
    }
    let tc = if config.j.is_some_and(|j| j < 0.0) { tc } else { None };
    let mut table = Table::new(["z_c", "x_c", "Tc_per_J", "Tc"]);
    table.push(vec![point.map(|p| p.z_c), point.map(|p| p.x_c), point.and_then(|p| p.t_c), tc]);
    Ok(table)
}
