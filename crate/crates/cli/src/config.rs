//! Run configuration: an INI-style file of `key = value` lines under
//! `[section]` headers, plus overrides from the command line.
//!
//! ```text
//! command = sweep
//! [model]
//! model = xxzfield
//! J = 1
//! delta = 1
//! B = 2
//! [grid]
//! axis = T
//! min = 0.02
//! max = 4
//! steps = 200
//! [output]
//! path = t_sweep.csv
//! format = csv
//! ```
//!
//! Top-level keys are `command` and `T`. `[model]` accepts `model`, `J`,
//! `delta` (alias `Δ`), `B`, `T`, and `J1..J3`, `B1..B3` for the XYZ model.
//! `[grid]` and `[grid2]` take `axis`, `min`, `max`, `steps`; `[output]`
//! takes `path`, `format` and `columns` (comma separated). `#` and `;`
//! start comments.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use spinthermal::analysis::{AxisRange, Column, ModelKind, Parameters, SweepAxis, SweepConfig};
use spinthermal::ModelSpec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}{field}: {message}", at(*.line))]
    Validation {
        line: Option<usize>,
        field: String,
        message: String,
    },

    #[error("line {line}: unknown key '{key}' in {section}")]
    UnknownKey { line: usize, section: String, key: String },
}

/// Drops a trailing `# ...` or `; ...` comment. The marker must follow whitespace.
fn strip_comment(line: &str) -> &str {
    let t = line.trim_start();
    if t.starts_with('#') || t.starts_with(';') {
        return "";
    }
    let b = line.as_bytes();
    for i in 1..b.len() {
        if (b[i] == b'#' || b[i] == b';') && b[i - 1].is_ascii_whitespace() {
            return &line[..i];
        }
    }
    line
}

fn at(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

impl ConfigError {
    fn missing(field: &str, why: &str) -> Self {
        ConfigError::Validation {
            line: None,
            field: field.to_string(),
            message: format!("required {why}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eig,
    Thermal,
    Concurrence,
    Critical,
    Sweep,
    Verify,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Eig,
        Command::Thermal,
        Command::Concurrence,
        Command::Critical,
        Command::Sweep,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Eig => "eig",
            Command::Thermal => "thermal",
            Command::Concurrence => "concurrence",
            Command::Critical => "critical",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'"))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    /// `None` writes to stdout.
    pub path: Option<PathBuf>,
    pub format: Format,
    /// Sweep columns; empty selects the default set.
    pub columns: Vec<Column>,
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub model: Option<ModelKind>,
    pub j: Option<f64>,
    pub delta: Option<f64>,
    pub b: Option<f64>,
    pub t: Option<f64>,
    pub j_xyz: [Option<f64>; 3],
    pub b_xyz: [Option<f64>; 3],
    pub grids: Vec<AxisRange<f64>>,
    pub output: OutputSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Top,
    Model,
    Grid(usize),
    Output,
}

impl Section {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "model" => Some(Section::Model),
            "grid" => Some(Section::Grid(0)),
            "grid2" => Some(Section::Grid(1)),
            "output" => Some(Section::Output),
            _ => None,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Section::Top => "top level",
            Section::Model => "[model]",
            Section::Grid(0) => "[grid]",
            Section::Grid(_) => "[grid2]",
            Section::Output => "[output]",
        }
    }

    /// Canonical key name, or `None` if the key is not allowed here.
    fn canonical(self, key: &str) -> Option<&'static str> {
        let allowed: &[&'static str] = match self {
            Section::Top => &["command", "T"],
            Section::Model => &["model", "J", "delta", "B", "T", "J1", "J2", "J3", "B1", "B2", "B3"],
            Section::Grid(_) => &["axis", "min", "max", "steps"],
            Section::Output => &["path", "format", "columns"],
        };
        let key = if key == "Δ" { "delta" } else { key };
        allowed.iter().copied().find(|k| *k == key)
    }
}

#[derive(Debug, Clone)]
struct Entry {
    section: Section,
    key: &'static str,
    value: String,
    line: Option<usize>,
}

/// Parsed but not yet validated settings. Later entries win.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: Vec<Entry>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut section = Section::Top;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = strip_comment(raw).trim();
            if s.is_empty() || s.starts_with('#') || s.starts_with(';') {
                continue;
            }
            if let Some(rest) = s.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| ConfigError::Parse {
                    line,
                    message: format!("unterminated section header '{s}'"),
                })?;
                section = Section::parse(name.trim()).ok_or_else(|| ConfigError::Parse {
                    line,
                    message: format!("unknown section [{}]", name.trim()),
                })?;
                continue;
            }
            let (key, value) = s.split_once('=').ok_or_else(|| ConfigError::Parse {
                line,
                message: format!("expected 'key = value', got '{s}'"),
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(ConfigError::Parse {
                    line,
                    message: "empty key".into(),
                });
            }
            let canonical = section.canonical(key).ok_or_else(|| ConfigError::UnknownKey {
                line,
                section: section.label().to_string(),
                key: key.to_string(),
            })?;
            entries.push(Entry {
                section,
                key: canonical,
                value: value.trim().to_string(),
                line: Some(line),
            });
        }
        Ok(Self { entries })
    }

    /// Override `key`, written `section.key` or bare for top-level keys.
    /// Bare model parameters (`J`, `delta`, ...) go to `[model]`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let (section, key) = match key.split_once('.') {
            Some((sec, k)) => (
                Section::parse(sec).ok_or_else(|| ConfigError::Validation {
                    line: None,
                    field: key.to_string(),
                    message: format!("unknown section '{sec}'"),
                })?,
                k,
            ),
            None if Section::Top.canonical(key).is_some() => (Section::Top, key),
            None => (Section::Model, key),
        };
        let canonical = section.canonical(key).ok_or_else(|| ConfigError::Validation {
            line: None,
            field: key.to_string(),
            message: format!("unknown key in {}", section.label()),
        })?;
        // T lives in one place whichever way it was given
        let section = if canonical == "T" { Section::Top } else { section };
        self.entries.push(Entry {
            section,
            key: canonical,
            value: value.trim().to_string(),
            line: None,
        });
        Ok(())
    }

    fn lookup(&self, section: Section, key: &str) -> Option<&Entry> {
        let same = |e: &&Entry| {
            e.key == key
                && (e.section == section || (key == "T" && matches!(e.section, Section::Top | Section::Model)))
        };
        self.entries.iter().rev().find(same)
    }

    fn number(&self, section: Section, key: &str) -> Result<Option<f64>, ConfigError> {
        let Some(e) = self.lookup(section, key) else {
            return Ok(None);
        };
        let v: f64 = e.value.parse().map_err(|_| ConfigError::Validation {
            line: e.line,
            field: key.to_string(),
            message: format!("'{}' is not a number", e.value),
        })?;
        if !v.is_finite() {
            return Err(ConfigError::Validation {
                line: e.line,
                field: key.to_string(),
                message: format!("'{}' is not finite", e.value),
            });
        }
        Ok(Some(v))
    }

    fn parsed<T: FromStr<Err = E>, E: fmt::Display>(&self, section: Section, key: &str) -> Result<Option<T>, ConfigError> {
        let Some(e) = self.lookup(section, key) else {
            return Ok(None);
        };
        e.value.parse().map(Some).map_err(|err: E| ConfigError::Validation {
            line: e.line,
            field: key.to_string(),
            message: err.to_string(),
        })
    }

    fn grid(&self, idx: usize) -> Result<Option<AxisRange<f64>>, ConfigError> {
        let s = Section::Grid(idx);
        if !self.entries.iter().any(|e| e.section == s) {
            return Ok(None);
        }
        let field = |k: &str| format!("{}.{k}", if idx == 0 { "grid" } else { "grid2" });
        let axis: SweepAxis = self
            .parsed(s, "axis")?
            .ok_or_else(|| ConfigError::missing(&field("axis"), "for a grid"))?;
        let min = self.number(s, "min")?.ok_or_else(|| ConfigError::missing(&field("min"), "for a grid"))?;
        let max = self.number(s, "max")?.ok_or_else(|| ConfigError::missing(&field("max"), "for a grid"))?;
        let steps: usize = self
            .parsed(s, "steps")?
            .ok_or_else(|| ConfigError::missing(&field("steps"), "for a grid"))?;
        Ok(Some(AxisRange { axis, min, max, steps }))
    }

    fn columns(&self) -> Result<Vec<Column>, ConfigError> {
        let Some(e) = self.lookup(Section::Output, "columns") else {
            return Ok(Vec::new());
        };
        e.value
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse().map_err(|err: spinthermal::Error| ConfigError::Validation {
                    line: e.line,
                    field: "columns".into(),
                    message: err.to_string(),
                })
            })
            .collect()
    }

    /// Resolves and validates the settings.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let command: Command = self
            .parsed(Section::Top, "command")?
            .ok_or_else(|| ConfigError::missing("command", "(one of eig, thermal, concurrence, critical, sweep, verify)"))?;
        let m = Section::Model;
        let num = |k: &str| self.number(m, k);
        let path = self.lookup(Section::Output, "path").map(|e| PathBuf::from(&e.value));
        let config = RunConfig {
            command,
            model: self
                .parsed::<ModelKind, spinthermal::Error>(m, "model")?,
            j: num("J")?,
            delta: num("delta")?,
            b: num("B")?,
            t: num("T")?,
            j_xyz: [num("J1")?, num("J2")?, num("J3")?],
            b_xyz: [num("B1")?, num("B2")?, num("B3")?],
            grids: [self.grid(0)?, self.grid(1)?].into_iter().flatten().collect(),
            output: OutputSpec {
                path,
                format: self.parsed(Section::Output, "format")?.unwrap_or_default(),
                columns: self.columns()?,
            },
        };
        config.validate()?;
        Ok(config)
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    RawConfig::parse(text)?.resolve()
}

fn require(v: Option<f64>, field: &str, why: &str) -> Result<f64, ConfigError> {
    v.ok_or_else(|| ConfigError::missing(field, why))
}

impl RunConfig {
    fn model_kind(&self) -> Result<ModelKind, ConfigError> {
        self.model
            .ok_or_else(|| ConfigError::missing("model", &format!("for '{}'", self.command)))
    }

    fn swept(&self, axis: SweepAxis) -> bool {
        self.grids.iter().any(|g| g.axis == axis)
    }

    /// Fixed parameters with swept ones filled by placeholders.
    pub fn fixed_parameters(&self, kind: ModelKind) -> Result<Parameters<f64>, ConfigError> {
        let why = format!("for model {kind}");
        let mut p = Parameters::default();
        let need = |axis: SweepAxis, v: Option<f64>, name: &str| -> Result<f64, ConfigError> {
            if self.swept(axis) {
                Ok(v.unwrap_or(0.0))
            } else {
                require(v, name, &why)
            }
        };
        match kind {
            ModelKind::Xx => p.j = need(SweepAxis::J, self.j, "J")?,
            ModelKind::Xxz => {
                p.j = need(SweepAxis::J, self.j, "J")?;
                p.delta = need(SweepAxis::Delta, self.delta, "delta")?;
            }
            ModelKind::XxzField => {
                p.j = need(SweepAxis::J, self.j, "J")?;
                p.delta = need(SweepAxis::Delta, self.delta, "delta")?;
                p.b = need(SweepAxis::B, self.b, "B")?;
            }
            ModelKind::Xyz => {
                for (k, v) in self.j_xyz.iter().enumerate() {
                    p.j_xyz[k] = require(*v, &format!("J{}", k + 1), &why)?;
                }
                for (k, v) in self.b_xyz.iter().enumerate() {
                    p.b_xyz[k] = v.unwrap_or(0.0);
                }
                p.j = p.j_xyz[0];
            }
        }
        if let Some(t) = self.t {
            p.t = t;
        }
        Ok(p)
    }

    fn temperature(&self) -> Result<f64, ConfigError> {
        let t = require(self.t, "T", &format!("for '{}'", self.command))?;
        if t <= 0.0 {
            return Err(ConfigError::Validation {
                line: None,
                field: "T".into(),
                message: "must be positive".into(),
            });
        }
        Ok(t)
    }

    /// Hamiltonian of a non-sweep run.
    pub fn model_spec(&self) -> Result<ModelSpec, ConfigError> {
        let kind = self.model_kind()?;
        Ok(kind.spec(&self.fixed_parameters(kind)?))
    }

    pub fn sweep_config(&self) -> Result<SweepConfig<f64>, ConfigError> {
        let kind = self.model_kind()?;
        if self.grids.is_empty() {
            return Err(ConfigError::missing("grid", "for 'sweep'"));
        }
        if !self.swept(SweepAxis::T) {
            self.temperature()?;
        }
        let cfg = SweepConfig {
            model: kind,
            fixed: self.fixed_parameters(kind)?,
            axes: self.grids.clone(),
            columns: self.output.columns.clone(),
        };
        cfg.validate().map_err(|e| ConfigError::Validation {
            line: None,
            field: "grid".into(),
            message: e.to_string(),
        })?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.command {
            Command::Eig => self.model_spec().map(drop),
            Command::Thermal | Command::Concurrence => {
                self.model_spec()?;
                self.temperature().map(drop)
            }
            Command::Critical => match self.model_kind()? {
                ModelKind::Xx => Ok(()),
                ModelKind::Xxz => require(self.delta, "delta", "for model xxz").map(drop),
                other => Err(ConfigError::Validation {
                    line: None,
                    field: "model".into(),
                    message: format!("'critical' supports xx and xxz, not {other}"),
                }),
            },
            Command::Sweep => self.sweep_config().map(drop),
            Command::Verify => Ok(()),
        }
    }

    /// Canonical text form; parsing it yields an equal config.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let kv = |s: &mut String, k: &str, v: Option<f64>| {
            if let Some(v) = v {
                let _ = writeln!(s, "{k} = {v}");
            }
        };
        let _ = writeln!(s, "command = {}", self.command);
        kv(&mut s, "T", self.t);
        s.push_str("\n[model]\n");
        if let Some(m) = self.model {
            let _ = writeln!(s, "model = {m}");
        }
        kv(&mut s, "J", self.j);
        kv(&mut s, "delta", self.delta);
        kv(&mut s, "B", self.b);
        for k in 0..3 {
            kv(&mut s, &format!("J{}", k + 1), self.j_xyz[k]);
        }
        for k in 0..3 {
            kv(&mut s, &format!("B{}", k + 1), self.b_xyz[k]);
        }
        for (i, g) in self.grids.iter().enumerate() {
            let _ = writeln!(s, "\n[{}]", if i == 0 { "grid" } else { "grid2" });
            let _ = writeln!(s, "axis = {}\nmin = {}\nmax = {}\nsteps = {}", g.axis, g.min, g.max, g.steps);
        }
        s.push_str("\n[output]\n");
        if let Some(p) = &self.output.path {
            let _ = writeln!(s, "path = {}", p.display());
        }
        let _ = writeln!(s, "format = {}", self.output.format);
        if !self.output.columns.is_empty() {
            let cols: Vec<&str> = self.output.columns.iter().map(|c| c.name()).collect();
            let _ = writeln!(s, "columns = {}", cols.join(","));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_concurrence_run() {
        let cfg = parse_config("command=concurrence\nT=1\n[model]\nmodel=xx\nJ=-1\n").unwrap();
        assert_eq!(cfg.command, Command::Concurrence);
        assert_eq!(cfg.model_spec().unwrap(), ModelSpec::Xx { j: -1.0 });
        assert_eq!(cfg.t, Some(1.0));
    }

    #[test]
    fn missing_coupling_is_named() {
        let err = parse_config("command=concurrence\nT=1\n[model]\nmodel=xx\n").unwrap_err();
        match err {
            ConfigError::Validation { field, .. } => assert_eq!(field, "J"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn delta_alias() {
        let a = parse_config("command=eig\n[model]\nmodel=xxz\nJ=1\nΔ=0.5\n").unwrap();
        let b = parse_config("command=eig\n[model]\nmodel=xxz\nJ=1\ndelta=0.5\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.delta, Some(0.5));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_config("command=eig\n[model]\nbogus line\n").unwrap_err(),
            ConfigError::Parse { line: 3, message: "expected 'key = value', got 'bogus line'".into() }
        );
        assert!(matches!(
            parse_config("command=eig\n[model]\nmodel=xx\nK=1\n").unwrap_err(),
            ConfigError::UnknownKey { line: 4, .. }
        ));
        assert!(matches!(
            parse_config("command=eig\n[model]\nmodel=xx\nJ=abc\n").unwrap_err(),
            ConfigError::Validation { line: Some(4), .. }
        ));
        assert!(matches!(parse_config("[nope]\n").unwrap_err(), ConfigError::Parse { line: 1, .. }));
    }

    #[test]
    fn inline_comments() {
        let c = parse_config("command = eig ; run\n[model]   # section\nmodel = xx\nJ = -2 # coupling\n").unwrap();
        assert_eq!(c.j, Some(-2.0));
        assert_eq!(strip_comment("path = a#b.csv"), "path = a#b.csv");
    }

    #[test]
    fn non_finite_rejected() {
        assert!(parse_config("command=eig\n[model]\nmodel=xx\nJ=inf\n").is_err());
        assert!(parse_config("command=eig\n[model]\nmodel=xx\nJ=NaN\n").is_err());
    }

    #[test]
    fn sweep_needs_valid_grid() {
        let base = "command=sweep\n[model]\nmodel=xxzfield\nJ=1\ndelta=1\nB=1\n[grid]\naxis=T\nmin=0.02\nmax=4\n";
        assert!(parse_config(&format!("{base}steps=200\n")).is_ok());
        assert!(parse_config(&format!("{base}steps=1\n")).is_err());
        assert!(parse_config("command=sweep\n[model]\nmodel=xx\nJ=1\nT=1\n").is_err());
    }

    #[test]
    fn swept_parameter_need_not_be_fixed() {
        let text = "command=sweep\nT=1\n[model]\nmodel=xxzfield\ndelta=1\n[grid]\naxis=B\nmin=-2\nmax=2\nsteps=5\n[grid2]\naxis=J\nmin=-2\nmax=2\nsteps=5\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.grids.len(), 2);
    }

    #[test]
    fn overrides_win() {
        let mut raw = RawConfig::parse("command=concurrence\nT=1\n[model]\nmodel=xx\nJ=-1\n").unwrap();
        raw.set("J", "2").unwrap();
        raw.set("T", "0.5").unwrap();
        raw.set("output.format", "json").unwrap();
        let cfg = raw.resolve().unwrap();
        assert_eq!(cfg.j, Some(2.0));
        assert_eq!(cfg.t, Some(0.5));
        assert_eq!(cfg.output.format, Format::Json);
        assert!(raw.set("grid.nope", "1").is_err());
    }

    #[test]
    fn t_in_model_section() {
        let cfg = parse_config("command=concurrence\n[model]\nmodel=xx\nJ=-1\nT=0.3\n").unwrap();
        assert_eq!(cfg.t, Some(0.3));
    }

    #[test]
    fn round_trip() {
        let texts = [
            "command=concurrence\nT=1\n[model]\nmodel=xx\nJ=-1\n",
            "command=sweep\n[model]\nmodel=xxzfield\nJ=1\ndelta=1\nB=2\n[grid]\naxis=T\nmin=0.02\nmax=4\nsteps=200\n[output]\npath=out/t_sweep.csv\ncolumns=T,C,C_numeric\nformat=json\n",
            "command=thermal\nT=0.7\n[model]\nmodel=xyz\nJ1=-1\nJ2=0.3\nJ3=0.1\nB2=0.5\n",
            "command=verify\n",
            "command=critical\n[model]\nmodel=xxz\ndelta=-0.5\nJ=-0.1\n",
        ];
        for t in texts {
            let cfg = parse_config(t).unwrap();
            let again = parse_config(&cfg.to_config_string()).unwrap();
            assert_eq!(cfg, again, "{}", cfg.to_config_string());
        }
    }
}
