//! Parameter grids over `T`, `J`, `Δ` and `B`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{field_region, xx_critical, xx_region, xxz_critical, xxz_region};
use crate::concurrence::{concurrence_closed_form, concurrence_general};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spinmodel::ModelSpec;
use crate::thermalstate::{gibbs_density, partition_function};

/// A sweepable parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    T,
    J,
    Delta,
    B,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::T => "T",
            SweepAxis::J => "J",
            SweepAxis::Delta => "delta",
            SweepAxis::B => "B",
        }
    }

    pub fn column(self) -> Column {
        match self {
            SweepAxis::T => Column::T,
            SweepAxis::J => Column::J,
            SweepAxis::Delta => Column::Delta,
            SweepAxis::B => Column::B,
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(SweepAxis::T),
            "J" => Ok(SweepAxis::J),
            "delta" | "Δ" => Ok(SweepAxis::Delta),
            "B" => Ok(SweepAxis::B),
            other => Err(Error::InvalidGrid(format!("unknown axis '{other}'"))),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Model family without its couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Xx,
    Xxz,
    XxzField,
    Xyz,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Xx => "xx",
            ModelKind::Xxz => "xxz",
            ModelKind::XxzField => "xxzfield",
            ModelKind::Xyz => "xyz",
        }
    }

    /// Axes that change the Hamiltonian of this family (plus `T`).
    pub fn allows(self, axis: SweepAxis) -> bool {
        match self {
            ModelKind::Xx => matches!(axis, SweepAxis::T | SweepAxis::J),
            ModelKind::Xxz => axis != SweepAxis::B,
            ModelKind::XxzField => true,
            ModelKind::Xyz => axis == SweepAxis::T,
        }
    }

    pub fn spec<T: Real>(self, p: &Parameters<T>) -> ModelSpec<T> {
        match self {
            ModelKind::Xx => ModelSpec::Xx { j: p.j },
            ModelKind::Xxz => ModelSpec::Xxz { j: p.j, delta: p.delta },
            ModelKind::XxzField => ModelSpec::XxzField { j: p.j, delta: p.delta, b: p.b },
            ModelKind::Xyz => ModelSpec::GeneralXyz { j: p.j_xyz, b: p.b_xyz },
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xx" => Ok(ModelKind::Xx),
            "xxz" => Ok(ModelKind::Xxz),
            "xxzfield" => Ok(ModelKind::XxzField),
            "xyz" => Ok(ModelKind::Xyz),
            other => Err(Error::InvalidGrid(format!("unknown model '{other}'"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every parameter a point can depend on. Unused ones are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameters<T> {
    pub t: T,
    pub j: T,
    pub delta: T,
    pub b: T,
    pub j_xyz: [T; 3],
    pub b_xyz: [T; 3],
}

impl<T: Real> Default for Parameters<T> {
    fn default() -> Self {
        Self {
            t: T::one(),
            j: T::one(),
            delta: T::zero(),
            b: T::zero(),
            j_xyz: [T::one(); 3],
            b_xyz: [T::zero(); 3],
        }
    }
}

impl<T: Real> Parameters<T> {
    pub fn get(&self, axis: SweepAxis) -> T {
        match axis {
            SweepAxis::T => self.t,
            SweepAxis::J => self.j,
            SweepAxis::Delta => self.delta,
            SweepAxis::B => self.b,
        }
    }

    pub fn set(&mut self, axis: SweepAxis, v: T) {
        match axis {
            SweepAxis::T => self.t = v,
            SweepAxis::J => self.j = v,
            SweepAxis::Delta => self.delta = v,
            SweepAxis::B => self.b = v,
        }
    }
}

/// `steps` evenly spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange<T> {
    pub axis: SweepAxis,
    pub min: T,
    pub max: T,
    pub steps: usize,
}

impl<T: Real> AxisRange<T> {
    pub fn values(&self) -> Vec<T> {
        let last = self.steps - 1;
        let span = self.max - self.min;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + span * T::lit(i as f64) / T::lit(last as f64)
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidGrid(format!("{}: need at least 2 steps", self.axis)));
        }
        if !self.min.is_finite() || !self.max.is_finite() || !(self.min < self.max) {
            return Err(Error::InvalidGrid(format!(
                "{}: range [{}, {}] is empty or reversed",
                self.axis, self.min, self.max
            )));
        }
        if self.axis == SweepAxis::T && !(self.min > T::zero()) {
            return Err(Error::InvalidGrid("T: temperatures must be positive".into()));
        }
        Ok(())
    }
}

/// An output column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    T,
    J,
    Delta,
    B,
    /// Closed form where one exists, otherwise the numeric value.
    C,
    /// Always from diagonalization.
    CNumeric,
    Witness,
    /// Partition function.
    Z,
    /// Critical temperature (ferromagnetic XX/XXZ only).
    Tc,
}

impl Column {
    pub const ALL: [Column; 9] = [
        Column::T,
        Column::J,
        Column::Delta,
        Column::B,
        Column::C,
        Column::CNumeric,
        Column::Witness,
        Column::Z,
        Column::Tc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::T => "T",
            Column::J => "J",
            Column::Delta => "delta",
            Column::B => "B",
            Column::C => "C",
            Column::CNumeric => "C_numeric",
            Column::Witness => "witness",
            Column::Z => "Z",
            Column::Tc => "Tc",
        }
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = if s == "Δ" { "delta" } else { s };
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidGrid(format!("unknown column '{s}'")))
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig<T> {
    pub model: ModelKind,
    pub fixed: Parameters<T>,
    /// One or two axes; the first is the outer loop.
    pub axes: Vec<AxisRange<T>>,
    /// Empty means the axis columns followed by `C`.
    pub columns: Vec<Column>,
}

impl<T: Real> SweepConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidGrid(format!("expected 1 or 2 axes, got {}", self.axes.len())));
        }
        if self.axes.len() == 2 && self.axes[0].axis == self.axes[1].axis {
            return Err(Error::InvalidGrid(format!("axis {} given twice", self.axes[0].axis)));
        }
        for a in &self.axes {
            a.validate()?;
            if !self.model.allows(a.axis) {
                return Err(Error::InvalidGrid(format!(
                    "axis {} does not apply to model {}",
                    a.axis, self.model
                )));
            }
        }
        if !self.axes.iter().any(|a| a.axis == SweepAxis::T) && !(self.fixed.t > T::zero()) {
            return Err(Error::InvalidGrid("fixed T must be positive".into()));
        }
        Ok(())
    }

    pub fn output_columns(&self) -> Vec<Column> {
        if self.columns.is_empty() {
            let mut cols: Vec<Column> = self.axes.iter().map(|a| a.axis.column()).collect();
            cols.push(Column::C);
            cols
        } else {
            self.columns.clone()
        }
    }

    /// Grid points in output order.
    pub fn points(&self) -> Vec<Parameters<T>> {
        let outer = self.axes[0].values();
        let inner = self.axes.get(1).map(|a| (a.axis, a.values()));
        let mut out = Vec::new();
        for &v in &outer {
            let mut p = self.fixed;
            p.set(self.axes[0].axis, v);
            match &inner {
                Some((axis, values)) => {
                    for &w in values {
                        let mut q = p;
                        q.set(*axis, w);
                        out.push(q);
                    }
                }
                None => out.push(p),
            }
        }
        out
    }
}

/// Inputs and outputs at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord<T> {
    pub params: Parameters<T>,
    pub c: T,
    pub c_numeric: T,
    pub witness: Option<T>,
    pub z: T,
    pub tc: Option<T>,
}

impl<T: Real> SweepRecord<T> {
    pub fn value(&self, column: Column) -> Option<T> {
        match column {
            Column::T => Some(self.params.t),
            Column::J => Some(self.params.j),
            Column::Delta => Some(self.params.delta),
            Column::B => Some(self.params.b),
            Column::C => Some(self.c),
            Column::CNumeric => Some(self.c_numeric),
            Column::Witness => self.witness,
            Column::Z => Some(self.z),
            Column::Tc => self.tc,
        }
    }
}

/// Evaluates a single parameter point.
pub fn evaluate<T: Real>(model: ModelKind, p: &Parameters<T>) -> Result<SweepRecord<T>> {
    let spec = model.spec(p);
    let t = p.t;
    let rho = gibbs_density(&spec, t)?.trace_out(3)?;
    let c_numeric = concurrence_general(&rho)?.concurrence;
    let c = match concurrence_closed_form(&spec, t) {
        Ok(c) => c,
        Err(Error::UnsupportedModel(_)) => c_numeric,
        Err(e) => return Err(e),
    };
    let z = (p.j / t).exp();
    let witness = match model {
        ModelKind::Xx => Some(xx_region(z).witness),
        ModelKind::Xxz => Some(xxz_region(p.delta, z).witness),
        ModelKind::XxzField => Some(field_region(p.delta, z, p.b / t).witness),
        ModelKind::Xyz => None,
    };
    let tc = if p.j < T::zero() {
        match model {
            ModelKind::Xx => xx_critical::<T>().temperature(p.j),
            ModelKind::Xxz => xxz_critical(p.delta)?.and_then(|cp| cp.temperature(p.j)),
            _ => None,
        }
    } else {
        None
    };
    Ok(SweepRecord {
        params: *p,
        c,
        c_numeric,
        witness,
        z: partition_function(&spec, t)?,
        tc,
    })
}

/// Evaluates every grid point, in parallel, returning records in grid order.
pub fn sweep<T: Real>(config: &SweepConfig<T>) -> Result<Vec<SweepRecord<T>>> {
    config.validate()?;
    config
        .points()
        .par_iter()
        .map(|p| evaluate(config.model, p))
        .collect()
}
