//! Entanglement regions, critical points and the zero-temperature transition.
//!
//! Everything here works with `z = exp(J/T)` (and `βB` for the field model);
//! `z < 1` is the ferromagnetic branch. Critical temperatures are reported
//! per unit `|J|`.

mod roots;
pub mod sweep;
mod zero_temperature;

pub use roots::{bisect, MAX_ITERATIONS};
pub use sweep::{sweep, AxisRange, Column, ModelKind, Parameters, SweepAxis, SweepConfig, SweepRecord};
pub use zero_temperature::{ground_group, zero_temperature_concurrence, QPT_TOL};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute tolerance in `z` for the critical-point bisections.
pub const ROOT_TOL: f64 = 1e-12;
/// Most negative `ln z` searched when bracketing the XXZ boundary.
pub const MIN_LOG_Z: f64 = -1e6;
/// Anisotropies at or below this value are treated as the `Δ → -∞` asymptote.
pub const ASYMPTOTIC_DELTA: f64 = -50.0;

/// Entanglement threshold of a ferromagnetic ring, `T_c` per unit `|J|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint<T> {
    pub z_c: T,
    /// `ln z_c`.
    pub x_c: T,
    /// `1/|x_c|`; `None` when `x_c = 0`.
    pub t_c: Option<T>,
}

impl<T: Real> CriticalPoint<T> {
    pub fn from_root(z_c: T) -> Self {
        let x_c = z_c.ln();
        Self {
            z_c,
            x_c,
            t_c: (x_c != T::zero()).then(|| T::one() / x_c.abs()),
        }
    }

    /// Critical temperature for exchange constant `j`.
    pub fn temperature(&self, j: T) -> Option<T> {
        self.t_c.map(|t| t * j.abs())
    }
}

/// Outcome of an entanglement test; `entangled ⟺ witness > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict<T> {
    pub entangled: bool,
    pub witness: T,
}

impl<T: Real> RegionVerdict<T> {
    fn from_witness(witness: T) -> Self {
        Self {
            entangled: witness > T::zero(),
            witness,
        }
    }
}

/// `z₀ = 4^(-1/3)`, where `∂f/∂Δ` vanishes.
pub fn z0<T: Real>() -> T {
    T::lit(4.0).powf(-T::one() / T::lit(3.0))
}

/// `f(z) = 4z³ + 3z² - 1`.
pub fn xx_polynomial<T: Real>(z: T) -> T {
    T::lit(4.0) * z.powi(3) + T::lit(3.0) * z * z - T::one()
}

/// XX ring entanglement test. The witness is `-f(z)` on the ferromagnetic
/// branch and `2|z⁻² - z| - 3 - 2z - z⁻²` (always negative) otherwise.
pub fn xx_region<T: Real>(z: T) -> RegionVerdict<T> {
    assert!(z > T::zero(), "z must be positive");
    if z < T::one() {
        RegionVerdict::from_witness(-xx_polynomial(z))
    } else {
        let (two, three) = (T::lit(2.0), T::lit(3.0));
        let zi2 = z.powi(-2);
        RegionVerdict::from_witness(two * (zi2 - z).abs() - three - two * z - zi2)
    }
}

/// Root of `4z³ + 3z² - 1` on `[0.1, 1]`.
pub fn xx_critical<T: Real>() -> CriticalPoint<T> {
    let z_c = bisect(xx_polynomial, T::lit(0.1), T::one(), T::tol(ROOT_TOL)).expect("f changes sign on [0.1, 1]");
    CriticalPoint::from_root(z_c)
}

/// `f(Δ, z) = z^{2Δ}|z⁻² - z| - 3/2 - z^{2Δ+1} - z^{2Δ-2}/2`.
pub fn xxz_witness<T: Real>(delta: T, z: T) -> T {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let zd = z.powf(two * delta);
    zd * (z.powi(-2) - z).abs() - T::lit(1.5) - zd * z - half * zd * z.powi(-2)
}

/// `z^{2Δ-2} - 4z^{2Δ+1} - 3`, which equals `2 f(Δ, z)` for `z < 1`.
pub fn xxz_condition<T: Real>(delta: T, z: T) -> T {
    let two = T::lit(2.0);
    z.powf(two * delta - two) - T::lit(4.0) * z.powf(two * delta + T::one()) - T::lit(3.0)
}

/// `∂f/∂Δ = ln(z) z^{2Δ} (z⁻² - 4z)`, valid for `z < 1`.
pub fn xxz_slope<T: Real>(delta: T, z: T) -> T {
    z.ln() * z.powf(T::lit(2.0) * delta) * (z.powi(-2) - T::lit(4.0) * z)
}

/// XXZ ring entanglement test; the witness is `f(Δ, z)`.
pub fn xxz_region<T: Real>(delta: T, z: T) -> RegionVerdict<T> {
    assert!(z > T::zero(), "z must be positive");
    RegionVerdict::from_witness(xxz_witness(delta, z))
}

/// `f(Δ, eˣ)` for `x < 0`, written to stay finite for large `|x|`.
fn ferro_witness_log<T: Real>(delta: T, x: T) -> T {
    let two = T::lit(2.0);
    let head = ((two * delta - two) * x).exp();
    let tail = T::one() - T::lit(4.0) * (T::lit(3.0) * x).exp();
    if head.is_infinite() {
        return if tail > T::zero() { T::infinity() } else { T::neg_infinity() };
    }
    T::lit(0.5) * head * tail - T::lit(1.5)
}

/// Critical point of the ferromagnetic XXZ ring; `Ok(None)` for `Δ >= 1`,
/// where no temperature is entangled.
///
/// The boundary `f(Δ, z_c) = 0` lies in `(0, z₀)`; bisection runs on
/// `ln z`, since for `Δ` close to 1 the root sits far below `z = 1e-9`.
pub fn xxz_critical<T: Real>(delta: T) -> Result<Option<CriticalPoint<T>>> {
    if !delta.is_finite() {
        return Err(Error::NoRoot { delta: delta.as_f64() });
    }
    if delta >= T::one() {
        return Ok(None);
    }
    let f = |x: T| ferro_witness_log(delta, x);
    let hi = z0::<T>().ln();
    let floor = T::lit(MIN_LOG_Z);
    let mut lo = -T::one();
    while f(lo) <= T::zero() {
        if lo <= floor {
            return Err(Error::NoRoot { delta: delta.as_f64() });
        }
        lo = (lo * T::lit(2.0)).max(floor);
    }
    let tol = T::tol(ROOT_TOL) * T::lit(0.1);
    let x_c = bisect(f, lo, hi, tol * lo.abs().max(T::one()))
        .ok_or(Error::NoRoot { delta: delta.as_f64() })?;
    Ok(Some(CriticalPoint {
        z_c: x_c.exp(),
        x_c,
        t_c: Some(T::one() / x_c.abs()),
    }))
}

/// Anisotropy `Δ_z = ln(3/(z⁻² - 4z)) / (2 ln z)` at which `f(Δ_z, z) = 0`,
/// for `0 < z < z₀`. Entanglement requires `Δ < Δ_z`.
pub fn delta_boundary<T: Real>(z: T) -> Result<T> {
    if !(z > T::zero()) || z >= z0() {
        return Err(Error::OutOfDomain { z: z.as_f64() });
    }
    let gap = z.powi(-2) - T::lit(4.0) * z;
    if !(gap > T::zero()) {
        return Err(Error::OutOfDomain { z: z.as_f64() });
    }
    Ok((T::lit(3.0) / gap).ln() / (T::lit(2.0) * z.ln()))
}

/// [`delta_boundary`] at `z = exp(J/T)`, i.e. `ln(3/(z⁻² - 4z)) / (2βJ)`.
pub fn delta_boundary_at<T: Real>(j: T, temperature: T) -> Result<T> {
    if !(temperature > T::zero()) || !temperature.is_finite() {
        return Err(Error::InvalidTemperature(temperature.as_f64()));
    }
    delta_boundary((j / temperature).exp())
}

/// `g = (9 + z^{4(Δ-1)}(2z⁶ + 8z³ - 1))/4`.
pub fn field_g<T: Real>(delta: T, z: T) -> T {
    let poly = T::lit(2.0) * z.powi(6) + T::lit(8.0) * z.powi(3) - T::one();
    (T::lit(9.0) + z.powf(T::lit(4.0) * (delta - T::one())) * poly) / T::lit(4.0)
}

/// `h = z^{2Δ}(z^{2Δ}(z⁻² - z)² - (6z + 3z⁻²))/2`.
pub fn field_h<T: Real>(delta: T, z: T) -> T {
    let zd = z.powf(T::lit(2.0) * delta);
    let d = z.powi(-2) - z;
    T::lit(0.5) * zd * (zd * d * d - (T::lit(6.0) * z + T::lit(3.0) * z.powi(-2)))
}

/// Field-model entanglement test; the witness is `y² - uv = h cosh(2βB) - g`.
pub fn field_region<T: Real>(delta: T, z: T, beta_b: T) -> RegionVerdict<T> {
    assert!(z > T::zero(), "z must be positive");
    let witness = field_h(delta, z) * (T::lit(2.0) * beta_b).cosh() - field_g(delta, z);
    RegionVerdict::from_witness(witness)
}

/// Positive root of `z⁶ - 8z³ - 2`: below it a field cannot entangle the
/// XXX ring.
pub fn xxx_field_threshold<T: Real>() -> T {
    (T::lit(4.0) + T::lit(3.0) * T::lit(2.0).sqrt()).cbrt()
}

/// `h`, `g` and `h - g` at `Δ = -1/2`, as functions of `p = z⁻³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldCurves<T> {
    pub p: T,
    pub g: T,
    pub h: T,
    pub hmg: T,
}

/// Field behaviour of the `Δ = -1/2` ring at a given `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldCase {
    /// `h <= 0`: no field entangles the pair.
    Never,
    /// `h > 0 >= h - g`: entangled once `cosh(2βB) > g/h`.
    StrongField,
    /// `h - g > 0`: entangled for every field.
    Always,
}

impl<T: Real> FieldCurves<T> {
    pub fn case(&self) -> FieldCase {
        if self.h <= T::zero() {
            FieldCase::Never
        } else if self.hmg > T::zero() {
            FieldCase::Always
        } else {
            FieldCase::StrongField
        }
    }

    /// `p₁ = 5/2 + 3√5/2`, the positive root of `h`.
    pub fn p1() -> T {
        T::lit(2.5) + T::lit(1.5) * T::lit(5.0).sqrt()
    }

    /// `p₂ = 7`, the positive root of `h - g`.
    pub fn p2() -> T {
        T::lit(7.0)
    }
}

pub fn field_curves_half<T: Real>(p: T) -> FieldCurves<T> {
    assert!(p > T::zero(), "p must be positive");
    let (five, four) = (T::lit(5.0), T::lit(4.0));
    let p2 = p * p;
    FieldCurves {
        p,
        h: (p2 - five * p - five) / T::lit(2.0),
        g: (T::lit(11.0) + T::lit(8.0) * p - p2) / four,
        hmg: (T::lit(3.0) * p2 - T::lit(18.0) * p - T::lit(21.0)) / four,
    }
}
