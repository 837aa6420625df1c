//! Wootters concurrence: the general spin-flip construction, the X-state
//! shortcut and the model-specific closed forms.

use crate::complexlinalg::{kron, psd_sqrt, singular_values, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spinmodel::{single_qubit, Axis, ModelSpec};
use crate::thermalstate::{xstate_params, DensityMatrix};

/// Negative values of `λ1 - λ2 - λ3 - λ4` above `-BOUNDARY_DEAD_BAND` count as zero.
pub const BOUNDARY_DEAD_BAND: f64 = 1e-14;

/// Square roots `λ` of the spin-flip spectrum (descending) and the concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult<T> {
    pub lambdas: [T; 4],
    pub concurrence: T,
}

/// Closed-form parameters of the reduced two-site X state.
///
/// The state is `(2/(3Z)) [[u,0,0,0],[0,w,y,0],[0,y,w,0],[0,0,0,v]]`;
/// `u = v` without a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams<T> {
    pub u: T,
    pub v: T,
    pub w: T,
    pub y: T,
    /// Partition function.
    pub z: T,
}

impl<T: Real> XStateParams<T> {
    /// `2(u + v + 2w)/(3Z)`, which equals 1 for a valid state.
    pub fn trace(&self) -> T {
        T::lit(2.0) * (self.u + self.v + T::lit(2.0) * self.w) / (T::lit(3.0) * self.z)
    }
}

/// `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`, conjugation taken in the computational basis.
pub fn spin_flip<T: Real>(rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let sy = single_qubit::<T>(Axis::Y);
    let yy = kron(&sy, &sy);
    &(&yy * &rho.conj()) * &yy
}

fn clip<T: Real>(raw: T) -> T {
    if raw > T::zero() {
        raw.min(T::one())
    } else {
        // covers the (-BOUNDARY_DEAD_BAND, 0) band as well
        T::zero()
    }
}

/// Concurrence of an arbitrary two-qubit state.
///
/// The λ's, square roots of the eigenvalues of `ρρ̃`, are taken as the
/// singular values of `√ρ √ρ̃`; `(√ρ√ρ̃)(√ρ√ρ̃)^H = √ρ ρ̃ √ρ` has the same
/// spectrum as `ρρ̃`, and skipping the square root keeps small λ's accurate.
pub fn concurrence_general<T: Real>(rho: &DensityMatrix<T>) -> Result<ConcurrenceResult<T>> {
    if rho.dim() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let root = psd_sqrt(rho.matrix())?;
    let flipped_root = spin_flip(&root);
    let sv = singular_values(&(&root * &flipped_root))?;
    let lambdas = [sv[0], sv[1], sv[2], sv[3]];
    let raw = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(ConcurrenceResult {
        lambdas,
        concurrence: clip(raw),
    })
}

/// `C = (4/(3Z)) max(|y| - √(uv), 0)`.
pub fn concurrence_xstate<T: Real>(p: &XStateParams<T>) -> T {
    let gap = p.y.abs() - p.u.sqrt() * p.v.sqrt();
    clip(T::lit(4.0) / (T::lit(3.0) * p.z) * gap)
}

/// Concurrence of the XX ring straight from `x = J/T`.
pub fn concurrence_xx<T: Real>(x: T) -> T {
    let (two, three) = (T::lit(2.0), T::lit(3.0));
    let raw = if x < T::zero() {
        // multiplied through by z² = e^{2x}
        let z = x.exp();
        (T::one() - T::lit(4.0) * z.powi(3) - three * z * z)
            / (three * (T::one() + two * z.powi(3) + z * z))
    } else {
        // multiplied through by e^{-x}
        let (a, b) = ((-x).exp(), (-three * x).exp());
        (two * (b - T::one()).abs() - three * a - two - b) / (three * (a + two + b))
    };
    clip(raw)
}

/// Closed-form concurrence for the XX, XXZ and field models.
pub fn concurrence_closed_form<T: Real>(spec: &ModelSpec<T>, temperature: T) -> Result<T> {
    match *spec {
        ModelSpec::Xx { j } => {
            if !(temperature > T::zero()) || !temperature.is_finite() {
                return Err(Error::InvalidTemperature(temperature.as_f64()));
            }
            Ok(concurrence_xx(j / temperature))
        }
        ModelSpec::GeneralXyz { .. } => Err(Error::UnsupportedModel("xyz")),
        _ => xstate_params(spec, temperature).map(|p| concurrence_xstate(&p)),
    }
}
