//! Pairwise thermal entanglement in three-qubit Heisenberg rings.
//!
//! The crate builds the ring Hamiltonians (XX, XXZ, XXZ in a uniform field
//! and the general XYZ model), forms Gibbs states, reduces them to a pair
//! of qubits and evaluates the Wootters concurrence two ways: through exact
//! diagonalization and through closed-form expressions. The [`analysis`]
//! module locates entanglement regions, critical temperatures and the
//! zero-temperature transition.
//!
//! Numerics are generic over [`Real`] (`f32`/`f64`); the aliases below fix
//! the scalar to `f64`, which is what the tolerances are calibrated for.

pub mod analysis;
pub mod complexlinalg;
pub mod concurrence;
pub mod error;
pub mod scalar;
pub mod spinmodel;
pub mod thermalstate;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;
pub type ComplexMatrix = complexlinalg::ComplexMatrix<f64>;
pub type Spectrum = complexlinalg::Spectrum<f64>;
pub type ModelSpec = spinmodel::ModelSpec<f64>;
pub type ThermalPoint = thermalstate::ThermalPoint<f64>;
pub type DensityMatrix = thermalstate::DensityMatrix<f64>;
pub type XStateParams = concurrence::XStateParams<f64>;
pub type ConcurrenceResult = concurrence::ConcurrenceResult<f64>;
pub type CriticalPoint = analysis::CriticalPoint<f64>;
pub type RegionVerdict = analysis::RegionVerdict<f64>;
pub type FieldCurves = analysis::FieldCurves<f64>;
