//! Gibbs states of the ring, partition functions and two-qubit reductions.
//!
//! Units: `k = 1`, so `β = 1/T` and the dimensionless coupling is `x = βJ`,
//! `z = eˣ`.

use num_complex::Complex;
use num_traits::Zero;

use crate::complexlinalg::{hermitian_eigen, ComplexMatrix, Spectrum};
use crate::concurrence::XStateParams;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spinmodel::{build_hamiltonian, ModelSpec, DIM, SITES};

/// Density-matrix validation tolerance (trace, Hermiticity, negativity).
pub const DENSITY_TOL: f64 = 1e-10;

/// A temperature together with the derived `β`, `x = βJ` and `z = eˣ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint<T> {
    pub temperature: T,
    pub beta: T,
    pub x: T,
    pub z: T,
}

impl<T: Real> ThermalPoint<T> {
    /// `temperature` may be zero, in which case `β = ∞`.
    pub fn new(temperature: T, j: T) -> Result<Self> {
        if !(temperature >= T::zero()) || !temperature.is_finite() || !j.is_finite() {
            return Err(Error::InvalidTemperature(temperature.as_f64()));
        }
        let beta = if temperature == T::zero() {
            T::infinity()
        } else {
            T::one() / temperature
        };
        let x = if j == T::zero() { T::zero() } else { j / temperature };
        Ok(Self {
            temperature,
            beta,
            x,
            z: x.exp(),
        })
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.temperature == T::zero()
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> std::fmt::Debug for DensityMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DensityMatrix({:?})", self.mat)
    }
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and non-negativity within [`DENSITY_TOL`].
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        let tol = T::tol(DENSITY_TOL);
        if !mat.is_finite() {
            return Err(Error::InvalidDensity("non-finite entries".into()));
        }
        if mat.hermitian_defect() > tol {
            return Err(Error::InvalidDensity("not Hermitian".into()));
        }
        let tr = mat.trace();
        if (tr - Complex::new(T::one(), T::zero())).norm() > tol {
            return Err(Error::InvalidDensity(format!("trace {} != 1", tr.re)));
        }
        let low = hermitian_eigen(&mat)?.eigenvalues[0];
        if low < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {low}")));
        }
        Ok(Self { mat })
    }

    /// Normalizes a positive semidefinite operator by its trace.
    pub fn from_unnormalized(mat: ComplexMatrix<T>) -> Result<Self> {
        let tr = mat.trace().re;
        if !(tr > T::zero()) {
            return Err(Error::InvalidDensity(format!("trace {tr} is not positive")));
        }
        Self::new(mat.scale(T::one() / tr))
    }

    /// Pure state `|ψ⟩⟨ψ|` of a normalized vector.
    pub fn pure(psi: &[Complex<T>]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi, psi))
    }

    pub(crate) fn new_unchecked(mat: ComplexMatrix<T>) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Maximally mixed state of dimension `dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(T::one() / T::lit(dim as f64)),
        }
    }

    /// Two-qubit state of sites 1 and 2.
    pub fn partial_trace_site3(&self) -> Result<DensityMatrix<T>> {
        self.trace_out(3)
    }

    /// Two-qubit state left after tracing out `site` (1-based); the
    /// remaining sites keep ascending order.
    pub fn trace_out(&self, site: usize) -> Result<DensityMatrix<T>> {
        if self.dim() != DIM {
            return Err(Error::Dimension {
                expected: DIM,
                got: self.dim(),
            });
        }
        Ok(Self {
            mat: partial_trace(&self.mat, site),
        })
    }
}

/// Partial trace of an 8x8 three-qubit operator over `site` (1-based).
///
/// `out[{ab},{cd}] = Σ_e m[{a b e},{c d e}]` for `site = 3`, and likewise
/// for the other sites with the kept qubits in ascending order.
pub fn partial_trace<T: Real>(m: &ComplexMatrix<T>, site: usize) -> ComplexMatrix<T> {
    assert_eq!(m.dim(), DIM, "partial trace expects a three-qubit operator");
    assert!((1..=SITES).contains(&site), "site {site} out of range");
    // bit position of the traced qubit (qubit 1 is the most significant)
    let shift = SITES - site;
    let embed = |pair: usize, e: usize| -> usize {
        let high = pair >> shift;
        let low = pair & ((1 << shift) - 1);
        (high << (shift + 1)) | (e << shift) | low
    };
    ComplexMatrix::from_fn(4, |r, c| {
        (0..2)
            .map(|e| m[(embed(r, e), embed(c, e))])
            .fold(Complex::zero(), |a, b| a + b)
    })
}

fn model_spectrum<T: Real>(spec: &ModelSpec<T>) -> Result<Spectrum<T>> {
    if !spec.is_finite() {
        return Err(Error::InvalidDensity("non-finite model parameters".into()));
    }
    hermitian_eigen(&build_hamiltonian(spec))
}

fn positive_temperature<T: Real>(t: T) -> Result<T> {
    if t > T::zero() && t.is_finite() {
        Ok(t)
    } else {
        Err(Error::InvalidTemperature(t.as_f64()))
    }
}

/// `ln Z`, evaluated in the shifted form `-βE_min + ln Σ exp(-β(E - E_min))`.
pub fn log_partition_function<T: Real>(spec: &ModelSpec<T>, temperature: T) -> Result<T> {
    let t = positive_temperature(temperature)?;
    let spectrum = model_spectrum(spec)?;
    let e_min = spectrum.eigenvalues[0];
    let beta = T::one() / t;
    let shifted: T = spectrum
        .eigenvalues
        .iter()
        .map(|&e| (-(e - e_min) * beta).exp())
        .sum();
    Ok(-beta * e_min + shifted.ln())
}

/// `Z = Σ_k exp(-βE_k)` from the numerically obtained spectrum.
pub fn partition_function<T: Real>(spec: &ModelSpec<T>, temperature: T) -> Result<T> {
    log_partition_function(spec, temperature).map(T::exp)
}

/// `exp(-βH)/Z`; at `T = 0` the equal mixture over the degenerate ground group.
pub fn gibbs_density<T: Real>(spec: &ModelSpec<T>, temperature: T) -> Result<DensityMatrix<T>> {
    if !(temperature >= T::zero()) || !temperature.is_finite() {
        return Err(Error::InvalidTemperature(temperature.as_f64()));
    }
    let spectrum = model_spectrum(spec)?;
    Ok(gibbs_from_spectrum(&spectrum, temperature))
}

/// Gibbs state of an arbitrary Hermitian spectrum at `temperature >= 0`.
pub fn gibbs_from_spectrum<T: Real>(spectrum: &Spectrum<T>, temperature: T) -> DensityMatrix<T> {
    let e_min = spectrum.eigenvalues[0];
    let weights: Vec<T> = if temperature == T::zero() {
        let ground = spectrum.degenerate_groups()[0].clone();
        (0..spectrum.dim())
            .map(|k| if ground.contains(&k) { T::one() } else { T::zero() })
            .collect()
    } else {
        let beta = T::one() / temperature;
        spectrum
            .eigenvalues
            .iter()
            .map(|&e| (-(e - e_min) * beta).exp())
            .collect()
    };
    let total: T = weights.iter().copied().sum();
    let mat = spectrum.compose_indexed(|k, _| weights[k] / total);
    DensityMatrix::new_unchecked(mat)
}

/// Closed-form reduced-state parameters `(u, v, w, y, Z)`.
///
/// The two-site reduced state is `(2/(3Z)) [[u,0,0,0],[0,w,y,0],[0,y,w,0],[0,0,0,v]]`.
pub fn xstate_params<T: Real>(spec: &ModelSpec<T>, temperature: T) -> Result<XStateParams<T>> {
    let t = positive_temperature(temperature)?;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let three_halves = T::lit(1.5);
    match *spec {
        ModelSpec::Xx { j } => {
            let x = j / t;
            let (ex, e2) = (x.exp(), (-two * x).exp());
            let v = three_halves + ex + half * e2;
            Ok(XStateParams {
                u: v,
                v,
                w: two * ex + e2,
                y: e2 - ex,
                z: two + T::lit(4.0) * ex + two * e2,
            })
        }
        ModelSpec::Xxz { j, delta } => {
            let z = (j / t).exp();
            let k = z.powf(two * delta) * (two * z + z.powi(-2));
            let v = three_halves + half * k;
            Ok(XStateParams {
                u: v,
                v,
                w: k,
                y: z.powf(two * delta) * (z.powi(-2) - z),
                z: two + two * k,
            })
        }
        ModelSpec::XxzField { j, delta, b } => {
            let z = (j / t).exp();
            let bb = b / t;
            let zd = z.powf(two * delta);
            let k = zd * (two * z + z.powi(-2));
            let three = T::lit(3.0);
            Ok(XStateParams {
                u: three_halves * (three * bb).exp() + half * bb.exp() * k,
                v: three_halves * (-three * bb).exp() + half * (-bb).exp() * k,
                w: bb.cosh() * k,
                y: bb.cosh() * zd * (z.powi(-2) - z),
                z: two * (three * bb).cosh() + two * bb.cosh() * k,
            })
        }
        ModelSpec::GeneralXyz { .. } => Err(Error::UnsupportedModel("xyz")),
    }
}

/// The reduced two-site matrix assembled from closed-form parameters.
pub fn xstate_matrix<T: Real>(p: &XStateParams<T>) -> ComplexMatrix<T> {
    let s = T::lit(2.0) / (T::lit(3.0) * p.z);
    let r = |v: T| Complex::new(v * s, T::zero());
    let o = Complex::zero();
    ComplexMatrix::from_row_major(vec![
        r(p.u), o, o, o,
        o, r(p.w), r(p.y), o,
        o, r(p.y), r(p.w), o,
        o, o, o, r(p.v),
    ])
    .expect("4x4")
}
