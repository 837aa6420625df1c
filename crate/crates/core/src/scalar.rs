//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point type the physics is generic over (`f32` or `f64`).
///
/// Tolerances throughout the crate are calibrated for `f64`. [`Real::tol`]
/// widens them to what a coarser type can actually resolve, so the same
/// code paths converge for `f32`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// `v`, but never tighter than `ulps` machine epsilons.
    #[inline]
    fn tol_ulps(v: f64, ulps: f64) -> Self {
        Self::lit(v).max(Self::epsilon() * Self::lit(ulps))
    }

    /// `v`, but never tighter than 16 machine epsilons.
    #[inline]
    fn tol(v: f64) -> Self {
        Self::tol_ulps(v, 16.0)
    }

    /// Lossy conversion back to `f64`, for error payloads and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
