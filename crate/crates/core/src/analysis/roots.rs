//! Bracketing root finder.

use crate::scalar::Real;

/// Iteration cap for [`bisect`].
pub const MAX_ITERATIONS: usize = 200;

/// Plain bisection on `[lo, hi]`; `None` when `f(lo)` and `f(hi)` share a sign.
///
/// Stops once the bracket is narrower than `tol` or after [`MAX_ITERATIONS`].
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> Option<T> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == T::zero() {
        return Some(lo);
    }
    if f_hi == T::zero() {
        return Some(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo > T::zero()) == (f_hi > T::zero()) {
        return None;
    }
    let two = T::lit(2.0);
    for _ in 0..MAX_ITERATIONS {
        let mid = (lo + hi) / two;
        if hi - lo <= tol || mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Some(mid);
        }
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) / two)
}
