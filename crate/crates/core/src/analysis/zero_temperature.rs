//! `T → 0` concurrence of the field model from its ground multiplet.
//!
//! At zero temperature the Gibbs state is the equal mixture of the lowest
//! analytic eigenstates. Each eigenstate contributes fixed rational entries
//! to the pair X state, so the limit is computed exactly and only converted
//! to floating point at the end.

use num_rational::Ratio;
use num_traits::Signed;

use crate::scalar::Real;
use crate::spinmodel::{analytic_energies, ModelSpec};

/// Tolerance on `Δ - (|B| - 1/2)` (for `J = 1`) when deciding degeneracy.
pub const QPT_TOL: f64 = 1e-9;

type Q = Ratio<i64>;

/// Unnormalized `(a, d, w, y)` of one eigenstate after tracing out a site:
/// `a = ⟨00|ρ|00⟩`, `d = ⟨11|ρ|11⟩`, `w` inner diagonal, `y` inner coherence.
fn pair_entries(state: usize) -> [Q; 4] {
    let q = |n: i64| Q::new(n, 3);
    let z = Q::from_integer(0);
    match state {
        0 => [Q::from_integer(1), z, z, z],
        1 | 2 => [q(1), z, q(1), q(-1) / 2],
        3 => [q(1), z, q(1), q(1)],
        4 | 5 => [z, q(1), q(1), q(-1) / 2],
        6 => [z, q(1), q(1), q(1)],
        7 => [z, Q::from_integer(1), z, z],
        _ => unreachable!("eight eigenstates"),
    }
}

/// Indices (into the analytic eigenbasis) of the ground multiplet.
pub fn ground_group<T: Real>(spec: &ModelSpec<T>) -> Option<Vec<usize>> {
    let energies = analytic_energies(spec)?;
    let j = spec.exchange().abs();
    let scale = if j > T::zero() { j } else { T::one() };
    let tol = T::lit(2.0 * QPT_TOL) * scale;
    let min = energies.iter().copied().fold(T::infinity(), T::min);
    Some((0..8).filter(|&k| energies[k] - min <= tol).collect())
}

fn exact_sqrt(r: Q) -> Option<Q> {
    let root = |n: i64| {
        let s = (n as f64).sqrt().round() as i64;
        (s * s == n).then_some(s)
    };
    Some(Q::new(root(*r.numer())?, root(*r.denom())?))
}

fn to_f64(r: Q) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Zero-temperature concurrence of neighbouring qubits in the XXZ ring with
/// field `b`. For `J = 1` this is `1/3` when `Δ > |B| - 1/2`, `2/9` on the
/// transition line and `0` below it (for `B ≠ 0`).
pub fn zero_temperature_concurrence<T: Real>(delta: T, b: T, j: T) -> T {
    let spec = ModelSpec::XxzField { j, delta, b };
    let group = ground_group(&spec).expect("uniform model");
    let zero = Q::from_integer(0);
    let [mut a, mut d, mut y] = [zero; 3];
    for &k in &group {
        let [ka, kd, _, ky] = pair_entries(k);
        a += ka;
        d += kd;
        y += ky;
    }
    let n = Q::from_integer(group.len() as i64);
    let ad = a * d;
    match exact_sqrt(ad) {
        Some(root) => {
            let gap = y.abs() - root;
            let c = if gap > zero { Q::from_integer(2) * gap / n } else { zero };
            T::lit(to_f64(c))
        }
        None => {
            let gap = to_f64(y.abs()) - to_f64(ad).sqrt();
            T::lit((2.0 * gap / to_f64(n)).max(0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_values_are_exact() {
        assert_eq!(zero_temperature_concurrence(1.0, 1.0, 1.0), 1.0 / 3.0);
        assert_eq!(zero_temperature_concurrence(0.5, 1.0, 1.0), 2.0 / 9.0);
        assert_eq!(zero_temperature_concurrence(0.0, 1.0, 1.0), 0.0);
        assert_eq!(zero_temperature_concurrence(0.5, -1.0, 1.0), 2.0 / 9.0);
    }

    #[test]
    fn equality_tolerance() {
        assert_eq!(zero_temperature_concurrence(0.5 + 5e-10, 1.0, 1.0), 2.0 / 9.0);
        assert_eq!(zero_temperature_concurrence(0.5 + 1e-8, 1.0, 1.0), 1.0 / 3.0);
        assert_eq!(zero_temperature_concurrence(0.5 - 1e-8, 1.0, 1.0), 0.0);
    }

    #[test]
    fn ground_groups() {
        let spec = ModelSpec::XxzField { j: 1.0, delta: 1.0, b: 1.0 };
        assert_eq!(ground_group(&spec).unwrap(), vec![1, 2]);
        let spec = ModelSpec::XxzField { j: 1.0, delta: 0.5, b: 1.0 };
        assert_eq!(ground_group(&spec).unwrap(), vec![0, 1, 2]);
        let spec = ModelSpec::XxzField { j: -1.0, delta: 0.0, b: 0.0 };
        assert_eq!(ground_group(&spec).unwrap(), vec![3, 6]);
        assert!(ground_group(&ModelSpec::GeneralXyz { j: [1.0; 3], b: [0.0; 3] }).is_none());
    }

    #[test]
    fn pair_entries_have_unit_trace() {
        for k in 0..8 {
            let [a, d, w, _] = pair_entries(k);
            assert_eq!(a + d + Q::from_integer(2) * w, Q::from_integer(1), "state {k}");
        }
    }

    #[test]
    fn ferromagnetic_xx_ground_state() {
        // ψ3 and ψ6 share the ground level; the mixture keeps 1/3
        assert_eq!(zero_temperature_concurrence(0.0, 0.0, -1.0), 1.0 / 3.0);
    }
}
