//! Three-qubit Heisenberg ring Hamiltonians, single-site Pauli operators,
//! the cyclic shift symmetry and the analytic eigenbasis shared by the
//! uniform models.
//!
//! Basis convention (fixed): index `b = 4*q1 + 2*q2 + q3` for `|q1 q2 q3⟩`,
//! and `σᶻ|1⟩ = +|1⟩`, `σᶻ|0⟩ = -|0⟩`. With this choice the uniform field
//! term `B Σσᶻ` gives `|000⟩` the energy `-3B`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::complexlinalg::{kron, ComplexMatrix};
use crate::scalar::Real;

/// Number of sites in the ring.
pub const SITES: usize = 3;
/// Hilbert-space dimension of the ring.
pub const DIM: usize = 1 << SITES;

/// Which Hamiltonian and its couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec<T> {
    /// `(J/2) Σ (σˣσˣ + σʸσʸ)`.
    Xx { j: T },
    /// `H_XX + (ΔJ/2) Σ (σᶻσᶻ - 1)`.
    Xxz { j: T, delta: T },
    /// `H_XXZ + B Σ σᶻ`.
    XxzField { j: T, delta: T, b: T },
    /// `Σ (J1/2 σˣσˣ + J2/2 σʸσʸ + J3/2 σᶻσᶻ) + Σ B_n σᶻ_n`.
    GeneralXyz { j: [T; 3], b: [T; 3] },
}

impl<T: Real> ModelSpec<T> {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Xx { .. } => "xx",
            ModelSpec::Xxz { .. } => "xxz",
            ModelSpec::XxzField { .. } => "xxzfield",
            ModelSpec::GeneralXyz { .. } => "xyz",
        }
    }

    /// Exchange constant of the uniform models; `J1` for the general model.
    pub fn exchange(&self) -> T {
        match *self {
            ModelSpec::Xx { j } | ModelSpec::Xxz { j, .. } | ModelSpec::XxzField { j, .. } => j,
            ModelSpec::GeneralXyz { j, .. } => j[0],
        }
    }

    /// Anisotropy; zero for the XX model, `None` for the general model.
    pub fn anisotropy(&self) -> Option<T> {
        match *self {
            ModelSpec::Xx { .. } => Some(T::zero()),
            ModelSpec::Xxz { delta, .. } | ModelSpec::XxzField { delta, .. } => Some(delta),
            ModelSpec::GeneralXyz { .. } => None,
        }
    }

    /// Uniform field; zero for the field-free models, `None` for the general model.
    pub fn field(&self) -> Option<T> {
        match *self {
            ModelSpec::Xx { .. } | ModelSpec::Xxz { .. } => Some(T::zero()),
            ModelSpec::XxzField { b, .. } => Some(b),
            ModelSpec::GeneralXyz { .. } => None,
        }
    }

    /// Whether every parameter is finite.
    pub fn is_finite(&self) -> bool {
        match *self {
            ModelSpec::Xx { j } => j.is_finite(),
            ModelSpec::Xxz { j, delta } => j.is_finite() && delta.is_finite(),
            ModelSpec::XxzField { j, delta, b } => j.is_finite() && delta.is_finite() && b.is_finite(),
            ModelSpec::GeneralXyz { j, b } => j.iter().chain(&b).all(|v| v.is_finite()),
        }
    }

    /// Whether the Hamiltonian commutes with the cyclic shift.
    pub fn is_uniform(&self) -> bool {
        match self {
            ModelSpec::GeneralXyz { b, .. } => b[0] == b[1] && b[1] == b[2],
            _ => true,
        }
    }
}

/// Pauli-type single-site operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
    /// Raising, `(σˣ + iσʸ)/2`, maps `|0⟩ -> |1⟩`.
    Plus,
    /// Lowering, `(σˣ - iσʸ)/2`.
    Minus,
}

/// 2x2 single-qubit operator in the `(|0⟩, |1⟩)` basis.
pub fn single_qubit<T: Real>(axis: Axis) -> ComplexMatrix<T> {
    let o = Complex::zero();
    let one = Complex::one();
    let i = Complex::i();
    let entries = match axis {
        Axis::X => vec![o, one, one, o],
        Axis::Y => vec![o, i, -i, o],
        Axis::Z => vec![-one, o, o, one],
        Axis::Plus => vec![o, o, one, o],
        Axis::Minus => vec![o, one, o, o],
    };
    ComplexMatrix::from_row_major(entries).expect("2x2")
}

/// `σ^axis` acting on `site` (1-based) of the three-qubit ring.
pub fn pauli<T: Real>(site: usize, axis: Axis) -> ComplexMatrix<T> {
    assert!((1..=SITES).contains(&site), "site {site} out of range 1..=3");
    let id = ComplexMatrix::identity(2);
    let op = single_qubit(axis);
    (1..=SITES)
        .map(|s| if s == site { op.clone() } else { id.clone() })
        .reduce(|acc, m| kron(&acc, &m))
        .expect("three sites")
}

/// Computational basis vector `|q1 q2 q3⟩`.
pub fn basis_state<T: Real>(bits: [u8; 3]) -> Vec<Complex<T>> {
    let index = bits.iter().fold(0usize, |acc, &b| {
        assert!(b <= 1, "qubit value must be 0 or 1");
        (acc << 1) | b as usize
    });
    let mut v = vec![Complex::zero(); DIM];
    v[index] = Complex::one();
    v
}

fn bond_sum<T: Real>(axis: Axis) -> ComplexMatrix<T> {
    (1..=SITES)
        .map(|n| {
            let next = n % SITES + 1;
            &pauli::<T>(n, axis) * &pauli(next, axis)
        })
        .reduce(|a, b| &a + &b)
        .expect("three bonds")
}

fn field_sum<T: Real>(fields: [T; 3]) -> ComplexMatrix<T> {
    (1..=SITES)
        .map(|n| pauli::<T>(n, Axis::Z).scale(fields[n - 1]))
        .reduce(|a, b| &a + &b)
        .expect("three sites")
}

/// 8x8 Hamiltonian of the ring, periodic boundary (site 4 ≡ site 1).
pub fn build_hamiltonian<T: Real>(spec: &ModelSpec<T>) -> ComplexMatrix<T> {
    let half = T::lit(0.5);
    let xx_yy = || &bond_sum::<T>(Axis::X) + &bond_sum(Axis::Y);
    let anisotropic = |j: T, delta: T| {
        let shifted = &bond_sum::<T>(Axis::Z) - &ComplexMatrix::identity(DIM).scale(T::lit(3.0));
        shifted.scale(delta * j * half)
    };
    match *spec {
        ModelSpec::Xx { j } => xx_yy().scale(j * half),
        ModelSpec::Xxz { j, delta } => &xx_yy().scale(j * half) + &anisotropic(j, delta),
        ModelSpec::XxzField { j, delta, b } => {
            let h = &xx_yy().scale(j * half) + &anisotropic(j, delta);
            &h + &field_sum([b; 3])
        }
        ModelSpec::GeneralXyz { j, b } => {
            let h = &(&bond_sum::<T>(Axis::X).scale(j[0] * half) + &bond_sum(Axis::Y).scale(j[1] * half))
                + &bond_sum(Axis::Z).scale(j[2] * half);
            &h + &field_sum(b)
        }
    }
}

/// Cyclic shift `P` acting on amplitudes as `(Pψ)(q1 q2 q3) = ψ(q3 q1 q2)`.
///
/// On basis kets this reads `P|q1 q2 q3⟩ = |q2 q3 q1⟩`; with this direction
/// `P|ψ1⟩ = q²|ψ1⟩` and `P|ψ2⟩ = q|ψ2⟩` for the states of
/// [`analytic_eigenstates`].
pub fn cyclic_shift<T: Real>() -> ComplexMatrix<T> {
    let mut p = ComplexMatrix::zeros(DIM);
    for b in 0..DIM {
        let (q1, q2, q3) = ((b >> 2) & 1, (b >> 1) & 1, b & 1);
        let target = (q2 << 2) | (q3 << 1) | q1;
        p[(target, b)] = Complex::one();
    }
    p
}

/// `q = exp(2πi/3)`.
pub fn cube_root_of_unity<T: Real>() -> Complex<T> {
    Complex::from_polar(T::one(), T::lit(2.0) * T::PI() / T::lit(3.0))
}

/// The eight common eigenstates `|ψ0⟩ … |ψ7⟩` of the uniform ring models.
pub fn analytic_eigenstates<T: Real>() -> [Vec<Complex<T>>; 8] {
    let q = cube_root_of_unity::<T>();
    let q2 = q * q;
    let one = Complex::one();
    let norm = T::one() / T::lit(3.0).sqrt();
    let combo = |terms: [(Complex<T>, [u8; 3]); 3]| -> Vec<Complex<T>> {
        let mut v = vec![Complex::zero(); DIM];
        for (amp, bits) in terms {
            let e = basis_state::<T>(bits);
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi = *vi + amp * ei * norm;
            }
        }
        v
    };
    [
        basis_state([0, 0, 0]),
        combo([(q, [0, 0, 1]), (q2, [0, 1, 0]), (one, [1, 0, 0])]),
        combo([(q2, [0, 0, 1]), (q, [0, 1, 0]), (one, [1, 0, 0])]),
        combo([(one, [0, 0, 1]), (one, [0, 1, 0]), (one, [1, 0, 0])]),
        combo([(q, [1, 1, 0]), (q2, [1, 0, 1]), (one, [0, 1, 1])]),
        combo([(q2, [1, 1, 0]), (q, [1, 0, 1]), (one, [0, 1, 1])]),
        combo([(one, [1, 1, 0]), (one, [1, 0, 1]), (one, [0, 1, 1])]),
        basis_state([1, 1, 1]),
    ]
}

/// Energies `E_0 … E_7` paired with [`analytic_eigenstates`], for the
/// uniform models. `None` for the general model.
pub fn analytic_energies<T: Real>(spec: &ModelSpec<T>) -> Option<[T; 8]> {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (j, delta, b) = match *spec {
        ModelSpec::Xx { j } => (j, T::zero(), T::zero()),
        ModelSpec::Xxz { j, delta } => (j, delta, T::zero()),
        ModelSpec::XxzField { j, delta, b } => (j, delta, b),
        ModelSpec::GeneralXyz { .. } => return None,
    };
    let single = -two * j * (delta + half);
    let symmetric = -two * j * (delta - T::one());
    let three_b = T::lit(3.0) * b;
    Some([
        -three_b,
        single - b,
        single - b,
        symmetric - b,
        single + b,
        single + b,
        symmetric + b,
        three_b,
    ])
}

/// Ascending analytic spectrum of the uniform models.
pub fn analytic_spectrum<T: Real>(spec: &ModelSpec<T>) -> Option<Vec<T>> {
    let mut e = analytic_energies(spec)?.to_vec();
    e.sort_by(|a, b| a.partial_cmp(b).expect("finite energies"));
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Spec = ModelSpec<f64>;
    use crate::complexlinalg::hermitian_eigen;

    type C = Complex<f64>;

    fn dist(a: &[C], b: &[C]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    fn scaled(v: &[C], s: C) -> Vec<C> {
        v.iter().map(|x| x * s).collect()
    }

    #[test]
    fn basis_convention_pins_sign_and_order() {
        let z1 = pauli::<f64>(1, Axis::Z);
        let s000 = basis_state([0, 0, 0]);
        assert_eq!(z1.apply(&s000), scaled(&s000, C::new(-1.0, 0.0)));

        let raised = pauli::<f64>(2, Axis::Plus).apply(&s000);
        assert_eq!(raised, basis_state([0, 1, 0]));

        let total_z = &(&pauli::<f64>(1, Axis::Z) + &pauli(2, Axis::Z)) + &pauli(3, Axis::Z);
        let s111 = basis_state([1, 1, 1]);
        assert_eq!(total_z.apply(&s111), scaled(&s111, C::new(3.0, 0.0)));

        // qubit 1 is the most significant bit
        assert_eq!(basis_state::<f64>([1, 0, 0])[4], C::new(1.0, 0.0));
    }

    #[test]
    fn raising_lowering_from_x_and_y() {
        let x = single_qubit::<f64>(Axis::X);
        let y = single_qubit::<f64>(Axis::Y);
        let plus = (&x + &y.scale_complex(C::i())).scale(0.5);
        let minus = (&x - &y.scale_complex(C::i())).scale(0.5);
        assert_eq!(plus, single_qubit(Axis::Plus));
        assert_eq!(minus, single_qubit(Axis::Minus));
        // [σx, σy] = 2iσz keeps the algebra right-handed under the flipped z sign
        let comm = x.commutator(&y);
        assert!(comm.max_abs_diff(&single_qubit::<f64>(Axis::Z).scale_complex(C::new(0.0, 2.0))) < 1e-15);
    }

    #[test]
    fn xx_spectrum_matches_closed_form() {
        let h = build_hamiltonian(&Spec::Xx { j: 1.0 });
        let s = hermitian_eigen(&h).unwrap();
        let expect = [-1.0, -1.0, -1.0, -1.0, 0.0, 0.0, 2.0, 2.0];
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{:?}", s.eigenvalues);
        }
    }

    #[test]
    fn xxz_ferromagnetic_minus_half() {
        let h = build_hamiltonian(&Spec::Xxz { j: -1.0, delta: -0.5 });
        let s = hermitian_eigen(&h).unwrap();
        let expect = [-3.0, -3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{:?}", s.eigenvalues);
        }
    }

    #[test]
    fn field_spectrum_matches_closed_form() {
        let spec = Spec::XxzField { j: 0.7, delta: -1.3, b: 0.45 };
        let s = hermitian_eigen(&build_hamiltonian(&spec)).unwrap();
        let expect = analytic_spectrum(&spec).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn cyclic_shift_action() {
        let p = cyclic_shift::<f64>();
        assert_eq!(p.apply(&basis_state([0, 0, 1])), basis_state([0, 1, 0]));
        assert_eq!(p.apply(&basis_state([1, 1, 0])), basis_state([1, 0, 1]));
        let p3 = &(&p * &p) * &p;
        assert_eq!(p3, ComplexMatrix::identity(DIM));
    }

    #[test]
    fn shift_eigenvalues_of_analytic_states() {
        let p = cyclic_shift::<f64>();
        let q = cube_root_of_unity::<f64>();
        let states = analytic_eigenstates::<f64>();
        let expect = [C::new(1.0, 0.0), q * q, q, C::new(1.0, 0.0), q * q, q, C::new(1.0, 0.0), C::new(1.0, 0.0)];
        for (psi, ev) in states.iter().zip(expect) {
            assert!(dist(&p.apply(psi), &scaled(psi, ev)) < 1e-14);
        }
    }

    #[test]
    fn hamiltonians_commute_with_shift() {
        let p = cyclic_shift::<f64>();
        let specs = [
            Spec::Xx { j: 1.3 },
            Spec::Xxz { j: -0.4, delta: 2.5 },
            Spec::XxzField { j: 0.9, delta: -0.5, b: 1.7 },
            Spec::GeneralXyz { j: [0.3, -1.1, 2.0], b: [0.4; 3] },
        ];
        for spec in specs {
            let h = build_hamiltonian(&spec);
            assert!(h.hermitian_defect() == 0.0);
            assert!(h.commutator(&p).max_abs() <= 1e-12, "{spec:?}");
        }
        let skew = build_hamiltonian(&Spec::GeneralXyz { j: [1.0; 3], b: [0.0, 0.0, 1.0] });
        assert!(!Spec::GeneralXyz { j: [1.0; 3], b: [0.0, 0.0, 1.0] }.is_uniform());
        assert!(skew.commutator(&p).max_abs() > 0.1);
    }

    #[test]
    fn analytic_states_orthonormal_and_eigen() {
        let states = analytic_eigenstates::<f64>();
        for (a, va) in states.iter().enumerate() {
            for (b, vb) in states.iter().enumerate() {
                let ip: C = va.iter().zip(vb).map(|(x, y)| x.conj() * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip - C::new(expect, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(states[0], basis_state([0, 0, 0]));
        let j = -0.8;
        let h = build_hamiltonian(&Spec::Xx { j });
        assert!(dist(&h.apply(&states[3]), &scaled(&states[3], C::new(2.0 * j, 0.0))) < 1e-14);
    }

    #[test]
    fn q_identities() {
        let q = cube_root_of_unity::<f64>();
        assert!((q * q * q - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!((q * q + q + C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn general_xyz_reduces_to_field_model_up_to_constant() {
        let (j, delta, b) = (-0.6, 1.4, 0.3);
        let xyz = build_hamiltonian(&Spec::GeneralXyz { j: [j, j, delta * j], b: [b; 3] });
        let field = build_hamiltonian(&Spec::XxzField { j, delta, b });
        let shift = ComplexMatrix::identity(DIM).scale(1.5 * delta * j);
        assert!((&field + &shift).max_abs_diff(&xyz) < 1e-14);
    }
}
