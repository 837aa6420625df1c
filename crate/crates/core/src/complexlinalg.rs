//! Dense complex linear algebra for the small (n <= 8) matrices this crate
//! works with: arithmetic, Kronecker products, a cyclic Jacobi eigensolver
//! for Hermitian matrices and PSD square roots.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Off-diagonal Frobenius norm at which Jacobi stops, relative to `‖m‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-13;
/// Maximum number of full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative Hermiticity tolerance accepted by [`hermitian_eigen`].
pub const HERMITIAN_REL_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as zero by [`psd_sqrt`].
pub const PSD_CLAMP: f64 = 1e-12;
/// Two eigenvalues `a <= b` belong to one degenerate group when
/// `b - a <= DEGENERACY_TOL * (1 + |b|)`.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a square.
    pub fn from_row_major(entries: Vec<Complex<T>>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != entries.len() {
            return Err(Error::Dimension {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    /// Real matrix from nested rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| {
            assert_eq!(rows[i].len(), dim, "row {i} has the wrong length");
            Complex::new(T::lit(rows[i][j]), T::zero())
        })
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &[Complex<T>], b: &[Complex<T>]) -> Self {
        assert_eq!(a.len(), b.len());
        Self::from_fn(a.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Entry-wise complex conjugate (not transposed).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self[(i, j)] * v[j])
                    .fold(Complex::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Largest entry-wise modulus of `self - self^H`.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, rel_tol: T) -> bool {
        self.hermitian_defect() <= rel_tol * self.max_abs()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a, T: Real> Mul for &'a ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<'a, T: Real> Add for &'a ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a, T: Real> Sub for &'a ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na * nb, |i, j| a[(i / nb, j / nb)] * b[(i % nb, j % nb)])
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// `eigenvalues` ascend; `eigenvectors[k]` is the unit-norm vector paired
/// with `eigenvalues[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Vec<Vec<Complex<T>>>,
}

impl<T: Real> Spectrum<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V f(Λ) V^H`.
    pub fn compose(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        self.compose_indexed(|_, e| f(e))
    }

    /// `Σ_k f(k, λ_k) |v_k⟩⟨v_k|`.
    pub fn compose_indexed(&self, f: impl Fn(usize, T) -> T) -> ComplexMatrix<T> {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, (&e, v)) in self.eigenvalues.iter().zip(&self.eigenvectors).enumerate() {
            let w = f(k, e);
            if w == T::zero() {
                continue;
            }
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + vi * v[j].conj();
                }
            }
        }
        out
    }

    /// `V Λ V^H`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.compose(|e| e)
    }

    /// Matrix whose k-th column is `eigenvectors[k]`.
    pub fn eigenvector_matrix(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.dim(), |i, k| self.eigenvectors[k][i])
    }

    /// Index ranges of near-degenerate eigenvalues, in ascending order.
    pub fn degenerate_groups(&self) -> Vec<std::ops::Range<usize>> {
        let tol = T::tol_ulps(DEGENERACY_TOL, 1e4);
        let mut groups = Vec::new();
        let mut start = 0;
        for k in 1..=self.dim() {
            let split = k == self.dim() || {
                let (a, b) = (self.eigenvalues[k - 1], self.eigenvalues[k]);
                b - a > tol * (T::one() + b.abs())
            };
            if split {
                groups.push(start..k);
                start = k;
            }
        }
        groups
    }
}

/// Cyclic complex Jacobi eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<Spectrum<T>> {
    if !m.is_finite() {
        return Err(Error::NotHermitian {
            asymmetry: f64::NAN,
        });
    }
    let defect = m.hermitian_defect();
    if defect > T::tol(HERMITIAN_REL_TOL) * m.max_abs() {
        return Err(Error::NotHermitian {
            asymmetry: defect.as_f64(),
        });
    }

    let n = m.dim();
    // Symmetrize so that roundoff in the input cannot bias the rotations.
    let mut a = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex::new(m[(i, i)].re, T::zero())
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * T::lit(0.5)
        }
    });
    let mut v = ComplexMatrix::<T>::identity(n);
    let threshold = T::tol(JACOBI_REL_TOL) * m.frobenius_norm();

    let off_norm = |a: &ComplexMatrix<T>| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off.as_f64(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .expect("finite eigenvalues")
    });
    Ok(Spectrum {
        eigenvalues: order.iter().map(|&k| a[(k, k)].re).collect(),
        eigenvectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
            .collect(),
    })
}

/// Annihilates `a[p][q]` with the unitary `U = D R D^H`, where `D` removes
/// the phase of `a[p][q]` and `R` is the real Jacobi rotation.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == T::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip elements already negligible against the diagonal.
    if r <= T::epsilon() * T::lit(1e-3) * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex::zero();
        a[(q, p)] = Complex::zero();
        return;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (r + r);
    let t = {
        let t = T::one() / (theta.abs() + (T::one() + theta * theta).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let u_pp = Complex::new(c, T::zero());
    let u_qq = u_pp;
    let u_pq = phase * s;
    let u_qp = -phase.conj() * s;

    let n = a.dim();
    // A <- A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A <- U^H A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
    // V <- V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let spec = hermitian_eigen(m)?;
    let clamp = T::tol(PSD_CLAMP);
    if let Some(&low) = spec.eigenvalues.first() {
        if low < -clamp {
            return Err(Error::NotPsd {
                eigenvalue: low.as_f64(),
            });
        }
    }
    Ok(spec.compose(|e| e.max(T::zero()).sqrt()))
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// Columns are orthogonalized pairwise; the singular values are then the
/// column norms, which keeps small ones accurate to `ε‖m‖` rather than
/// `√ε‖m‖` as squaring would.
pub fn singular_values<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    if !m.is_finite() {
        return Err(Error::NoConvergence {
            sweeps: 0,
            off_norm: f64::NAN,
        });
    }
    let n = m.dim();
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| (0..n).map(|i| m[(i, j)]).collect()).collect();
    let eps = T::epsilon();
    let mut sweeps = 0;
    loop {
        let mut worst = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                let alpha: T = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex<T> = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                worst = worst.max(g / (alpha * beta).sqrt());
                // rotate a_p against e^{-iφ} a_q so the pair is real
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (g + g);
                let t = {
                    let t = T::one() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    if zeta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for k in 0..n {
                    let ap = cols[p][k];
                    let bq = cols[q][k] * phase;
                    cols[p][k] = ap * c - bq * s;
                    cols[q][k] = ap * s + bq * c;
                }
            }
        }
        if worst <= eps * T::lit(n as f64) {
            break;
        }
        sweeps += 1;
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: worst.as_f64(),
            });
        }
    }
    let mut out: Vec<T> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    out.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn sigma_y() -> ComplexMatrix<f64> {
        ComplexMatrix::from_row_major(vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix<f64> {
        ComplexMatrix::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix<f64> {
        let a = random_matrix(rng, n);
        (&a + &a.adjoint()).scale(0.5)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_x_is_antidiagonal() {
        let k = kron(&sigma_x(), &sigma_x());
        let expect = ComplexMatrix::from_fn(4, |i, j| if i + j == 3 { c(1., 0.) } else { c(0., 0.) });
        assert_eq!(k, expect);
    }

    #[test]
    fn sigma_y_kron_squared_is_identity() {
        let yy = kron(&sigma_y(), &sigma_y());
        assert!((&yy * &yy).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn sigma_z_spectrum() {
        let z = ComplexMatrix::<f64>::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let s = hermitian_eigen(&z).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 1.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix_is_already_diagonal() {
        let s = hermitian_eigen(&ComplexMatrix::<f64>::zeros(4)).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0; 4]);
        assert_eq!(s.degenerate_groups(), vec![0..4]);
    }

    #[test]
    fn random_hermitian_decompositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = random_hermitian(&mut rng, 8);
            let s = hermitian_eigen(&m).unwrap();
            let trace: f64 = s.eigenvalues.iter().sum();
            assert!((trace - m.trace().re).abs() < 1e-10);
            let v = s.eigenvector_matrix();
            assert!((&v.adjoint() * &v).max_abs_diff(&ComplexMatrix::identity(8)) < 1e-10);
            assert!(s.reconstruct().max_abs_diff(&m) < 1e-10 * m.max_abs());
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn single_precision_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m64 = random_hermitian(&mut rng, 8);
        let m32 = ComplexMatrix::<f32>::from_fn(8, |i, j| {
            let z = m64[(i, j)];
            Complex::new(z.re as f32, z.im as f32)
        });
        let s = hermitian_eigen(&m32).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m32) < 1e-5);
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (a, b, cm, d) = (
                random_matrix(&mut rng, 2),
                random_matrix(&mut rng, 2),
                random_matrix(&mut rng, 2),
                random_matrix(&mut rng, 2),
            );
            let lhs = &kron(&a, &b) * &kron(&cm, &d);
            let rhs = kron(&(&a * &cm), &(&b * &d));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
            let assoc = kron(&kron(&a, &b), &cm).max_abs_diff(&kron(&a, &kron(&b, &cm)));
            assert!(assoc < 1e-12);
        }
    }

    #[test]
    fn psd_sqrt_examples() {
        let i4 = ComplexMatrix::<f64>::identity(4);
        assert!(psd_sqrt(&i4).unwrap().max_abs_diff(&i4) < 1e-14);

        let d = ComplexMatrix::from_real_diagonal(&[4.0, 1.0, 0.0, 0.0]);
        let expect = ComplexMatrix::from_real_diagonal(&[2.0, 1.0, 0.0, 0.0]);
        assert!(psd_sqrt(&d).unwrap().max_abs_diff(&expect) < 1e-14);

        let mixed = i4.scale(0.25);
        assert!(psd_sqrt(&mixed).unwrap().max_abs_diff(&i4.scale(0.5)) < 1e-14);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let d = ComplexMatrix::<f64>::from_real_diagonal(&[1.0, -1e-6]);
        assert!(matches!(psd_sqrt(&d), Err(Error::NotPsd { .. })));
        // Roundoff-sized negatives are clamped.
        let d = ComplexMatrix::<f64>::from_real_diagonal(&[1.0, -1e-13]);
        assert_eq!(psd_sqrt(&d).unwrap()[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 4, 8] {
            for _ in 0..30 {
                let a = random_matrix(&mut rng, n);
                let m = &a.adjoint() * &a;
                let r = psd_sqrt(&m).unwrap();
                assert!(r.hermitian_defect() < 1e-12);
                assert!((&r * &r).max_abs_diff(&m) < 1e-9);
            }
        }
    }

    #[test]
    fn singular_values_match_gram_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 5);
            let sv = singular_values(&a).unwrap();
            let mut gram = hermitian_eigen(&(&a.adjoint() * &a)).unwrap().eigenvalues;
            gram.reverse();
            for (s, e) in sv.iter().zip(&gram) {
                assert!((s * s - e).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn singular_values_keep_tiny_scales() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -1e-12, 3e-17, 0.0]);
        let sv = singular_values(&m).unwrap();
        assert_eq!(sv, vec![1.0, 1e-12, 3e-17, 0.0]);
        let u = sigma_y();
        assert_eq!(singular_values(&u).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn degenerate_groups_follow_tolerance() {
        let s = Spectrum {
            eigenvalues: vec![-1.0, -1.0 + 1e-12, 0.0, 2.0, 2.0],
            eigenvectors: vec![vec![]; 5],
        };
        assert_eq!(s.degenerate_groups(), vec![0..2, 2..3, 3..5]);
    }
}
