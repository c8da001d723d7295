//! Fixed-size complex and real matrix arithmetic plus the Pauli basis.
//!
//! Everything here is a `Copy` value type. Matrices are stored row-major and
//! indexed from zero; the so(4) coefficient names `f12 .. f34` use the
//! one-based plane indices of the usual antisymmetric display.
//!
//! The two-qubit basis order is fixed to |00⟩, |01⟩, |10⟩, |11⟩, so a
//! Kronecker product `A ⊗ B` has block `(i, j)` equal to `A[i][j] · B`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};

pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shorthand for the complex scalar type used throughout.
pub type Complex = Complex64;

/// The imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance used when checking that a real 4×4 matrix is antisymmetric.
pub const ANTISYMMETRY_TOL: f64 = 1e-12;

/// Scalar field for the fixed-size matrices: `f64` or [`Complex64`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const ZERO: Self;
    const ONE: Self;

    fn from_real(x: f64) -> Self;
    fn conj(self) -> Self;
    /// Modulus.
    fn modulus(self) -> f64;
    fn modulus_sqr(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }
    #[inline]
    fn modulus_sqr(self) -> f64 {
        self * self
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);

    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn modulus_sqr(self) -> f64 {
        self.norm_sqr()
    }
    #[inline]
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
}

/// Dense `N × N` matrix over a [`Scalar`], stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat<T, const N: usize>(pub [[T; N]; N]);

/// 2×2 complex matrix. Carrier for the Pauli matrices and SU(2).
pub type Mat2c = Mat<Complex64, 2>;
/// 4×4 complex matrix. Carrier for tensor products and the magic matrix.
pub type Mat4c = Mat<Complex64, 4>;
/// 4×4 real matrix. Carrier for so(4) and SO(4).
pub type Mat4r = Mat<f64, 4>;

impl<T: Scalar, const N: usize> Default for Mat<T, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar, const N: usize> Mat<T, N> {
    pub const DIM: usize = N;

    #[inline]
    pub fn zero() -> Self {
        Mat([[T::ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = T::ONE;
        }
        m
    }

    #[inline]
    pub fn from_rows(rows: [[T; N]; N]) -> Self {
        Mat(rows)
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> &[[T; N]; N] {
        &self.0
    }

    pub fn map(&self, mut f: impl FnMut(T) -> T) -> Self {
        Self::from_fn(|i, j| f(self.0[i][j]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn trace(&self) -> T {
        (0..N).fold(T::ZERO, |acc, i| acc + self.0[i][i])
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(T::from_real(s))
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.0.iter().flat_map(|row| row.iter()).map(|x| x.modulus_sqr()).sum()
    }

    /// Frobenius norm, the error metric used everywhere in this crate.
    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flat_map(|row| row.iter()).map(|x| x.modulus()).fold(0.0, f64::max)
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flat_map(|row| row.iter()).all(|x| x.is_finite())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> T {
        let mut a = self.0;
        let mut det = T::ONE;
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&p, &q| a[p][col].modulus().total_cmp(&a[q][col].modulus()))
                .unwrap_or(col);
            if a[pivot][col].modulus() == 0.0 {
                return T::ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det = det * a[col][col];
            let pivot_row = a[col];
            for row in a.iter_mut().skip(col + 1) {
                let factor = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= factor * *p;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting; `None`
    /// when a pivot underflows to (relative) zero.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return None;
        }
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&p, &q| a[p][col].modulus().total_cmp(&a[q][col].modulus()))
                .unwrap_or(col);
            if a[pivot][col].modulus() <= scale * 1e-15 {
                return None;
            }
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col];
            for k in 0..N {
                a[col][k] = a[col][k] / p;
                inv[col][k] = inv[col][k] / p;
            }
            for row in 0..N {
                if row == col {
                    continue;
                }
                let factor = a[row][col];
                if factor == T::ZERO {
                    continue;
                }
                for k in 0..N {
                    let da = factor * a[col][k];
                    let di = factor * inv[col][k];
                    a[row][k] -= da;
                    inv[row][k] -= di;
                }
            }
        }
        Some(Mat(inv))
    }

    /// `‖M†M − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.dagger() * *self - Self::identity()).frobenius_norm()
    }
}

impl<const N: usize> Mat<Complex64, N> {
    pub fn from_real(m: &Mat<f64, N>) -> Self {
        Self::from_fn(|i, j| Complex64::new(m.0[i][j], 0.0))
    }

    pub fn real_part(&self) -> Mat<f64, N> {
        Mat::from_fn(|i, j| self.0[i][j].re)
    }

    pub fn imag_part(&self) -> Mat<f64, N> {
        Mat::from_fn(|i, j| self.0[i][j].im)
    }
}

impl<const N: usize> Mat<f64, N> {
    pub fn to_complex(&self) -> Mat<Complex64, N> {
        Mat::<Complex64, N>::from_real(self)
    }

    /// `max |M + Mᵀ|` over all entries.
    pub fn antisymmetry_defect(&self) -> f64 {
        (*self + self.transpose()).max_abs()
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        self.antisymmetry_defect() <= tol
    }

    /// `‖MᵀM − I‖_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self - Self::identity()).frobenius_norm()
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }
}

impl<T, const N: usize> Index<(usize, usize)> for Mat<T, N> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for Mat<T, N> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

impl<T: Scalar, const N: usize> Add for Mat<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<T: Scalar, const N: usize> Sub for Mat<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<T: Scalar, const N: usize> Neg for Mat<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<T: Scalar, const N: usize> Mul for Mat<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<T: Scalar, const N: usize> AddAssign for Mat<T, N> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Scalar, const N: usize> SubAssign for Mat<T, N> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

/// Real 3-vector of Pauli-basis coefficients.
///
/// `v` stands for the traceless Hermitian matrix `v₁σ₁ + v₂σ₂ + v₃σ₃`, and
/// `i·v·σ` for the corresponding element of su(2).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Vec3 { x1, x2, x3 }
    }

    #[inline]
    pub const fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.x2 * other.x3 - self.x3 * other.x2,
            self.x3 * other.x1 - self.x1 * other.x3,
            self.x1 * other.x2 - self.x2 * other.x1,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x1 + rhs.x1, self.x2 + rhs.x2, self.x3 + rhs.x3)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x1 - rhs.x1, self.x2 - rhs.x2, self.x3 - rhs.x3)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// The six upper-triangle entries of an antisymmetric real 4×4 matrix.
///
/// ```text
///  0    f12  f13  f14
/// -f12  0    f23  f24
/// -f13 -f23  0    f34
/// -f14 -f24 -f34  0
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct So4Coeffs {
    pub f12: f64,
    pub f13: f64,
    pub f14: f64,
    pub f23: f64,
    pub f24: f64,
    pub f34: f64,
}

/// Zero-based `(row, col)` positions of `f12 .. f34`, in field order.
pub const SO4_UPPER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl So4Coeffs {
    pub const ZERO: So4Coeffs = So4Coeffs::from_array([0.0; 6]);

    pub const fn from_array(a: [f64; 6]) -> Self {
        So4Coeffs { f12: a[0], f13: a[1], f14: a[2], f23: a[3], f24: a[4], f34: a[5] }
    }

    pub const fn to_array(self) -> [f64; 6] {
        [self.f12, self.f13, self.f14, self.f23, self.f24, self.f34]
    }

    /// The `k`-th plane generator (`k` in `0..6`, field order).
    pub fn basis(k: usize) -> Self {
        let mut a = [0.0; 6];
        a[k] = 1.0;
        So4Coeffs::from_array(a)
    }

    pub fn scale(self, s: f64) -> Self {
        So4Coeffs::from_array(self.to_array().map(|x| x * s))
    }

    pub fn max_abs_diff(self, other: So4Coeffs) -> f64 {
        self.to_array().iter().zip(other.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn to_mat4r(self) -> Mat4r {
        so4_from_coeffs(self)
    }
}

impl Add for So4Coeffs {
    type Output = So4Coeffs;
    fn add(self, rhs: So4Coeffs) -> So4Coeffs {
        let (a, b) = (self.to_array(), rhs.to_array());
        So4Coeffs::from_array(std::array::from_fn(|k| a[k] + b[k]))
    }
}

/// The Pauli matrix `σ_k` for `k ∈ {1, 2, 3}`.
pub fn pauli(k: usize) -> Result<Mat2c> {
    let o = Complex64::ZERO;
    let one = Complex64::ONE;
    match k {
        1 => Ok(Mat([[o, one], [one, o]])),
        2 => Ok(Mat([[o, -I], [I, o]])),
        3 => Ok(Mat([[one, o], [o, -one]])),
        _ => Err(Error::InvalidArgument(format!("Pauli index must be 1, 2 or 3, got {k}"))),
    }
}

/// `[σ₁, σ₂, σ₃]`.
pub fn pauli_basis() -> [Mat2c; 3] {
    [1, 2, 3].map(|k| pauli(k).expect("index in range"))
}

/// Kronecker product in the |00⟩, |01⟩, |10⟩, |11⟩ ordering.
pub fn tensor_product(a: &Mat2c, b: &Mat2c) -> Mat4c {
    Mat4c::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

/// `v₁σ₁ + v₂σ₂ + v₃σ₃`.
pub fn hermitian_from_vec(v: Vec3) -> Mat2c {
    Mat([
        [Complex64::new(v.x3, 0.0), Complex64::new(v.x1, -v.x2)],
        [Complex64::new(v.x1, v.x2), Complex64::new(-v.x3, 0.0)],
    ])
}

/// Pauli coefficients of a 2×2 matrix, `v_k = Re tr(σ_k M) / 2`.
///
/// Exact inverse of [`hermitian_from_vec`] on traceless Hermitian input;
/// the identity and anti-Hermitian components are dropped.
pub fn vec_from_hermitian(m: &Mat2c) -> Vec3 {
    let [a, b] = m.0[0];
    let [c, d] = m.0[1];
    Vec3::new((b.re + c.re) / 2.0, (c.im - b.im) / 2.0, (a.re - d.re) / 2.0)
}

/// Lays out `c` as the antisymmetric matrix shown on [`So4Coeffs`].
pub fn so4_from_coeffs(c: So4Coeffs) -> Mat4r {
    let mut m = Mat4r::zero();
    for (&(i, j), v) in SO4_UPPER.iter().zip(c.to_array()) {
        m.0[i][j] = v;
        m.0[j][i] = -v;
    }
    m
}

/// Reads the upper triangle back out; rejects matrices that are not
/// antisymmetric to [`ANTISYMMETRY_TOL`] in max-norm.
pub fn coeffs_from_so4(m: &Mat4r) -> Result<So4Coeffs> {
    let defect = m.antisymmetry_defect();
    if defect.is_nan() || defect > ANTISYMMETRY_TOL {
        return Err(Error::Shape(format!(
            "matrix is not antisymmetric (max |M + Mᵀ| = {defect:e})"
        )));
    }
    Ok(So4Coeffs::from_array(SO4_UPPER.map(|(i, j)| m.0[i][j])))
}
