//! The magic matrix `R` and the so(4) ≅ su(2) ⊕ su(2) correspondence.
//!
//! `R` has the (phased) Bell states as columns,
//!
//! ```text
//! R = (ψ₁, −iψ₂, −ψ₃, −iψ₄) = 1/√2 ·  1   0   0  −i
//!                                     0  −i  −1   0
//!                                     0  −i   1   0
//!                                     1   0   0   i
//! ```
//!
//! and conjugation by it carries `SU(2) ⊗ SU(2)` onto `SO(4)`:
//! `F(U ⊗ V) = R†(U ⊗ V)R`. Other unitaries with that property exist and
//! give different sign and axis conventions; every formula in this crate is
//! stated for this `R`.
//!
//! At the algebra level, an antisymmetric `A` with entries `f_ij` satisfies
//! `R A R† = i(a ⊗ 1 + 1 ⊗ b)` where
//!
//! ```text
//! a = ((f12 + f34)/2,  (f13 − f24)/2, (f14 + f23)/2)   self-dual
//! b = ((f12 − f34)/2, −(f13 + f24)/2, (f14 − f23)/2)   anti-self-dual
//! ```

use std::f64::consts::FRAC_1_SQRT_2;

use crate::algebra::{
    coeffs_from_so4, so4_from_coeffs, tensor_product, Complex64, Mat2c, Mat4c, Mat4r, So4Coeffs,
    Vec3,
};
use crate::error::{Error, Result};
use crate::su2::SU2_INPUT_TOL;

/// Imaginary residue tolerated (and discarded) when projecting a conjugated
/// matrix back to the reals.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// The four Bell states in the |00⟩, |01⟩, |10⟩, |11⟩ basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellBasis {
    pub psi1: [Complex64; 4],
    pub psi2: [Complex64; 4],
    pub psi3: [Complex64; 4],
    pub psi4: [Complex64; 4],
}

impl BellBasis {
    pub fn new() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        BellBasis {
            psi1: [h, z, z, h],
            psi2: [z, h, h, z],
            psi3: [z, h, -h, z],
            psi4: [h, z, z, -h],
        }
    }

    pub fn states(&self) -> [[Complex64; 4]; 4] {
        [self.psi1, self.psi2, self.psi3, self.psi4]
    }
}

impl Default for BellBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// The explicit magic matrix `R`.
pub fn magic_matrix() -> Mat4c {
    scaled_magic().scale_real(FRAC_1_SQRT_2)
}

/// `√2 · R`, whose entries are exactly 0, ±1, ±i.
fn scaled_magic() -> Mat4c {
    let o = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    Mat4c::from_rows([
        [re(1.0), o, o, im(-1.0)],
        [o, im(-1.0), re(-1.0), o],
        [o, im(-1.0), re(1.0), o],
        [re(1.0), o, o, im(1.0)],
    ])
}

/// `R†MR`, evaluated as `½ S†MS` with `S = √2 R` so that `R†IR = I`
/// holds bit for bit.
pub fn conjugate_by_r(m: &Mat4c) -> Mat4c {
    let s = scaled_magic();
    (s.dagger() * *m * s).scale_real(0.5)
}

/// `RMR†`.
pub fn conjugate_by_r_dagger(m: &Mat4c) -> Mat4c {
    let s = scaled_magic();
    (s * *m * s.dagger()).scale_real(0.5)
}

/// Real part of `m` after checking that its imaginary part is only
/// rounding noise.
pub(crate) fn real_checked(m: &Mat4c, what: &str) -> Result<Mat4r> {
    let residue = m.imag_part().max_abs();
    if residue.is_nan() || residue > IMAG_RESIDUE_TOL {
        return Err(Error::InternalConsistency(format!(
            "{what}: imaginary residue {residue:e} after conjugation by R"
        )));
    }
    Ok(m.real_part())
}

/// Self-dual / anti-self-dual coefficient vectors of an so(4) element.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SplitPair {
    /// Self-dual part.
    pub a1: Vec3,
    /// Anti-self-dual part.
    pub a2: Vec3,
}

impl SplitPair {
    pub const fn new(a1: Vec3, a2: Vec3) -> Self {
        SplitPair { a1, a2 }
    }
}

/// Splits an antisymmetric matrix into its two su(2) coefficient vectors.
pub fn split(a: &Mat4r) -> Result<SplitPair> {
    coeffs_from_so4(a).map(split_coeffs)
}

pub fn split_coeffs(f: So4Coeffs) -> SplitPair {
    SplitPair {
        a1: Vec3::new((f.f12 + f.f34) / 2.0, (f.f13 - f.f24) / 2.0, (f.f14 + f.f23) / 2.0),
        a2: Vec3::new((f.f12 - f.f34) / 2.0, -(f.f13 + f.f24) / 2.0, (f.f14 - f.f23) / 2.0),
    }
}

/// Inverse of [`split_coeffs`], read off the entry table of
/// `iR†(a ⊗ 1 + 1 ⊗ b)R`.
pub fn merge_coeffs(p: SplitPair) -> So4Coeffs {
    let (a, b) = (p.a1, p.a2);
    So4Coeffs {
        f12: a.x1 + b.x1,
        f13: a.x2 - b.x2,
        f14: a.x3 + b.x3,
        f23: a.x3 - b.x3,
        f24: -(a.x2 + b.x2),
        f34: a.x1 - b.x1,
    }
}

pub fn merge(p: SplitPair) -> Mat4r {
    so4_from_coeffs(merge_coeffs(p))
}

/// The group-level map `(U, V) ↦ R†(U ⊗ V)R` into SO(4).
pub fn su2su2_to_so4(u: &Mat2c, v: &Mat2c) -> Result<Mat4r> {
    for (name, m) in [("U", u), ("V", v)] {
        let defect = m.unitarity_defect();
        let det = m.det();
        if defect.is_nan()
            || defect > SU2_INPUT_TOL
            || (det - Complex64::new(1.0, 0.0)).norm() > SU2_INPUT_TOL
        {
            return Err(Error::Domain(format!(
                "{name} is not in SU(2): ‖U†U − I‖ = {defect:e}, det = {det}"
            )));
        }
    }
    real_checked(&conjugate_by_r(&tensor_product(u, v)), "su2su2_to_so4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hermitian_from_vec, pauli, I};
    use crate::su2::su2_exp;
    use std::f64::consts::FRAC_PI_2;

    /// `i R†(a ⊗ 1 + 1 ⊗ b) R` by explicit complex arithmetic.
    fn merge_by_conjugation(p: SplitPair) -> Mat4c {
        let id = Mat2c::identity();
        let inner = tensor_product(&hermitian_from_vec(p.a1), &id)
            + tensor_product(&id, &hermitian_from_vec(p.a2));
        conjugate_by_r(&inner.scale(I))
    }

    #[test]
    fn magic_matrix_entries() {
        let r = magic_matrix();
        let h = FRAC_1_SQRT_2;
        assert_eq!(r[(0, 0)], Complex64::new(h, 0.0));
        assert_eq!(r[(0, 3)], Complex64::new(0.0, -h));
        assert_eq!(r[(1, 2)], Complex64::new(-h, 0.0));
        assert_eq!(r[(3, 3)], Complex64::new(0.0, h));
    }

    #[test]
    fn conjugation_matches_explicit_r() {
        let r = magic_matrix();
        let m =
            Mat4c::from_fn(|i, j| Complex64::new(i as f64 - 0.5 * j as f64, (i * j) as f64 * 0.3));
        assert!(conjugate_by_r(&m).distance(&(r.dagger() * m * r)) < 1e-14);
        assert!(conjugate_by_r_dagger(&m).distance(&(r * m * r.dagger())) < 1e-14);
        assert_eq!(conjugate_by_r(&Mat4c::identity()), Mat4c::identity());
    }

    #[test]
    fn magic_matrix_is_unitary() {
        let r = magic_matrix();
        assert!((r * r.dagger()).distance(&Mat4c::identity()) < 1e-15);
    }

    #[test]
    fn magic_columns_are_phased_bell_states() {
        let bell = BellBasis::new();
        let phases = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        let r = magic_matrix();
        for (col, (psi, ph)) in bell.states().iter().zip(phases).enumerate() {
            for row in 0..4 {
                assert!((r[(row, col)] - psi[row] * ph).norm() < 1e-16);
            }
        }
    }

    #[test]
    fn bell_basis_orthonormal() {
        let s = BellBasis::new().states();
        for i in 0..4 {
            for j in 0..4 {
                let ip: Complex64 = (0..4).map(|k| s[i][k].conj() * s[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn split_examples() {
        let p = split(&so4_from_coeffs(So4Coeffs::basis(0))).unwrap();
        assert_eq!(p.a1, Vec3::new(0.5, 0.0, 0.0));
        assert_eq!(p.a2, Vec3::new(0.5, 0.0, 0.0));

        let mut f = So4Coeffs::basis(0);
        f.f34 = 1.0;
        let p = split(&so4_from_coeffs(f)).unwrap();
        assert_eq!(p.a1, Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(p.a2, Vec3::ZERO);

        assert_eq!(split(&Mat4r::zero()).unwrap(), SplitPair::default());
        assert!(matches!(split(&Mat4r::identity()), Err(Error::Shape(_))));
    }

    #[test]
    fn merge_examples() {
        let m = merge(SplitPair::new(Vec3::new(1.0, 0.0, 0.0), Vec3::ZERO));
        let c = coeffs_from_so4(&m).unwrap();
        assert_eq!(c, So4Coeffs { f12: 1.0, f34: 1.0, ..So4Coeffs::ZERO });
        assert_eq!(merge(SplitPair::default()), Mat4r::zero());
    }

    #[test]
    fn merge_table_matches_conjugation() {
        let p = SplitPair::new(Vec3::new(0.3, -1.1, 0.7), Vec3::new(-0.4, 0.25, 2.0));
        let via_r = merge_by_conjugation(p);
        assert!(via_r.imag_part().max_abs() < 1e-15);
        assert!(via_r.real_part().distance(&merge(p)) < 1e-15);
    }

    #[test]
    fn split_matches_conjugation() {
        let f = So4Coeffs::from_array([0.1, -0.2, 0.3, 0.45, -0.5, 0.6]);
        let p = split_coeffs(f);
        let lhs = conjugate_by_r_dagger(&so4_from_coeffs(f).to_complex());
        let id = Mat2c::identity();
        let rhs = (tensor_product(&hermitian_from_vec(p.a1), &id)
            + tensor_product(&id, &hermitian_from_vec(p.a2)))
        .scale(I);
        assert!(lhs.distance(&rhs) < 1e-15);
    }

    #[test]
    fn conjugation_examples() {
        assert!(conjugate_by_r(&Mat4c::identity()).distance(&Mat4c::identity()) < 1e-15);

        let s1 = pauli(1).unwrap();
        let id = Mat2c::identity();
        let m = (tensor_product(&s1, &id) + tensor_product(&id, &s1)).scale(I);
        let out = conjugate_by_r(&m);
        let want = merge(SplitPair::new(Vec3::new(1.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0)));
        assert!(out.imag_part().max_abs() < 1e-15);
        assert!(out.real_part().distance(&want) < 1e-15);
    }

    #[test]
    fn group_map_examples() {
        let id = Mat2c::identity();
        let o = su2su2_to_so4(&id, &id).unwrap();
        assert!(o.distance(&Mat4r::identity()) < 1e-15);
        let o = su2su2_to_so4(&-id, &-id).unwrap();
        assert!(o.distance(&Mat4r::identity()) < 1e-15);

        let u = su2_exp(Vec3::new(0.3, -0.8, 0.1));
        let v = su2_exp(Vec3::new(-1.2, 0.4, 0.9));
        let o = su2su2_to_so4(&u, &v).unwrap();
        assert!(o.is_orthogonal(1e-12));
        assert!((o.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn group_map_rejects_non_su2() {
        let id = Mat2c::identity();
        assert!(matches!(su2su2_to_so4(&pauli(3).unwrap(), &id), Err(Error::Domain(_))));
    }

    #[test]
    fn quarter_turn_matches_split_conventions() {
        // (e^{i(π/2)σ₁}, 1) is the image of a1 = (π/2, 0, 0), a2 = 0,
        // i.e. f12 = f34 = π/2: a quarter turn in both the (1,2) and (3,4)
        // planes.
        let u = su2_exp(Vec3::new(FRAC_PI_2, 0.0, 0.0));
        let o = su2su2_to_so4(&u, &Mat2c::identity()).unwrap();
        let want = Mat4r::from_rows([
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ]);
        assert!(o.distance(&want) < 1e-15);
    }
}
