//! Exponential, logarithm and closed-form BCH composition on so(4)/SO(4).
//!
//! An so(4) element splits into two commuting su(2) parts (see
//! [`crate::magic`]), so `e^A e^B = e^C` reduces to one SU(2) composition
//! per channel:
//!
//! ```text
//! e^A e^B = R†(e^{ia₁}e^{ib₁} ⊗ e^{ia₂}e^{ib₂})R
//!         = R† e^{i(z₁ ⊗ 1 + 1 ⊗ z₂)} R,   z_k = bch_su2(a_k, b_k)
//! ```
//!
//! Two independent evaluations of `C` are provided: [`bch_so4`] goes
//! through split / compose / merge, and [`bch_so4_entries`] evaluates the
//! six expanded entry formulas directly from the `f_ij`, `g_ij`.

use crate::algebra::{
    coeffs_from_so4, so4_from_coeffs, tensor_product, Complex64, Mat2c, Mat4r, So4Coeffs,
};
use crate::error::{Channel, Error, Result};
use crate::magic::{
    conjugate_by_r, conjugate_by_r_dagger, merge, real_checked, split, split_coeffs,
};
use crate::su2::{
    bch_coefficients, bch_su2_with_coefficients, su2_exp, su2_log, BchCoefficients, BranchMode,
};

/// Orthogonality and determinant tolerance for SO(4) inputs.
pub const SO4_INPUT_TOL: f64 = 1e-10;

/// Below this `|Re tr U|` the double-cover sign falls back to the first
/// nonzero entry of `U`.
const SIGN_TIE_TOL: f64 = 1e-12;

/// Outcome of a closed-form so(4) composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So4BchResult {
    /// `C` with `e^C = e^A e^B`; antisymmetric by construction.
    pub result: Mat4r,
    /// Self-dual channel coefficients `α₁, β₁, γ₁`.
    pub coeffs1: BchCoefficients,
    /// Anti-self-dual channel coefficients `α₂, β₂, γ₂`.
    pub coeffs2: BchCoefficients,
    pub mode: BranchMode,
}

impl So4BchResult {
    pub fn coeffs(&self) -> So4Coeffs {
        coeffs_from_so4(&self.result).expect("result is built antisymmetric")
    }

    pub fn channel(&self, channel: Channel) -> &BchCoefficients {
        match channel {
            Channel::SelfDual => &self.coeffs1,
            Channel::AntiSelfDual => &self.coeffs2,
        }
    }

    /// Larger of the two channel half-angles.
    pub fn max_theta(&self) -> f64 {
        self.coeffs1.theta.max(self.coeffs2.theta)
    }

    /// Whether both channels sit inside the exact domain of `mode`.
    pub fn within_branch(&self) -> bool {
        self.max_theta() <= self.mode.theta_limit()
    }
}

/// `e^A` for antisymmetric `A`, as `R†(e^{ia₁} ⊗ e^{ia₂})R`.
pub fn so4_exp(a: &Mat4r) -> Result<Mat4r> {
    let p = split(a)?;
    let w = tensor_product(&su2_exp(p.a1), &su2_exp(p.a2));
    real_checked(&conjugate_by_r(&w), "so4_exp")
}

pub fn so4_exp_coeffs(f: So4Coeffs) -> Result<Mat4r> {
    so4_exp(&so4_from_coeffs(f))
}

/// Factors `W = U ⊗ V` (up to the overall sign) into `(U, V)`, both in
/// SU(2), with the canonical sign choice `Re tr U ≥ 0`.
fn factor_tensor(w: &crate::algebra::Mat4c) -> (Mat2c, Mat2c) {
    let block = |i: usize, j: usize| Mat2c::from_fn(|r, c| w[(2 * i + r, 2 * j + c)]);
    let (mut bi, mut bj, mut best) = (0, 0, -1.0);
    for i in 0..2 {
        for j in 0..2 {
            let n = block(i, j).frobenius_norm_sqr();
            if n > best {
                (bi, bj, best) = (i, j, n);
            }
        }
    }
    // block(i, j) = U_ij V with det V = 1, so V = ±block / sqrt(det block).
    let b = block(bi, bj);
    let v = b.scale(Complex64::new(1.0, 0.0) / b.det().sqrt());
    let v_dag = v.dagger();
    let mut u = Mat2c::from_fn(|i, j| (v_dag * block(i, j)).trace() / 2.0);
    let mut v = v;

    let tr = u.trace().re;
    let flip = if tr.abs() > SIGN_TIE_TOL {
        tr < 0.0
    } else {
        u.0.iter()
            .flatten()
            .find(|z| z.norm() > SIGN_TIE_TOL)
            .map(|z| if z.re.abs() > SIGN_TIE_TOL { z.re < 0.0 } else { z.im < 0.0 })
            .unwrap_or(false)
    };
    if flip {
        u = -u;
        v = -v;
    }
    (u, v)
}

/// Logarithm of an SO(4) element via its `U ⊗ V` factorization.
pub fn so4_log(o: &Mat4r) -> Result<Mat4r> {
    if !o.is_finite() {
        return Err(Error::Domain("SO(4) input has non-finite entries".into()));
    }
    let defect = o.orthogonality_defect();
    let det = o.det();
    if defect.is_nan() || defect > SO4_INPUT_TOL || (det - 1.0).abs() > SO4_INPUT_TOL {
        return Err(Error::Domain(format!("not in SO(4): ‖OᵀO − I‖ = {defect:e}, det = {det}")));
    }
    let w = conjugate_by_r_dagger(&o.to_complex());
    let (u, v) = factor_tensor(&w);
    let a1 = su2_log(&u).map_err(|e| e.in_channel(Channel::SelfDual))?;
    let a2 = su2_log(&v).map_err(|e| e.in_channel(Channel::AntiSelfDual))?;
    Ok(merge(crate::magic::SplitPair::new(a1, a2)))
}

/// Closed-form `C` with `e^A e^B = e^C`, channel by channel.
pub fn bch_so4(a: &Mat4r, b: &Mat4r, mode: BranchMode) -> Result<So4BchResult> {
    let pa = split(a)?;
    let pb = split(b)?;
    let (z1, coeffs1) = bch_su2_with_coefficients(pa.a1, pb.a1, mode)
        .map_err(|e| e.in_channel(Channel::SelfDual))?;
    let (z2, coeffs2) = bch_su2_with_coefficients(pa.a2, pb.a2, mode)
        .map_err(|e| e.in_channel(Channel::AntiSelfDual))?;
    Ok(So4BchResult { result: merge(crate::magic::SplitPair::new(z1, z2)), coeffs1, coeffs2, mode })
}

/// The six entries of `C`, written out term by term in the `f_ij`, `g_ij`.
pub fn bch_so4_entries(f: So4Coeffs, g: So4Coeffs, mode: BranchMode) -> Result<So4Coeffs> {
    bch_so4_entries_with_coefficients(f, g, mode).map(|(c, _, _)| c)
}

pub fn bch_so4_entries_with_coefficients(
    f: So4Coeffs,
    g: So4Coeffs,
    mode: BranchMode,
) -> Result<(So4Coeffs, BchCoefficients, BchCoefficients)> {
    let (sa, aa) = {
        let p = split_coeffs(f);
        (p.a1, p.a2)
    };
    let (sb, ab) = {
        let p = split_coeffs(g);
        (p.a1, p.a2)
    };
    let k1 = bch_coefficients(sa, sb, mode).map_err(|e| e.in_channel(Channel::SelfDual))?;
    let k2 = bch_coefficients(aa, ab, mode).map_err(|e| e.in_channel(Channel::AntiSelfDual))?;
    let (al1, be1, ga1) = (k1.alpha, k1.beta, k1.gamma);
    let (al2, be2, ga2) = (k2.alpha, k2.beta, k2.gamma);

    // self-dual halves
    let f12p = (f.f12 + f.f34) / 2.0;
    let f13m = (f.f13 - f.f24) / 2.0;
    let f14p = (f.f14 + f.f23) / 2.0;
    let g12p = (g.f12 + g.f34) / 2.0;
    let g13m = (g.f13 - g.f24) / 2.0;
    let g14p = (g.f14 + g.f23) / 2.0;
    // anti-self-dual halves
    let f12m = (f.f12 - f.f34) / 2.0;
    let f13p = (f.f13 + f.f24) / 2.0;
    let f14m = (f.f14 - f.f23) / 2.0;
    let g12m = (g.f12 - g.f34) / 2.0;
    let g13p = (g.f13 + g.f24) / 2.0;
    let g14m = (g.f14 - g.f23) / 2.0;

    let e12 = al1 * f12p + be1 * g12p - ga1 * (f13m * g14p - f14p * g13m) + al2 * f12m + be2 * g12m
        - ga2 * (-f13p * g14m + f14m * g13p);
    let e13 = al1 * f13m + be1 * g13m - ga1 * (f14p * g12p - f12p * g14p) + al2 * f13p + be2 * g13p
        - ga2 * (-f14m * g12m + f12m * g14m);
    let e14 = al1 * f14p + be1 * g14p - ga1 * (f12p * g13m - f13m * g12p) + al2 * f14m + be2 * g14m
        - ga2 * (-f12m * g13p + f13p * g12m);
    let e23 = al1 * f14p + be1 * g14p - ga1 * (f12p * g13m - f13m * g12p) - al2 * f14m - be2 * g14m
        + ga2 * (-f12m * g13p + f13p * g12m);
    let e24 =
        -al1 * f13m - be1 * g13m + ga1 * (f14p * g12p - f12p * g14p) + al2 * f13p + be2 * g13p
            - ga2 * (-f14m * g12m + f12m * g14m);
    let e34 = al1 * f12p + be1 * g12p - ga1 * (f13m * g14p - f14p * g13m) - al2 * f12m - be2 * g12m
        + ga2 * (-f13p * g14m + f14m * g13p);

    Ok((So4Coeffs { f12: e12, f13: e13, f14: e14, f23: e23, f24: e24, f34: e34 }, k1, k2))
}
