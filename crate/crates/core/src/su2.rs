//! Closed-form exponential, logarithm and BCH composition on su(2)/SU(2).
//!
//! Algebra elements are carried as [`Vec3`] Pauli coefficients: `x` stands
//! for `i·X` with `X = x₁σ₁ + x₂σ₂ + x₃σ₃`.
//!
//! For `e^{iX} e^{iY} = e^{iZ}` the composition is
//!
//! ```text
//! Z = α X + β Y + γ (i/2)[X, Y]
//! α = (θ/ρ) · sin|x| cos|y| / |x|
//! β = (θ/ρ) · cos|x| sin|y| / |y|
//! γ = (θ/ρ) · sin|x| sin|y| / (|x||y|)
//! ```
//!
//! where `ρ = sin θ` is the length of the vector part of the product and
//! `θ` its rotation half-angle. With `(i/2)[X, Y] ↔ −(x × y)` this reads
//! `z = αx + βy − γ(x × y)`.
//!
//! The classical prefactor is `asin(ρ)/ρ`, which only recovers `θ` while
//! `θ ≤ π/2`. [`BranchMode::BranchCorrected`] takes `θ = atan2(ρ, cos θ)`
//! instead and stays valid up to the antipodal point `θ = π`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{hermitian_from_vec, vec_from_hermitian, Complex64, Mat2c, Vec3, I};
use crate::error::{Error, Result};

/// Arguments below this use truncated Taylor series for `sin t / t` and
/// friends.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Distance from `θ = π` (or from `−I`) treated as the antipodal point.
pub const ANTIPODAL_TOL: f64 = 1e-8;

/// How far `ρ²` may overshoot 1 from rounding before it is treated as a bug.
pub const RHO_SQ_SLACK: f64 = 1e-12;

/// Unitarity and determinant tolerance for SU(2) inputs.
pub const SU2_INPUT_TOL: f64 = 1e-10;

/// Selects the angle-recovery branch of the BCH prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BranchMode {
    /// `asin(ρ)/ρ`; correct for `θ ≤ π/2`.
    PaperFaithful,
    /// `atan2(ρ, cos θ)/ρ`; correct for `θ < π`.
    #[default]
    BranchCorrected,
}

impl BranchMode {
    /// Largest half-angle `θ` for which this mode's composition is exact.
    /// Sweeps skip samples beyond it.
    pub fn theta_limit(self) -> f64 {
        match self {
            BranchMode::PaperFaithful => FRAC_PI_2,
            BranchMode::BranchCorrected => PI - 1e-3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BranchMode::PaperFaithful => "paper",
            BranchMode::BranchCorrected => "corrected",
        }
    }
}

impl fmt::Display for BranchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BranchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(BranchMode::PaperFaithful),
            "corrected" => Ok(BranchMode::BranchCorrected),
            other => Err(Error::InvalidArgument(format!(
                "unknown branch mode {other:?} (expected \"paper\" or \"corrected\")"
            ))),
        }
    }
}

/// Coefficients of one SU(2) composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BchCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `ρ ∈ [0, 1]`, the sine of the combined half-angle.
    pub rho: f64,
    /// Combined half-angle in `[0, π]`, always computed with `atan2`
    /// so that branch-cut proximity is visible in either mode.
    pub theta: f64,
}

impl BchCoefficients {
    /// `αx + βy − γ(x × y)`.
    pub fn assemble(&self, x: Vec3, y: Vec3) -> Vec3 {
        self.alpha * x + self.beta * y - self.gamma * x.cross(y)
    }
}

/// `sin t / t`.
pub(crate) fn sinc(t: f64) -> f64 {
    if t.abs() < SERIES_THRESHOLD {
        let t2 = t * t;
        1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0))
    } else {
        t.sin() / t
    }
}

/// `asin(ρ) / ρ`.
fn asin_over(rho: f64) -> f64 {
    if rho < SERIES_THRESHOLD {
        let r2 = rho * rho;
        1.0 + r2 / 6.0 + 3.0 * r2 * r2 / 40.0 + 5.0 * r2 * r2 * r2 / 112.0
    } else {
        rho.asin() / rho
    }
}

/// `atan2(s, c) / s` for `s ≥ 0`.
fn atan2_over(s: f64, c: f64) -> f64 {
    if s < SERIES_THRESHOLD && c > 0.0 {
        let t = s / c;
        let t2 = t * t;
        (1.0 - t2 / 3.0 + t2 * t2 / 5.0 - t2 * t2 * t2 / 7.0) / c
    } else {
        s.atan2(c) / s
    }
}

/// `e^{i v·σ} = cos r · 1 + (sin r / r) · i v·σ`, `r = |v|`.
pub fn su2_exp(v: Vec3) -> Mat2c {
    let r = v.norm();
    let s = sinc(r);
    let c = r.cos();
    // cos r + i s (v₃ , v₁ − i v₂ ; v₁ + i v₂ , −v₃)
    Mat2c::from_rows([
        [Complex64::new(c, s * v.x3), Complex64::new(s * v.x2, s * v.x1)],
        [Complex64::new(-s * v.x2, s * v.x1), Complex64::new(c, -s * v.x3)],
    ])
}

/// Inverse of [`su2_exp`] with `|v| ∈ [0, π)`.
pub fn su2_log(u: &Mat2c) -> Result<Vec3> {
    if !u.is_finite() {
        return Err(Error::Domain("SU(2) input has non-finite entries".into()));
    }
    let defect = u.unitarity_defect();
    let det = u.det();
    if defect.is_nan()
        || defect > SU2_INPUT_TOL
        || (det - Complex64::new(1.0, 0.0)).norm() > SU2_INPUT_TOL
    {
        return Err(Error::Domain(format!("not in SU(2): ‖U†U − I‖ = {defect:e}, det = {det}")));
    }
    if (*u + Mat2c::identity()).frobenius_norm() < ANTIPODAL_TOL {
        return Err(Error::antipodal("SU(2) element is −I; rotation axis undefined"));
    }
    let c = u.trace().re / 2.0;
    // (U − U†)/2 = i sin r · n·σ
    let anti = (*u - u.dagger()).scale(Complex64::new(0.0, -0.5));
    let w = vec_from_hermitian(&anti);
    let s = w.norm();
    if s == 0.0 {
        return Ok(Vec3::ZERO);
    }
    Ok(w * atan2_over(s, c))
}

/// The composition coefficients for `e^{iX} e^{iY}`.
pub fn bch_coefficients(x: Vec3, y: Vec3, mode: BranchMode) -> Result<BchCoefficients> {
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::InvalidArgument("non-finite su(2) coefficients".into()));
    }
    let (nx, ny) = (x.norm(), y.norm());
    let (sx, cx) = nx.sin_cos();
    let (sy, cy) = ny.sin_cos();
    let (kx, ky) = (sinc(nx), sinc(ny));
    let d = x.dot(y);

    let rho_sq = sx * sx * cy * cy + sy * sy - (kx * ky * d).powi(2) + 2.0 * cx * cy * kx * ky * d;
    if rho_sq > 1.0 + RHO_SQ_SLACK {
        return Err(Error::InternalConsistency(format!(
            "ρ² = {rho_sq} exceeds 1 beyond rounding slack"
        )));
    }
    let rho = rho_sq.clamp(0.0, 1.0).sqrt();
    let cos_theta = cx * cy - kx * ky * d;
    let theta = rho.atan2(cos_theta);
    if PI - theta < ANTIPODAL_TOL {
        return Err(Error::antipodal(format!(
            "combined half-angle θ = {theta} is within {ANTIPODAL_TOL:e} of π"
        )));
    }

    let prefactor = match mode {
        BranchMode::PaperFaithful => asin_over(rho),
        BranchMode::BranchCorrected => atan2_over(rho, cos_theta),
    };

    Ok(BchCoefficients {
        alpha: prefactor * kx * cy,
        beta: prefactor * cx * ky,
        gamma: prefactor * kx * ky,
        rho,
        theta,
    })
}

/// `z` with `e^{i z·σ} = e^{i x·σ} e^{i y·σ}`.
pub fn bch_su2(x: Vec3, y: Vec3, mode: BranchMode) -> Result<Vec3> {
    bch_su2_with_coefficients(x, y, mode).map(|(z, _)| z)
}

/// Like [`bch_su2`], also returning the coefficients used.
pub fn bch_su2_with_coefficients(
    x: Vec3,
    y: Vec3,
    mode: BranchMode,
) -> Result<(Vec3, BchCoefficients)> {
    let coeffs = bch_coefficients(x, y, mode)?;
    Ok((coeffs.assemble(x, y), coeffs))
}

/// `i·(v·σ)`, the su(2) matrix for a coefficient vector.
pub fn su2_algebra_matrix(v: Vec3) -> Mat2c {
    hermitian_from_vec(v).scale(I)
}
