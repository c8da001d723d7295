//! Brute-force numerical references used to check the closed forms.
//!
//! Everything here works on raw matrices and shares no code with the
//! closed-form paths beyond basic matrix arithmetic.

use crate::algebra::{Mat, Scalar};
use crate::error::{Error, Result};

/// Denman–Beavers iteration cap.
pub const DB_MAX_ITERS: usize = 50;
/// Denman–Beavers stopping threshold on the relative update size.
pub const DB_TOL: f64 = 1e-15;

/// Taylor scaling target: the series is summed for `‖M / 2^s‖_F < 0.5`.
const EXP_SCALE_NORM: f64 = 0.5;
/// Square roots are taken until `‖M^(1/2^k) − I‖_F` drops below this.
const LOG_SQRT_TARGET: f64 = 0.25;

/// Tunables for the series oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Series terms below this Frobenius norm end the summation.
    pub tol: f64,
    pub max_terms: usize,
    /// Maximum number of square roots taken by the logarithm.
    pub max_sqrt_steps: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { tol: 1e-16, max_terms: 64, max_sqrt_steps: 32 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "oracle tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_terms < 8 {
            return Err(Error::InvalidArgument(format!(
                "oracle needs at least 8 series terms, got {}",
                self.max_terms
            )));
        }
        Ok(())
    }
}

/// Matrix exponential by scaling and squaring around a plain Taylor sum.
pub fn mat_exp_taylor<T: Scalar, const N: usize>(
    m: &Mat<T, N>,
    cfg: &OracleConfig,
) -> Result<Mat<T, N>> {
    cfg.validate()?;
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }

    let mut squarings = 0u32;
    let mut norm = m.frobenius_norm();
    while norm >= EXP_SCALE_NORM {
        norm /= 2.0;
        squarings += 1;
    }
    let x = m.scale_real((-(squarings as f64)).exp2());

    let id = Mat::<T, N>::identity();
    let mut sum = id;
    let mut term = id;
    let mut converged = false;
    for k in 1..=cfg.max_terms {
        term = (term * x).scale_real(1.0 / k as f64);
        sum += term;
        if term.frobenius_norm() < cfg.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "Taylor series not below {:e} after {} terms",
            cfg.tol, cfg.max_terms
        )));
    }

    for _ in 0..squarings {
        sum = sum * sum;
    }
    Ok(sum)
}

/// Principal square root by the Denman–Beavers iteration.
pub fn mat_sqrt_denman_beavers<T: Scalar, const N: usize>(m: &Mat<T, N>) -> Result<Mat<T, N>> {
    let mut y = *m;
    let mut z = Mat::<T, N>::identity();
    let mut last_step = f64::INFINITY;
    for _ in 0..DB_MAX_ITERS {
        let y_inv = y.inverse().ok_or_else(singular)?;
        let z_inv = z.inverse().ok_or_else(singular)?;
        let y_next = (y + z_inv).scale_real(0.5);
        let z_next = (z + y_inv).scale_real(0.5);
        let step = y_next.distance(&y);
        let scale = y_next.frobenius_norm().max(1.0);
        y = y_next;
        z = z_next;
        if !y.is_finite() {
            break;
        }
        // Either the update is at rounding level or it has stopped
        // shrinking once already tiny.
        if step <= DB_TOL * scale || (step >= last_step && step <= 1e-12 * scale) {
            return Ok(y);
        }
        last_step = step;
    }
    Err(Error::Domain(
        "Denman–Beavers square root did not converge (input too far from identity?)".into(),
    ))
}

fn singular() -> Error {
    Error::Domain("singular iterate in Denman–Beavers square root".into())
}

/// Matrix logarithm by inverse scaling and squaring: repeated square roots
/// until the matrix is close to `I`, then the Mercator series for
/// `log(I + X)`, then multiplication by `2^k`.
pub fn mat_log_near_identity<T: Scalar, const N: usize>(
    m: &Mat<T, N>,
    cfg: &OracleConfig,
) -> Result<Mat<T, N>> {
    cfg.validate()?;
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    if m.inverse().is_none() {
        return Err(Error::Domain("matrix logarithm of a singular matrix".into()));
    }

    let id = Mat::<T, N>::identity();
    let mut x = *m;
    let mut roots = 0usize;
    while x.distance(&id) >= LOG_SQRT_TARGET {
        if roots == cfg.max_sqrt_steps {
            return Err(Error::Domain(format!(
                "still ‖M − I‖ ≥ {LOG_SQRT_TARGET} after {roots} square roots"
            )));
        }
        x = mat_sqrt_denman_beavers(&x)?;
        roots += 1;
    }

    let d = x - id;
    let mut sum = Mat::<T, N>::zero();
    let mut power = d;
    let mut converged = false;
    for k in 1..=cfg.max_terms {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = power.scale_real(sign / k as f64);
        sum += term;
        if term.frobenius_norm() < cfg.tol {
            converged = true;
            break;
        }
        power = power * d;
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "Mercator series not below {:e} after {} terms",
            cfg.tol, cfg.max_terms
        )));
    }
    Ok(sum.scale_real((roots as f64).exp2()))
}

/// BCH series through third order:
/// `A + B + ½[A,B] + (1/12)([[A,B],B] + [A,[A,B]])`.
pub fn bch_trunc3<T: Scalar, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> Mat<T, N> {
    let ab = a.commutator(b);
    *a + *b + ab.scale_real(0.5) + (ab.commutator(b) + a.commutator(&ab)).scale_real(1.0 / 12.0)
}

/// `log(exp(A)·exp(B))`, the reference BCH value.
pub fn bch_reference<T: Scalar, const N: usize>(
    a: &Mat<T, N>,
    b: &Mat<T, N>,
    cfg: &OracleConfig,
) -> Result<Mat<T, N>> {
    let product = mat_exp_taylor(a, cfg)? * mat_exp_taylor(b, cfg)?;
    mat_log_near_identity(&product, cfg)
}
