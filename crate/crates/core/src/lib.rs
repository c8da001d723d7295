//! Closed-form Baker–Campbell–Hausdorff composition on SU(2) and SO(4).
//!
//! The crate composes exponentials in closed form, `e^A e^B = e^C`, for
//! su(2) and so(4). The so(4) case is reduced to two independent su(2)
//! compositions through the magic-matrix isomorphism
//! `SU(2) ⊗ SU(2) ≅ SO(4)`. Series-based oracles in [`oracle`] provide an
//! independent check of every closed form.
//!
//! Modules, bottom-up:
//!
//! - [`algebra`]: fixed-size matrices, [`Vec3`], [`So4Coeffs`], Pauli basis.
//! - [`su2`]: su(2) exponential, logarithm and BCH coefficients.
//! - [`magic`]: the magic matrix and the so(4) split / merge maps.
//! - [`so4`]: so(4) exponential, logarithm and BCH (two evaluation paths).
//! - [`oracle`]: Taylor exponential, Denman–Beavers logarithm, truncated BCH.
//! - [`cli`]: JSON documents and the `magicbch` command-line front end.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod magic;
pub mod oracle;
pub mod so4;
pub mod su2;

pub use algebra::{Complex, Mat2c, Mat4c, Mat4r, So4Coeffs, Vec3};
pub use error::{Channel, Error, Result};
pub use magic::SplitPair;
pub use so4::So4BchResult;
pub use su2::{BchCoefficients, BranchMode};
