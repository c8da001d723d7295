//! C ABI for `magicbch`.
//!
//! Every fallible function returns an [`MbStatus`]. On failure the output
//! arguments are left untouched and a description is available from
//! [`mb_last_error_message`] on the calling thread. Matrices cross the
//! boundary row-major. Mode and channel arguments are plain `int32_t`
//! values from [`MbBranchMode`] and [`MbChannel`] and are range-checked.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use magicbch::algebra::{
    coeffs_from_so4, so4_from_coeffs, Complex64, Mat2c, Mat4r, So4Coeffs, Vec3,
};
use magicbch::magic::{merge_coeffs, split_coeffs, SplitPair};
use magicbch::so4::{bch_so4, bch_so4_entries, so4_exp_coeffs, so4_log, So4BchResult};
use magicbch::su2::{bch_su2_with_coefficients, su2_exp, su2_log, BchCoefficients, BranchMode};
use magicbch::{Channel, Error};

#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbStatus {
    Ok = 0,
    InvalidArgument = 1,
    Shape = 2,
    Domain = 3,
    /// Composition or logarithm hit the antipodal point.
    Antipodal = 4,
    Convergence = 5,
    Internal = 6,
    NullPointer = 7,
}

#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbBranchMode {
    Paper = 0,
    Corrected = 1,
}

#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbChannel {
    SelfDual = 0,
    AntiSelfDual = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Upper-triangle entries of an antisymmetric 4×4 matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbSo4Coeffs {
    pub f12: f64,
    pub f13: f64,
    pub f14: f64,
    pub f23: f64,
    pub f24: f64,
    pub f34: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbComplex {
    pub re: f64,
    pub im: f64,
}

/// Row-major 2×2 complex matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbMat2c {
    pub m: [MbComplex; 4],
}

/// Row-major 4×4 real matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbMat4 {
    pub m: [f64; 16],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbSplit {
    pub self_dual: MbVec3,
    pub anti_self_dual: MbVec3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MbBchCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rho: f64,
    pub theta: f64,
}

/// Opaque result of an SO(4) composition.
pub struct MbBchSo4 {
    inner: So4BchResult,
}

// ---------------------------------------------------------------- conversions

impl From<MbVec3> for Vec3 {
    fn from(v: MbVec3) -> Self {
        Vec3::new(v.x1, v.x2, v.x3)
    }
}

impl From<Vec3> for MbVec3 {
    fn from(v: Vec3) -> Self {
        MbVec3 { x1: v.x1, x2: v.x2, x3: v.x3 }
    }
}

impl From<MbSo4Coeffs> for So4Coeffs {
    fn from(c: MbSo4Coeffs) -> Self {
        So4Coeffs { f12: c.f12, f13: c.f13, f14: c.f14, f23: c.f23, f24: c.f24, f34: c.f34 }
    }
}

impl From<So4Coeffs> for MbSo4Coeffs {
    fn from(c: So4Coeffs) -> Self {
        MbSo4Coeffs { f12: c.f12, f13: c.f13, f14: c.f14, f23: c.f23, f24: c.f24, f34: c.f34 }
    }
}

impl From<MbMat2c> for Mat2c {
    fn from(m: MbMat2c) -> Self {
        Mat2c::from_fn(|i, j| {
            let z = m.m[2 * i + j];
            Complex64::new(z.re, z.im)
        })
    }
}

impl From<Mat2c> for MbMat2c {
    fn from(m: Mat2c) -> Self {
        let mut out = MbMat2c::default();
        for i in 0..2 {
            for j in 0..2 {
                out.m[2 * i + j] = MbComplex { re: m[(i, j)].re, im: m[(i, j)].im };
            }
        }
        out
    }
}

impl From<MbMat4> for Mat4r {
    fn from(m: MbMat4) -> Self {
        Mat4r::from_fn(|i, j| m.m[4 * i + j])
    }
}

impl From<Mat4r> for MbMat4 {
    fn from(m: Mat4r) -> Self {
        let mut out = MbMat4::default();
        for i in 0..4 {
            for j in 0..4 {
                out.m[4 * i + j] = m[(i, j)];
            }
        }
        out
    }
}

impl From<SplitPair> for MbSplit {
    fn from(p: SplitPair) -> Self {
        MbSplit { self_dual: p.a1.into(), anti_self_dual: p.a2.into() }
    }
}

impl From<MbSplit> for SplitPair {
    fn from(s: MbSplit) -> Self {
        SplitPair::new(s.self_dual.into(), s.anti_self_dual.into())
    }
}

impl From<&BchCoefficients> for MbBchCoefficients {
    fn from(k: &BchCoefficients) -> Self {
        MbBchCoefficients {
            alpha: k.alpha,
            beta: k.beta,
            gamma: k.gamma,
            rho: k.rho,
            theta: k.theta,
        }
    }
}

impl From<&Error> for MbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidArgument(_) => MbStatus::InvalidArgument,
            Error::Shape(_) => MbStatus::Shape,
            Error::Domain(_) => MbStatus::Domain,
            Error::AntipodalSingularity { .. } => MbStatus::Antipodal,
            Error::Convergence(_) => MbStatus::Convergence,
            Error::InternalConsistency(_) => MbStatus::Internal,
        }
    }
}

// ---------------------------------------------------------------- plumbing

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: MbStatus, msg: &str) -> MbStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, recording errors and turning panics into `MB_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> Result<(), MbStatus>) -> MbStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MbStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(MbStatus::Internal, "panic inside magicbch"),
    }
}

fn check<T>(r: Result<T, Error>) -> Result<T, MbStatus> {
    r.map_err(|e| fail(MbStatus::from(&e), &e.to_string()))
}

unsafe fn read<'a, T>(p: *const T, name: &str) -> Result<&'a T, MbStatus> {
    p.as_ref().ok_or_else(|| fail(MbStatus::NullPointer, &format!("{name} is null")))
}

unsafe fn write_to<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, MbStatus> {
    p.as_mut().ok_or_else(|| fail(MbStatus::NullPointer, &format!("{name} is null")))
}

fn mode_from(mode: i32) -> Result<BranchMode, MbStatus> {
    match mode {
        m if m == MbBranchMode::Paper as i32 => Ok(BranchMode::PaperFaithful),
        m if m == MbBranchMode::Corrected as i32 => Ok(BranchMode::BranchCorrected),
        m => Err(fail(MbStatus::InvalidArgument, &format!("unknown branch mode {m}"))),
    }
}

fn channel_from(channel: i32) -> Result<Channel, MbStatus> {
    match channel {
        c if c == MbChannel::SelfDual as i32 => Ok(Channel::SelfDual),
        c if c == MbChannel::AntiSelfDual as i32 => Ok(Channel::AntiSelfDual),
        c => Err(fail(MbStatus::InvalidArgument, &format!("unknown channel {c}"))),
    }
}

// ---------------------------------------------------------------- API

/// Static description of an [`MbStatus`] value. Never null.
#[no_mangle]
pub extern "C" fn mb_status_message(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"invalid argument\0",
        2 => b"shape error\0",
        3 => b"input outside the function's domain\0",
        4 => b"antipodal singularity\0",
        5 => b"series did not converge\0",
        6 => b"internal error\0",
        7 => b"null pointer argument\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Detail of the last failure on this thread, or "" after a success.
/// Valid until the next `mb_*` call on the same thread.
#[no_mangle]
pub extern "C" fn mb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `exp(i v·σ)`.
///
/// # Safety
/// `v` and `out` must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_su2_exp(v: *const MbVec3, out: *mut MbMat2c) -> MbStatus {
    guard(|| {
        let v = *read(v, "v")?;
        *write_to(out, "out")? = su2_exp(v.into()).into();
        Ok(())
    })
}

/// Principal logarithm of an SU(2) matrix.
///
/// # Safety
/// `u` and `out` must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_su2_log(u: *const MbMat2c, out: *mut MbVec3) -> MbStatus {
    guard(|| {
        let u = *read(u, "u")?;
        let dst = write_to(out, "out")?;
        *dst = check(su2_log(&u.into()))?.into();
        Ok(())
    })
}

/// `z` with `exp(i x·σ) exp(i y·σ) = exp(i z·σ)`. `coeffs` may be null.
///
/// # Safety
/// Non-null pointers must be valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_bch_su2(
    x: *const MbVec3,
    y: *const MbVec3,
    mode: i32,
    out: *mut MbVec3,
    coeffs: *mut MbBchCoefficients,
) -> MbStatus {
    guard(|| {
        let (x, y) = (*read(x, "x")?, *read(y, "y")?);
        let mode = mode_from(mode)?;
        let dst = write_to(out, "out")?;
        let (z, k) = check(bch_su2_with_coefficients(x.into(), y.into(), mode))?;
        *dst = z.into();
        if let Some(c) = coeffs.as_mut() {
            *c = (&k).into();
        }
        Ok(())
    })
}

/// Rotation `exp(A)` of the antisymmetric matrix with coefficients `a`.
///
/// # Safety
/// `a` and `out` must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_so4_exp(a: *const MbSo4Coeffs, out: *mut MbMat4) -> MbStatus {
    guard(|| {
        let a = *read(a, "a")?;
        let dst = write_to(out, "out")?;
        *dst = check(so4_exp_coeffs(a.into()))?.into();
        Ok(())
    })
}

/// Logarithm of a rotation in SO(4).
///
/// # Safety
/// `o` and `out` must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_so4_log(o: *const MbMat4, out: *mut MbSo4Coeffs) -> MbStatus {
    guard(|| {
        let o = *read(o, "o")?;
        let dst = write_to(out, "out")?;
        *dst = check(so4_log(&o.into()).and_then(|m| coeffs_from_so4(&m)))?.into();
        Ok(())
    })
}

/// Self-dual and anti-self-dual parts of `a`.
///
/// # Safety
/// `a` and `out` must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_split(a: *const MbSo4Coeffs, out: *mut MbSplit) -> MbStatus {
    guard(|| {
        let a = *read(a, "a")?;
        *write_to(out, "out")? = split_coeffs(a.into()).into();
        Ok(())
    })
}

/// Inverse of [`mb_split`].
///
/// # Safety
/// `s` and `out` must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_merge(s: *const MbSplit, out: *mut MbSo4Coeffs) -> MbStatus {
    guard(|| {
        let s = *read(s, "s")?;
        *write_to(out, "out")? = merge_coeffs(s.into()).into();
        Ok(())
    })
}

/// SO(4) composition through the six expanded entry formulas.
///
/// # Safety
/// Pointers must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_bch_so4_entries(
    f: *const MbSo4Coeffs,
    g: *const MbSo4Coeffs,
    mode: i32,
    out: *mut MbSo4Coeffs,
) -> MbStatus {
    guard(|| {
        let (f, g) = (*read(f, "f")?, *read(g, "g")?);
        let mode = mode_from(mode)?;
        let dst = write_to(out, "out")?;
        *dst = check(bch_so4_entries(f.into(), g.into(), mode))?.into();
        Ok(())
    })
}

/// Composes `a` and `b` and stores a new handle in `*out`. Release it with
/// [`mb_bch_so4_free`].
///
/// # Safety
/// Pointers must be null or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mb_bch_so4_new(
    a: *const MbSo4Coeffs,
    b: *const MbSo4Coeffs,
    mode: i32,
    out: *mut *mut MbBchSo4,
) -> MbStatus {
    guard(|| {
        let (a, b) = (*read(a, "a")?, *read(b, "b")?);
        let mode = mode_from(mode)?;
        let dst = write_to(out, "out")?;
        let inner = check(bch_so4(&so4_from_coeffs(a.into()), &so4_from_coeffs(b.into()), mode))?;
        *dst = Box::into_raw(Box::new(MbBchSo4 { inner }));
        Ok(())
    })
}

/// Composed generator held by `h`.
///
/// # Safety
/// `h` must come from [`mb_bch_so4_new`] and not be freed; `out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn mb_bch_so4_result(h: *const MbBchSo4, out: *mut MbSo4Coeffs) -> MbStatus {
    guard(|| {
        let h = read(h, "handle")?;
        *write_to(out, "out")? = h.inner.coeffs().into();
        Ok(())
    })
}

/// Per-channel coefficients held by `h`; `channel` is an [`MbChannel`].
///
/// # Safety
/// As for [`mb_bch_so4_result`].
#[no_mangle]
pub unsafe extern "C" fn mb_bch_so4_channel(
    h: *const MbBchSo4,
    channel: i32,
    out: *mut MbBchCoefficients,
) -> MbStatus {
    guard(|| {
        let h = read(h, "handle")?;
        let channel = channel_from(channel)?;
        *write_to(out, "out")? = h.inner.channel(channel).into();
        Ok(())
    })
}

/// Writes 1 to `*out` if both channels lie inside the exact domain of the
/// mode used, else 0.
///
/// # Safety
/// As for [`mb_bch_so4_result`].
#[no_mangle]
pub unsafe extern "C" fn mb_bch_so4_within_branch(h: *const MbBchSo4, out: *mut i32) -> MbStatus {
    guard(|| {
        let h = read(h, "handle")?;
        *write_to(out, "out")? = i32::from(h.inner.within_branch());
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or come from [`mb_bch_so4_new`], and is freed once.
#[no_mangle]
pub unsafe extern "C" fn mb_bch_so4_free(h: *mut MbBchSo4) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
