//! C ABI over the blocktrace library.
//!
//! Matrices cross the boundary either as opaque [`BtMatrix`] handles with
//! interleaved `re, im` buffers, or as JSON matrix files. Every fallible
//! call returns a [`BtStatus`]; the message of the most recent error on the
//! calling thread is available through [`bt_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use blocktrace::blockops::Axis;
use blocktrace::harness::{self, CheckParams};
use blocktrace::io::MatrixFile;
use blocktrace::randgen::{GenClass, GenSpec};
use blocktrace::sector::sector_angle;
use blocktrace::spectral::SchattenQ;
use blocktrace::{BlockMatrix, Complex64, ComplexMatrix, Error};

/// Result discriminant for every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UsageError = 3,
    DomainError = 4,
    SizeError = 5,
}

/// Opaque block-matrix handle. Create with `bt_matrix_new`,
/// `bt_matrix_from_json` or `bt_generate`; release with `bt_matrix_free`.
pub struct BtMatrix {
    inner: BlockMatrix,
}

/// Positive-semidefiniteness verdict.
#[repr(C)]
pub struct BtPsdVerdict {
    pub is_psd: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub tol_used: f64,
}

/// Verdicts for a matrix and its partial transpose.
#[repr(C)]
pub struct BtPptVerdict {
    pub psd: BtPsdVerdict,
    pub psd_tau: BtPsdVerdict,
    pub is_ppt: bool,
}

/// Check parameters. `alpha < 0` means unset; `q` is 1, 2, 3, or -1 for the
/// supremum norm, 0 when unset; `r`/`t` are 0 when unset; `tol <= 0` selects
/// the default slack.
#[repr(C)]
pub struct BtCheckParams {
    pub alpha: f64,
    pub q: i32,
    pub r: i32,
    pub t: i32,
    pub tol: f64,
}

/// Scalar outcome of one inequality evaluation.
#[repr(C)]
pub struct BtCheckOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub scale: f64,
    pub pass: bool,
    pub log_domain: bool,
}

/// Generator classes, mirroring the library's `GenClass`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BtGenClass {
    Psd = 0,
    Ppt = 1,
    Sector = 2,
    Density = 3,
    Hermitian = 4,
    General = 5,
}

impl From<BtGenClass> for GenClass {
    fn from(c: BtGenClass) -> Self {
        match c {
            BtGenClass::Psd => GenClass::Psd,
            BtGenClass::Ppt => GenClass::Ppt,
            BtGenClass::Sector => GenClass::Sector,
            BtGenClass::Density => GenClass::Density,
            BtGenClass::Hermitian => GenClass::Hermitian,
            BtGenClass::General => GenClass::General,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn record_error(e: &Error) -> BtStatus {
    let status = match e {
        Error::Usage(_) => BtStatus::UsageError,
        Error::Domain(_) => BtStatus::DomainError,
        Error::Size(_) => BtStatus::SizeError,
    };
    let message = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
    status
}

/// Message of the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn bt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; never free it.
#[no_mangle]
pub extern "C" fn bt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn deref<'a>(handle: *const BtMatrix) -> Option<&'a BlockMatrix> {
    handle.as_ref().map(|h| &h.inner)
}

fn boxed(out: *mut *mut BtMatrix, block: BlockMatrix) -> BtStatus {
    unsafe {
        *out = Box::into_raw(Box::new(BtMatrix { inner: block }));
    }
    BtStatus::Ok
}

/// Builds an n-blocks-of-order-k matrix from `2*(n*k)^2` interleaved
/// `re, im` doubles in row-major order.
///
/// # Safety
/// `entries` must point to `len` readable doubles and `out` must be a valid
/// destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_matrix_new(
    n: usize,
    k: usize,
    entries: *const f64,
    len: usize,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    if entries.is_null() || out.is_null() {
        return BtStatus::NullPointer;
    }
    let d = n * k;
    if len != 2 * d * d {
        return record_error(&Error::Size(format!(
            "expected {} interleaved doubles, got {len}",
            2 * d * d
        )));
    }
    let raw = std::slice::from_raw_parts(entries, len);
    let values: Vec<Complex64> =
        raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect();
    match ComplexMatrix::new(d, values).and_then(|m| BlockMatrix::new(n, k, m)) {
        Ok(block) => boxed(out, block),
        Err(e) => record_error(&e),
    }
}

/// Releases a matrix handle; `handle` may be null.
///
/// # Safety
/// `handle` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn bt_matrix_free(handle: *mut BtMatrix) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Reads back the dimensions of a handle.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_matrix_dims(
    handle: *const BtMatrix,
    n: *mut usize,
    k: *mut usize,
) -> BtStatus {
    let (Some(block), false, false) = (deref(handle), n.is_null(), k.is_null()) else {
        return BtStatus::NullPointer;
    };
    *n = block.n;
    *k = block.k;
    BtStatus::Ok
}

/// Copies the entries out as interleaved `re, im` doubles; `len` must equal
/// `2*(n*k)^2`.
///
/// # Safety
/// `buffer` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bt_matrix_entries(
    handle: *const BtMatrix,
    buffer: *mut f64,
    len: usize,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if buffer.is_null() {
        return BtStatus::NullPointer;
    }
    let entries = block.mat.entries();
    if len != 2 * entries.len() {
        return record_error(&Error::Size(format!(
            "expected buffer of {} doubles, got {len}",
            2 * entries.len()
        )));
    }
    let out = std::slice::from_raw_parts_mut(buffer, len);
    for (i, z) in entries.iter().enumerate() {
        out[2 * i] = z.re;
        out[2 * i + 1] = z.im;
    }
    BtStatus::Ok
}

/// Serializes a handle to the JSON matrix-file format; free the string with
/// `bt_string_free`.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_matrix_to_json(
    handle: *const BtMatrix,
    out: *mut *mut c_char,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    let text = MatrixFile::from_block(block).to_json();
    *out = CString::new(text).expect("JSON has no NUL bytes").into_raw();
    BtStatus::Ok
}

/// Parses the JSON matrix-file format into a fresh handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_matrix_from_json(
    text: *const c_char,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    if text.is_null() || out.is_null() {
        return BtStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return BtStatus::InvalidUtf8;
    };
    match MatrixFile::from_json(text).and_then(|f| f.to_block()) {
        Ok(block) => boxed(out, block),
        Err(e) => record_error(&e),
    }
}

/// Frees a string returned by this library; `text` may be null.
///
/// # Safety
/// `text` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn bt_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Draws the matrix described by `(class, n, k, alpha, seed, scale)`;
/// bit-identical for equal arguments.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_generate(
    class: BtGenClass,
    n: usize,
    k: usize,
    alpha: f64,
    seed: u64,
    scale: f64,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    let spec = GenSpec::new(class.into(), n, k, seed).with_alpha(alpha).with_scale(scale);
    match spec.generate() {
        Ok(block) => boxed(out, block),
        Err(e) => record_error(&e),
    }
}

/// Partial trace over `axis` (1 or 2); the result carries a trivial block
/// structure with one block.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_partial_trace(
    handle: *const BtMatrix,
    axis: u32,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    let axis = match Axis::from_index(axis) {
        Ok(a) => a,
        Err(e) => return record_error(&e),
    };
    let reduced = block.partial_trace(axis);
    let dim = reduced.dim();
    match BlockMatrix::new(1, dim, reduced) {
        Ok(b) => boxed(out, b),
        Err(e) => record_error(&e),
    }
}

/// Partial transpose, block structure preserved.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_partial_transpose(
    handle: *const BtMatrix,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    boxed(out, block.partial_transpose())
}

/// Reshuffle; the result lives in the k-blocks-of-order-n structure.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_reshuffle(
    handle: *const BtMatrix,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    boxed(out, block.reshuffle())
}

/// Partial determinant over `axis` (1 or 2), as a one-block matrix.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_partial_det(
    handle: *const BtMatrix,
    axis: u32,
    out: *mut *mut BtMatrix,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    let axis = match Axis::from_index(axis) {
        Ok(a) => a,
        Err(e) => return record_error(&e),
    };
    let reduced = block.partial_det(axis);
    let dim = reduced.dim();
    match BlockMatrix::new(1, dim, reduced) {
        Ok(b) => boxed(out, b),
        Err(e) => record_error(&e),
    }
}

/// Positive-semidefiniteness verdict at relative tolerance `tol`.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_psd_test(
    handle: *const BtMatrix,
    tol: f64,
    out: *mut BtPsdVerdict,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    match blocktrace::decomp::psd_test(&block.mat, tol) {
        Ok(v) => {
            *out = BtPsdVerdict {
                is_psd: v.is_psd,
                min_eig: v.min_eig,
                max_eig: v.max_eig,
                tol_used: v.tol_used,
            };
            BtStatus::Ok
        }
        Err(e) => record_error(&e),
    }
}

/// Joint verdict for the matrix and its partial transpose.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_ppt_test(
    handle: *const BtMatrix,
    tol: f64,
    out: *mut BtPptVerdict,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out.is_null() {
        return BtStatus::NullPointer;
    }
    match block.ppt_test(tol) {
        Ok(v) => {
            *out = BtPptVerdict {
                psd: BtPsdVerdict {
                    is_psd: v.psd.is_psd,
                    min_eig: v.psd.min_eig,
                    max_eig: v.psd.max_eig,
                    tol_used: v.psd.tol_used,
                },
                psd_tau: BtPsdVerdict {
                    is_psd: v.psd_tau.is_psd,
                    min_eig: v.psd_tau.min_eig,
                    max_eig: v.psd_tau.max_eig,
                    tol_used: v.psd_tau.tol_used,
                },
                is_ppt: v.is_ppt(),
            };
            BtStatus::Ok
        }
        Err(e) => record_error(&e),
    }
}

/// Minimal sector angle and the smallest eigenvalue of the Hermitian part;
/// `alpha_min` is infinity when the Hermitian part is not positive definite.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_sector_angle(
    handle: *const BtMatrix,
    alpha_min: *mut f64,
    re_min_eig: *mut f64,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if alpha_min.is_null() || re_min_eig.is_null() {
        return BtStatus::NullPointer;
    }
    let report = sector_angle(&block.mat);
    *alpha_min = report.alpha_min;
    *re_min_eig = report.re_min_eig;
    BtStatus::Ok
}

fn convert_params(p: &BtCheckParams) -> Result<CheckParams, Error> {
    let q = match p.q {
        0 => None,
        1 => Some(SchattenQ::One),
        2 => Some(SchattenQ::Two),
        3 => Some(SchattenQ::Three),
        -1 => Some(SchattenQ::Inf),
        other => {
            return Err(Error::Usage(format!(
                "q must be 1, 2, 3, -1 (sup) or 0 (unset), got {other}"
            )))
        }
    };
    let nonneg = |v: i32, name: &str| -> Result<Option<u32>, Error> {
        match v {
            0 => Ok(None),
            v if v > 0 => Ok(Some(v as u32)),
            _ => Err(Error::Usage(format!("{name} must be positive or 0 (unset)"))),
        }
    };
    Ok(CheckParams {
        alpha: if p.alpha < 0.0 { None } else { Some(p.alpha) },
        q,
        r: nonneg(p.r, "r")?,
        t: nonneg(p.t, "t")?,
        tol: if p.tol > 0.0 { p.tol } else { harness::DEFAULT_SLACK },
    })
}

/// Evaluates the registry case `id` on a matrix.
///
/// # Safety
/// `id` must be NUL-terminated; `params` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_check(
    id: *const c_char,
    handle: *const BtMatrix,
    params: *const BtCheckParams,
    out: *mut BtCheckOutcome,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if id.is_null() || params.is_null() || out.is_null() {
        return BtStatus::NullPointer;
    }
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return BtStatus::InvalidUtf8;
    };
    let params = match convert_params(&*params) {
        Ok(p) => p,
        Err(e) => return record_error(&e),
    };
    match harness::evaluate_check(id, block, &params) {
        Ok(o) => {
            *out = BtCheckOutcome {
                lhs: o.lhs,
                rhs: o.rhs,
                margin: o.margin,
                scale: o.scale,
                pass: o.pass,
                log_domain: o.log_domain,
            };
            BtStatus::Ok
        }
        Err(e) => record_error(&e),
    }
}

/// Runs a seeded fuzz campaign for `id` and returns the report as a JSON
/// string (free with `bt_string_free`). `threads == 1` forces serial
/// execution, `0` uses the global pool.
///
/// # Safety
/// `id` must be NUL-terminated; `out_json` must be valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bt_fuzz(
    id: *const c_char,
    class: BtGenClass,
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
    alpha: f64,
    tol: f64,
    threads: u32,
    out_json: *mut *mut c_char,
) -> BtStatus {
    if id.is_null() || out_json.is_null() {
        return BtStatus::NullPointer;
    }
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return BtStatus::InvalidUtf8;
    };
    let spec = GenSpec::new(class.into(), n, k, seed).with_alpha(alpha.max(0.0));
    let params = CheckParams {
        alpha: Some(alpha.max(0.0)),
        q: Some(SchattenQ::Two),
        r: Some(2),
        t: Some(2),
        tol: if tol > 0.0 { tol } else { harness::DEFAULT_SLACK },
    };
    match harness::fuzz(id, &spec, trials, &params, threads as usize) {
        Ok(report) => {
            let text = serde_json::to_string(&report).expect("reports serialize");
            *out_json = CString::new(text).expect("JSON has no NUL bytes").into_raw();
            BtStatus::Ok
        }
        Err(e) => record_error(&e),
    }
}

/// Residuals of the exact-identity suite as a JSON array of
/// `[name, residual]` pairs (free with `bt_string_free`).
///
/// # Safety
/// `out_json` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_identity_suite(
    handle: *const BtMatrix,
    out_json: *mut *mut c_char,
) -> BtStatus {
    let Some(block) = deref(handle) else { return BtStatus::NullPointer };
    if out_json.is_null() {
        return BtStatus::NullPointer;
    }
    let suite = harness::identity_suite(block);
    let text = serde_json::to_string(&suite).expect("suite serializes");
    *out_json = CString::new(text).expect("JSON has no NUL bytes").into_raw();
    BtStatus::Ok
}

/// All registry ids, lexicographically sorted, as a JSON array (free with
/// `bt_string_free`).
///
/// # Safety
/// `out_json` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_registry_ids(out_json: *mut *mut c_char) -> BtStatus {
    if out_json.is_null() {
        return BtStatus::NullPointer;
    }
    let ids: Vec<&str> = harness::registry().iter().map(|c| c.id).collect();
    let text = serde_json::to_string(&ids).expect("ids serialize");
    *out_json = CString::new(text).expect("JSON has no NUL bytes").into_raw();
    BtStatus::Ok
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn generated(class: BtGenClass, n: usize, k: usize, seed: u64) -> *mut BtMatrix {
        let mut handle: *mut BtMatrix = ptr::null_mut();
        let status = bt_generate(class, n, k, 0.0, seed, 1.0, &mut handle);
        assert_eq!(status, BtStatus::Ok);
        handle
    }

    #[test]
    fn round_trip_through_buffers() {
        unsafe {
            let h = generated(BtGenClass::General, 2, 2, 3);
            let mut n = 0usize;
            let mut k = 0usize;
            assert_eq!(bt_matrix_dims(h, &mut n, &mut k), BtStatus::Ok);
            assert_eq!((n, k), (2, 2));

            let mut buf = vec![0.0f64; 2 * 16];
            assert_eq!(bt_matrix_entries(h, buf.as_mut_ptr(), buf.len()), BtStatus::Ok);

            let mut h2: *mut BtMatrix = ptr::null_mut();
            assert_eq!(bt_matrix_new(2, 2, buf.as_ptr(), buf.len(), &mut h2), BtStatus::Ok);
            let mut buf2 = vec![0.0f64; 2 * 16];
            assert_eq!(bt_matrix_entries(h2, buf2.as_mut_ptr(), buf2.len()), BtStatus::Ok);
            assert_eq!(buf, buf2);

            bt_matrix_free(h);
            bt_matrix_free(h2);
        }
    }

    #[test]
    fn json_round_trip_and_free() {
        unsafe {
            let h = generated(BtGenClass::Psd, 2, 3, 11);
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bt_matrix_to_json(h, &mut text), BtStatus::Ok);
            let mut h2: *mut BtMatrix = ptr::null_mut();
            assert_eq!(bt_matrix_from_json(text, &mut h2), BtStatus::Ok);

            let mut text2: *mut c_char = ptr::null_mut();
            assert_eq!(bt_matrix_to_json(h2, &mut text2), BtStatus::Ok);
            assert_eq!(CStr::from_ptr(text).to_bytes(), CStr::from_ptr(text2).to_bytes());

            bt_string_free(text);
            bt_string_free(text2);
            bt_matrix_free(h);
            bt_matrix_free(h2);
        }
    }

    #[test]
    fn psd_and_ppt_verdicts_cross_the_boundary() {
        unsafe {
            let h = generated(BtGenClass::Ppt, 2, 2, 5);
            let mut verdict = BtPsdVerdict { is_psd: false, min_eig: 0.0, max_eig: 0.0, tol_used: 0.0 };
            assert_eq!(bt_psd_test(h, 1e-9, &mut verdict), BtStatus::Ok);
            assert!(verdict.is_psd);

            let mut ppt = BtPptVerdict {
                psd: BtPsdVerdict { is_psd: false, min_eig: 0.0, max_eig: 0.0, tol_used: 0.0 },
                psd_tau: BtPsdVerdict { is_psd: false, min_eig: 0.0, max_eig: 0.0, tol_used: 0.0 },
                is_ppt: false,
            };
            assert_eq!(bt_ppt_test(h, 1e-9, &mut ppt), BtStatus::Ok);
            assert!(ppt.is_ppt);
            bt_matrix_free(h);
        }
    }

    #[test]
    fn check_and_error_reporting() {
        unsafe {
            let h = generated(BtGenClass::Psd, 2, 2, 9);
            let params = BtCheckParams { alpha: -1.0, q: 0, r: 0, t: 0, tol: 0.0 };
            let mut out = BtCheckOutcome {
                lhs: 0.0,
                rhs: 0.0,
                margin: 0.0,
                scale: 0.0,
                pass: false,
                log_domain: false,
            };
            let id = CString::new("fm").unwrap();
            assert_eq!(bt_check(id.as_ptr(), h, &params, &mut out), BtStatus::Ok);
            assert!(out.pass);

            let bad = CString::new("no-such-case").unwrap();
            assert_eq!(bt_check(bad.as_ptr(), h, &params, &mut out), BtStatus::UsageError);
            let msg = CStr::from_ptr(bt_last_error()).to_str().unwrap();
            assert!(msg.contains("no-such-case"));
            bt_matrix_free(h);
        }
    }

    #[test]
    fn fuzz_report_comes_back_as_json() {
        unsafe {
            let id = CString::new("fm").unwrap();
            let mut text: *mut c_char = ptr::null_mut();
            let status =
                bt_fuzz(id.as_ptr(), BtGenClass::Psd, 2, 2, 25, 42, 0.0, 0.0, 1, &mut text);
            assert_eq!(status, BtStatus::Ok);
            let parsed: serde_json::Value =
                serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
            assert_eq!(parsed["failures"], 0);
            assert_eq!(parsed["trials"], 25);
            bt_string_free(text);
        }
    }

    #[test]
    fn registry_ids_are_exposed() {
        unsafe {
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bt_registry_ids(&mut text), BtStatus::Ok);
            let ids: Vec<String> =
                serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
            assert!(ids.iter().any(|i| i == "ando-lowner"));
            assert!(ids.windows(2).all(|w| w[0] < w[1]));
            bt_string_free(text);
        }
    }

    #[test]
    fn null_pointers_are_rejected() {
        unsafe {
            assert_eq!(bt_matrix_to_json(ptr::null(), ptr::null_mut()), BtStatus::NullPointer);
            let mut out: *mut BtMatrix = ptr::null_mut();
            assert_eq!(bt_matrix_new(2, 2, ptr::null(), 0, &mut out), BtStatus::NullPointer);
        }
    }

    #[test]
    fn identity_suite_via_ffi() {
        unsafe {
            let h = generated(BtGenClass::General, 2, 2, 17);
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bt_identity_suite(h, &mut text), BtStatus::Ok);
            let suite: Vec<(String, f64)> =
                serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
            assert!(suite.iter().all(|(_, r)| *r <= 1e-10));
            bt_string_free(text);
            bt_matrix_free(h);
        }
    }
}
