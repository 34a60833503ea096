//! C bindings for skewrec.
//!
//! Every exported function is prefixed `skr_` and returns an [`SkrStatus`].
//! Objects cross the boundary as opaque handles (`SkrPerm`, `SkrSkew`,
//! `SkrPartition`) owned by the caller and released with the matching
//! `_free` function. Strings returned through `char **` are JSON and must be
//! released with [`skr_string_free`]. After a failure, [`skr_last_error`]
//! describes it; the message is per thread and lives until the next call.

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skewrec::cohomology::{build_tower, certify_recurrence_within, recurrentize, simple_cocycle, SimplePartition};
use skewrec::measure::{halmos_distance, uniform_distance, CellSet, DyadicFamily, Perm};
use skewrec::skew::{find_recurrence_witness, recurrence_set, SkewProduct, Witness};
use skewrec::{Error, Rational};

/// Result code of every `skr_` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SpaceMismatch = 3,
    NotAPermutation = 4,
    Precondition = 5,
    Overflow = 6,
    Construction = 7,
    Json = 8,
    Panic = 9,
}

/// Exact rational `num / den` with `den > 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkrRational {
    pub num: i64,
    pub den: i64,
}

pub struct SkrPerm(Perm);

pub struct SkrSkew(SkewProduct);

pub struct SkrPartition(SimplePartition);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(bytes).expect("nul bytes removed"));
}

fn status_of(err: &Error) -> SkrStatus {
    match err {
        Error::InvalidCellCount(_) | Error::CellOutOfRange { .. } | Error::InvalidArgument(_) => {
            SkrStatus::InvalidArgument
        }
        Error::NotAPermutation(_) => SkrStatus::NotAPermutation,
        Error::SpaceMismatch { .. } => SkrStatus::SpaceMismatch,
        Error::CycleTooShort { .. } | Error::CoverageUnattainable { .. } | Error::NotAperiodic { .. } => {
            SkrStatus::Precondition
        }
        Error::Overflow(_) => SkrStatus::Overflow,
        Error::Construction(_) => SkrStatus::Construction,
    }
}

struct Failure(SkrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SkrStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any failure and converts it to a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SkrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            SkrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside skewrec");
            SkrStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: caller passes either null or a live handle created by this library.
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: caller guarantees `p` points to `len` readable elements.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: checked non-null; caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

fn to_c_rational(r: Rational) -> Result<SkrRational, Failure> {
    match (i64::try_from(r.numer()), i64::try_from(r.denom())) {
        (Ok(num), Ok(den)) => Ok(SkrRational { num, den }),
        _ => Err(Failure(SkrStatus::Overflow, format!("{r} does not fit in 64-bit integers"))),
    }
}

fn from_c_rational(r: SkrRational) -> Result<Rational, Failure> {
    Ok(Rational::new(r.num as i128, r.den as i128)?)
}

fn json_string<T: serde::Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure(SkrStatus::Json, e.to_string()))?;
    Ok(CString::new(text).expect("json has no nul bytes").into_raw())
}

/// Optional base-cell subset: a null pointer means "every cell".
unsafe fn subset_arg(skew: &SkewProduct, cells: *const usize, len: usize) -> Result<CellSet, Failure> {
    let space = skew.base_space();
    if cells.is_null() {
        return Ok(CellSet::all(space));
    }
    // SAFETY: forwarded caller guarantee.
    let cells = unsafe { slice(cells, len, "subset") }?;
    Ok(CellSet::new(space, cells.iter().copied())?)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message describing the last failed call on this thread ("" after a success).
#[no_mangle]
pub extern "C" fn skr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skr_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in `json_string`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Creates a permutation from its image table `forward[0..len]`; `len` must be a power of two.
///
/// # Safety
/// `forward` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_new(forward: *const usize, len: usize, out: *mut *mut SkrPerm) -> SkrStatus {
    guard(|| {
        let forward = unsafe { slice(forward, len, "forward") }?.to_vec();
        let perm = Perm::from_forward(forward)?;
        unsafe { write_out(out, boxed(SkrPerm(perm)), "out") }
    })
}

/// # Safety
/// `p` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_free(p: *mut SkrPerm) {
    if !p.is_null() {
        // SAFETY: created by `boxed`.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Number of cells, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_len(p: *const SkrPerm) -> usize {
    unsafe { p.as_ref() }.map_or(0, |p| p.0.len())
}

/// Copies the image table into `buf`, which must hold exactly `len` cells.
///
/// # Safety
/// `p` must be a live handle and `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_forward(p: *const SkrPerm, buf: *mut usize, len: usize) -> SkrStatus {
    guard(|| {
        let p = unsafe { deref(p, "perm") }?;
        if len != p.0.len() {
            return Err(Failure(SkrStatus::InvalidArgument, format!("buffer holds {len}, need {}", p.0.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        // SAFETY: `buf` holds `len` values, checked equal to the source length.
        unsafe { ptr::copy_nonoverlapping(p.0.forward().as_ptr(), buf, len) };
        Ok(())
    })
}

/// `out = p ∘ q`.
///
/// # Safety
/// `p`, `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_compose(p: *const SkrPerm, q: *const SkrPerm, out: *mut *mut SkrPerm) -> SkrStatus {
    guard(|| {
        let (p, q) = unsafe { (deref(p, "p")?, deref(q, "q")?) };
        let r = p.0.compose(&q.0)?;
        unsafe { write_out(out, boxed(SkrPerm(r)), "out") }
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_inverse(p: *const SkrPerm, out: *mut *mut SkrPerm) -> SkrStatus {
    guard(|| {
        let p = unsafe { deref(p, "p") }?;
        unsafe { write_out(out, boxed(SkrPerm(p.0.inverse())), "out") }
    })
}

/// Length of the shortest cycle, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skr_perm_min_cycle_length(p: *const SkrPerm) -> usize {
    unsafe { p.as_ref() }.map_or(0, |p| p.0.min_cycle_length())
}

/// Halmos distance over the dyadic family of the permutations' space.
///
/// # Safety
/// `p`, `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_halmos_distance(p: *const SkrPerm, q: *const SkrPerm, out: *mut SkrRational) -> SkrStatus {
    guard(|| {
        let (p, q) = unsafe { (deref(p, "p")?, deref(q, "q")?) };
        let d = halmos_distance(&p.0, &q.0, &DyadicFamily::new(p.0.space()))?;
        unsafe { write_out(out, to_c_rational(d)?, "out") }
    })
}

/// Measure of the set where `p` and `q` disagree.
///
/// # Safety
/// `p`, `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_uniform_distance(p: *const SkrPerm, q: *const SkrPerm, out: *mut SkrRational) -> SkrStatus {
    guard(|| {
        let (p, q) = unsafe { (deref(p, "p")?, deref(q, "q")?) };
        let d = uniform_distance(&p.0, &q.0)?;
        unsafe { write_out(out, to_c_rational(d)?, "out") }
    })
}

/// Skew product over `base` with one fiber handle per base cell. Handles are copied, not consumed.
///
/// # Safety
/// `base` must be a live handle, `fibers` must point to `count` live handles, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_skew_new(
    base: *const SkrPerm,
    fibers: *const *const SkrPerm,
    count: usize,
    out: *mut *mut SkrSkew,
) -> SkrStatus {
    guard(|| {
        let base = unsafe { deref(base, "base") }?;
        let handles = unsafe { slice(fibers, count, "fibers") }?;
        let fibers = handles
            .iter()
            .map(|&h| unsafe { deref(h, "fiber") }.map(|f| f.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        if fibers.is_empty() {
            return Err(Failure(SkrStatus::InvalidArgument, "no fibers".into()));
        }
        let skew = SkewProduct::new(base.0.clone(), fibers)?;
        unsafe { write_out(out, boxed(SkrSkew(skew)), "out") }
    })
}

/// Parses `{"base": …, "fibers": […], "pool": […]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_skew_from_json(json: *const c_char, out: *mut *mut SkrSkew) -> SkrStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        // SAFETY: caller passes a nul-terminated string.
        let text = unsafe { CStr::from_ptr(json) }.to_str().map_err(|e| Failure(SkrStatus::Json, e.to_string()))?;
        let skew: SkewProduct = serde_json::from_str(text).map_err(|e| Failure(SkrStatus::Json, e.to_string()))?;
        unsafe { write_out(out, boxed(SkrSkew(skew)), "out") }
    })
}

/// # Safety
/// `skew` must be a live handle; `out` must be writable. Free the result with `skr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn skr_skew_to_json(skew: *const SkrSkew, out: *mut *mut c_char) -> SkrStatus {
    guard(|| {
        let skew = unsafe { deref(skew, "skew") }?;
        unsafe { write_out(out, json_string(&skew.0)?, "out") }
    })
}

/// # Safety
/// `skew` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skr_skew_free(skew: *mut SkrSkew) {
    if !skew.is_null() {
        // SAFETY: created by `boxed`.
        drop(unsafe { Box::from_raw(skew) });
    }
}

/// `out = C(x, n, R)`.
///
/// # Safety
/// `skew` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skr_skew_cocycle(skew: *const SkrSkew, x: usize, n: usize, out: *mut *mut SkrPerm) -> SkrStatus {
    guard(|| {
        let skew = unsafe { deref(skew, "skew") }?;
        let c = skew.0.cocycle(x, n)?;
        unsafe { write_out(out, boxed(SkrPerm(c)), "out") }
    })
}

/// `μ(D(m, n, R, A))`; a null `subset` means `A = X`.
///
/// # Safety
/// `skew` must be a live handle; `subset` null or `subset_len` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skr_recurrence_measure(
    skew: *const SkrSkew,
    m: u64,
    n: usize,
    subset: *const usize,
    subset_len: usize,
    out: *mut SkrRational,
) -> SkrStatus {
    guard(|| {
        let skew = unsafe { deref(skew, "skew") }?;
        let a = unsafe { subset_arg(&skew.0, subset, subset_len) }?;
        let fam = DyadicFamily::new(skew.0.fiber_space());
        let rep = recurrence_set(&skew.0, m, n, &a, &fam)?;
        unsafe { write_out(out, to_c_rational(rep.measure)?, "out") }
    })
}

/// Smallest `n` in `(floor, horizon]` with `μ(D(m, n, R, A)) > 0`. On exhaustion
/// `*found = false` and the status is still `Ok`.
///
/// # Safety
/// `skew` must be a live handle; `subset` null or readable; `out_n` and `found` writable.
#[no_mangle]
pub unsafe extern "C" fn skr_find_witness(
    skew: *const SkrSkew,
    m: u64,
    floor: usize,
    horizon: usize,
    subset: *const usize,
    subset_len: usize,
    out_n: *mut usize,
    found: *mut bool,
) -> SkrStatus {
    guard(|| {
        let skew = unsafe { deref(skew, "skew") }?;
        let a = unsafe { subset_arg(&skew.0, subset, subset_len) }?;
        let fam = DyadicFamily::new(skew.0.fiber_space());
        let w = find_recurrence_witness(&skew.0, m, floor, horizon, &a, &fam)?;
        let (n, hit) = match w {
            Witness::Found { n, .. } => (n, true),
            Witness::Exhausted { .. } => (0, false),
        };
        unsafe {
            write_out(out_n, n, "out_n")?;
            write_out(found, hit, "found")
        }
    })
}

/// Tower JSON `{"base_set": …, "height": …, "residual": …}`.
///
/// # Safety
/// `base` must be a live handle; `out` writable. Free the result with `skr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn skr_build_tower(
    base: *const SkrPerm,
    height: usize,
    eps: SkrRational,
    out: *mut *mut c_char,
) -> SkrStatus {
    guard(|| {
        let base = unsafe { deref(base, "base") }?;
        let tower = build_tower(&base.0, height, from_c_rational(eps)?)?;
        unsafe { write_out(out, json_string(&tower)?, "out") }
    })
}

/// Partition from per-cell block labels `0..block_count` and one fiber permutation per block.
///
/// # Safety
/// `labels` must hold `cells` values, `perms` `block_count` live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skr_partition_new(
    labels: *const usize,
    cells: usize,
    perms: *const *const SkrPerm,
    block_count: usize,
    out: *mut *mut SkrPartition,
) -> SkrStatus {
    guard(|| {
        let labels = unsafe { slice(labels, cells, "labels") }?;
        let handles = unsafe { slice(perms, block_count, "perms") }?;
        let perms = handles
            .iter()
            .map(|&h| unsafe { deref(h, "block perm") }.map(|p| p.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let part = SimplePartition::from_labels(labels, perms)?;
        unsafe { write_out(out, boxed(SkrPartition(part)), "out") }
    })
}

/// # Safety
/// `part` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skr_partition_free(part: *mut SkrPartition) {
    if !part.is_null() {
        // SAFETY: created by `boxed`.
        drop(unsafe { Box::from_raw(part) });
    }
}

/// The simple cocycle `T_x = J_{k(Sx)}⁻¹ ∘ J_{k(x)}`.
///
/// # Safety
/// `base`, `part` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skr_simple_cocycle(
    base: *const SkrPerm,
    part: *const SkrPartition,
    out: *mut *mut SkrSkew,
) -> SkrStatus {
    guard(|| {
        let (base, part) = unsafe { (deref(base, "base")?, deref(part, "partition")?) };
        let skew = simple_cocycle(&base.0, &part.0)?;
        unsafe { write_out(out, boxed(SkrSkew(skew)), "out") }
    })
}

/// Certificate JSON `{"block": k, "n": n, "witness": […]}`; a null `subset` means every cell.
///
/// # Safety
/// `base`, `part` must be live handles; `subset` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skr_certify(
    base: *const SkrPerm,
    part: *const SkrPartition,
    floor: usize,
    subset: *const usize,
    subset_len: usize,
    out: *mut *mut c_char,
) -> SkrStatus {
    guard(|| {
        let (base, part) = unsafe { (deref(base, "base")?, deref(part, "partition")?) };
        let a = if subset.is_null() {
            CellSet::all(base.0.space())
        } else {
            CellSet::new(base.0.space(), unsafe { slice(subset, subset_len, "subset") }?.iter().copied())?
        };
        let cert = certify_recurrence_within(&base.0, &part.0, floor, &a)?;
        unsafe { write_out(out, json_string(&cert)?, "out") }
    })
}

/// Nearby certified-recurrent simple extension. Writes the new extension,
/// its product-cell distance from `skew`, and the certificate JSON.
///
/// # Safety
/// `skew` must be a live handle; `subset` null or readable; all `out_*` writable.
#[no_mangle]
pub unsafe extern "C" fn skr_recurrentize(
    skew: *const SkrSkew,
    delta: SkrRational,
    floor: usize,
    subset: *const usize,
    subset_len: usize,
    out_extension: *mut *mut SkrSkew,
    out_dist: *mut SkrRational,
    out_certificate: *mut *mut c_char,
) -> SkrStatus {
    guard(|| {
        let skew = unsafe { deref(skew, "skew") }?;
        let a = unsafe { subset_arg(&skew.0, subset, subset_len) }?;
        let res = recurrentize(&skew.0, from_c_rational(delta)?, floor, &a)?;
        let dist = to_c_rational(res.dist)?;
        let cert = json_string(&res.certificate)?;
        if out_extension.is_null() || out_dist.is_null() || out_certificate.is_null() {
            // SAFETY: just allocated above and not yet handed out.
            unsafe { skr_string_free(cert) };
            return Err(null("output pointer"));
        }
        unsafe {
            write_out(out_extension, boxed(SkrSkew(res.extension)), "out_extension")?;
            write_out(out_dist, dist, "out_dist")?;
            write_out(out_certificate, cert, "out_certificate")
        }
    })
}
