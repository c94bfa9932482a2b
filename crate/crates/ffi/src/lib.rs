//! C interface to `hardy-core`.
//!
//! Every function returns a [`HardyStatus`]; results go through out-pointers.
//! On failure the message is available from [`hardy_last_error`] on the same
//! thread until the next failing call. Candidate sets and scans are opaque
//! handles released with their `_free` functions. Pass `INFINITY` as `p` for
//! `p = ∞`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hardy_core::bounds::{harmonic_omega, sandwich, ArcSet, SearchConfig};
use hardy_core::disk::{alpha_star, blaschke_log_abs, pseudo_distance, DiskPoint, WeightFunction, ZeroTuple};
use hardy_core::interp::{interp_coefficients, Exponent, InterpScheme};
use hardy_core::potential::{binomial, sequence_scan_budgeted, CandidateSet, FeketeRecord, Method, ScanMode};
use hardy_core::scenarios::{gen_compact_grid, load_points};
use hardy_core::HardyError;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyStatus {
    Ok = 0,
    InvalidArgument = 1,
    OutsideDisk = 2,
    DuplicatePoint = 3,
    BudgetExceeded = 4,
    EnvelopeSupport = 5,
    InsufficientMass = 6,
    Invariant = 7,
    DegenerateNode = 8,
    Io = 9,
    Parse = 10,
    NullPointer = 11,
    Panic = 12,
}

/// How a scan record's tuple was found.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyMethod {
    Greedy = 0,
    Exchange = 1,
    BruteForce = 2,
}

/// One scan record. `n` is the tuple size.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HardyRecord {
    pub n: usize,
    pub log_v: f64,
    pub mu: f64,
    pub log_m: f64,
    pub method: u32,
}

/// Bounds for one `eps`, natural logs.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HardySandwich {
    pub eps: f64,
    pub r: f64,
    pub alpha: f64,
    pub k: f64,
    pub phi_eps: f64,
    pub lower_log: f64,
    pub upper_log: f64,
    pub upper_certified_log: f64,
    pub lower_exact: bool,
    pub lower_feasible: bool,
}

/// Opaque candidate set.
pub struct HardyCandidateSet(CandidateSet);

/// Opaque scan result.
pub struct HardyScan(Vec<FeketeRecord>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &HardyError) -> HardyStatus {
    match e {
        HardyError::InvalidArgument(_) => HardyStatus::InvalidArgument,
        HardyError::OutsideDisk { .. } => HardyStatus::OutsideDisk,
        HardyError::DuplicatePoint { .. } => HardyStatus::DuplicatePoint,
        HardyError::BudgetExceeded { .. } => HardyStatus::BudgetExceeded,
        HardyError::EnvelopeSupport { .. } => HardyStatus::EnvelopeSupport,
        HardyError::InsufficientMass { .. } => HardyStatus::InsufficientMass,
        HardyError::Invariant(_) => HardyStatus::Invariant,
        HardyError::DegenerateNode(_) => HardyStatus::DegenerateNode,
        HardyError::Io { .. } => HardyStatus::Io,
        HardyError::Parse(_) => HardyStatus::Parse,
    }
}

enum Fail {
    Lib(HardyError),
    Null(&'static str),
}

impl From<HardyError> for Fail {
    fn from(e: HardyError) -> Self {
        Fail::Lib(e)
    }
}

type FfiResult = std::result::Result<(), Fail>;

/// Runs `f`, converting errors and panics into a status.
fn guard<F: FnOnce() -> FfiResult>(f: F) -> HardyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HardyStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("null pointer: {name}"));
            HardyStatus::NullPointer
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HardyStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(name))
}

unsafe fn slice<'a, T>(p: *const T, n: usize, name: &'static str) -> Result<&'a [T], Fail> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

fn point(re: f64, im: f64) -> Result<DiskPoint, Fail> {
    Ok(DiskPoint::new(re, im)?)
}

unsafe fn points(re: *const f64, im: *const f64, n: usize) -> Result<Vec<DiskPoint>, Fail> {
    let (re, im) = (slice(re, n, "re")?, slice(im, n, "im")?);
    re.iter()
        .zip(im)
        .enumerate()
        .map(|(index, (&x, &y))| {
            DiskPoint::new(x, y).map_err(|_| Fail::Lib(HardyError::OutsideDisk { index, modulus: x.hypot(y) }))
        })
        .collect()
}

fn exponent(p: f64) -> Result<Exponent, Fail> {
    if p == f64::INFINITY {
        Ok(Exponent::Infinity)
    } else {
        Ok(Exponent::finite(p)?)
    }
}

/// Message of the last failed call on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hardy_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hardy_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Pseudo-hyperbolic distance `|z - w|/|1 - w̄z|`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_pseudo_distance(
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
    out_d: *mut f64,
) -> HardyStatus {
    guard(|| {
        let d = pseudo_distance(point(z_re, z_im)?, point(w_re, w_im)?);
        *out(out_d, "out_d")? = d;
        Ok(())
    })
}

/// `α*(R) = ln(2R/(1 + R²))/ln R` for `R ∈ (0, 1)`.
///
/// # Safety
/// `out_alpha` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_alpha_star(r: f64, out_alpha: *mut f64) -> HardyStatus {
    guard(|| {
        *out(out_alpha, "out_alpha")? = alpha_star(r)?;
        Ok(())
    })
}

/// `log|B(Z, z)|` for the zeros `(zeros_re[i], zeros_im[i])`, `i < n`.
///
/// # Safety
/// The arrays must hold `n` values; `out_log` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_blaschke_log_abs(
    zeros_re: *const f64,
    zeros_im: *const f64,
    n: usize,
    z_re: f64,
    z_im: f64,
    out_log: *mut f64,
) -> HardyStatus {
    guard(|| {
        let zeros = ZeroTuple::new(points(zeros_re, zeros_im, n)?);
        *out(out_log, "out_log")? = blaschke_log_abs(&zeros, point(z_re, z_im)?).value();
        Ok(())
    })
}

/// Harmonic measure at `z` of the union of arcs running counterclockwise
/// from `starts[i]` to `ends[i]`.
///
/// # Safety
/// The arrays must hold `n_arcs` values; `out_omega` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_harmonic_omega(
    starts: *const f64,
    ends: *const f64,
    n_arcs: usize,
    z_re: f64,
    z_im: f64,
    out_omega: *mut f64,
) -> HardyStatus {
    guard(|| {
        let (s, e) = (slice(starts, n_arcs, "starts")?, slice(ends, n_arcs, "ends")?);
        let arcs: Vec<(f64, f64)> = s.iter().copied().zip(e.iter().copied()).collect();
        let set = ArcSet::new(&arcs)?;
        *out(out_omega, "out_omega")? = harmonic_omega(&set, point(z_re, z_im)?);
        Ok(())
    })
}

/// Interpolation coefficients `c_{p,k}(z)` for `n` distinct nodes, written to
/// `out_re[k]`, `out_im[k]`.
///
/// # Safety
/// All arrays must hold `n` values; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hardy_interp_coefficients(
    nodes_re: *const f64,
    nodes_im: *const f64,
    n: usize,
    p: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HardyStatus {
    guard(|| {
        let scheme = InterpScheme::new(ZeroTuple::new(points(nodes_re, nodes_im, n)?), exponent(p)?)?;
        let c = interp_coefficients(&scheme, point(z_re, z_im)?)?;
        if n > 0 && (out_re.is_null() || out_im.is_null()) {
            return Err(Fail::Null("out_re/out_im"));
        }
        for (k, v) in c.iter().enumerate() {
            *out_re.add(k) = v.re;
            *out_im.add(k) = v.im;
        }
        Ok(())
    })
}

fn boxed(set: CandidateSet) -> *mut HardyCandidateSet {
    Box::into_raw(Box::new(HardyCandidateSet(set)))
}

/// Candidate set from `n` points and `n_vertices` weight vertex angles (unit
/// weight when `n_vertices` is 0).
///
/// # Safety
/// The arrays must hold the stated number of values; `out_set` must be
/// writable. Release the handle with [`hardy_candidate_set_free`].
#[no_mangle]
pub unsafe extern "C" fn hardy_candidate_set_new(
    re: *const f64,
    im: *const f64,
    n: usize,
    vertices: *const f64,
    n_vertices: usize,
    out_set: *mut *mut HardyCandidateSet,
) -> HardyStatus {
    guard(|| {
        let slot = out(out_set, "out_set")?;
        *slot = ptr::null_mut();
        let pts = points(re, im, n)?;
        let q = WeightFunction::from_vertices(slice(vertices, n_vertices, "vertices")?)?;
        *slot = boxed(CandidateSet::new(pts, q, "ffi")?);
        Ok(())
    })
}

/// Lattice points of spacing `mesh` in `|z| ≤ r`.
///
/// # Safety
/// `out_set` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hardy_candidate_set_compact(
    r: f64,
    mesh: f64,
    out_set: *mut *mut HardyCandidateSet,
) -> HardyStatus {
    guard(|| {
        let slot = out(out_set, "out_set")?;
        *slot = ptr::null_mut();
        *slot = boxed(gen_compact_grid(r, mesh)?);
        Ok(())
    })
}

/// Reads a point file.
///
/// # Safety
/// `path` must be a NUL-terminated UTF-8 string; `out_set` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hardy_candidate_set_load(
    path: *const c_char,
    out_set: *mut *mut HardyCandidateSet,
) -> HardyStatus {
    guard(|| {
        let slot = out(out_set, "out_set")?;
        *slot = ptr::null_mut();
        if path.is_null() {
            return Err(Fail::Null("path"));
        }
        let p = CStr::from_ptr(path).to_str().map_err(|_| HardyError::Parse("path is not UTF-8".into()))?;
        *slot = boxed(load_points(Path::new(p))?);
        Ok(())
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hardy_candidate_set_len(set: *const HardyCandidateSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hardy_candidate_set_free(set: *mut HardyCandidateSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Extremal tuples for `n = 1..=n_max`. With `exact` every size is
/// enumerated, failing with `BudgetExceeded` when some `C(|E|, n)` exceeds
/// `budget`; otherwise greedy + exchange is used.
///
/// # Safety
/// `set` must be a live handle; `out_scan` must be writable. Release the
/// result with [`hardy_scan_free`].
#[no_mangle]
pub unsafe extern "C" fn hardy_scan(
    set: *const HardyCandidateSet,
    n_max: usize,
    exact: bool,
    budget: u64,
    out_scan: *mut *mut HardyScan,
) -> HardyStatus {
    guard(|| {
        let slot = out(out_scan, "out_scan")?;
        *slot = ptr::null_mut();
        let e = set.as_ref().ok_or(Fail::Null("set"))?;
        let mode = if exact { ScanMode::Exact } else { ScanMode::Heuristic };
        let budget = budget as u128;
        let rep = sequence_scan_budgeted(&e.0, n_max, mode, budget)?;
        if let Some(&n) = rep.downgraded.first() {
            return Err(HardyError::BudgetExceeded { requested: binomial(e.0.len(), n), budget }.into());
        }
        *slot = Box::into_raw(Box::new(HardyScan(rep.records)));
        Ok(())
    })
}

/// Number of records, or 0 for a null handle.
///
/// # Safety
/// `scan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hardy_scan_len(scan: *const HardyScan) -> usize {
    scan.as_ref().map_or(0, |s| s.0.len())
}

/// Copies record `index` (0-based, tuple size `index + 1`).
///
/// # Safety
/// `scan` must be a live handle; `out_record` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hardy_scan_record(
    scan: *const HardyScan,
    index: usize,
    out_record: *mut HardyRecord,
) -> HardyStatus {
    guard(|| {
        let s = scan.as_ref().ok_or(Fail::Null("scan"))?;
        let r = s.0.get(index).ok_or_else(|| HardyError::InvalidArgument(format!("record {index} out of range")))?;
        let method = match r.method {
            Method::Greedy => HardyMethod::Greedy,
            Method::Exchange => HardyMethod::Exchange,
            Method::BruteForce => HardyMethod::BruteForce,
        };
        *out(out_record, "out_record")? =
            HardyRecord { n: r.n, log_v: r.log_v, mu: r.mu, log_m: r.log_m, method: method as u32 };
        Ok(())
    })
}

/// # Safety
/// `scan` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hardy_scan_free(scan: *mut HardyScan) {
    if !scan.is_null() {
        drop(Box::from_raw(scan));
    }
}

/// Lower and upper bounds for `eps` on `|z| ≤ r`, using `scan` (of the same
/// set) for the envelope.
///
/// # Safety
/// `set` and `scan` must be live handles; `out_bounds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hardy_sandwich(
    set: *const HardyCandidateSet,
    scan: *const HardyScan,
    eps: f64,
    r: f64,
    p: f64,
    seed: u64,
    budget: u64,
    out_bounds: *mut HardySandwich,
) -> HardyStatus {
    guard(|| {
        let e = set.as_ref().ok_or(Fail::Null("set"))?;
        let s = scan.as_ref().ok_or(Fail::Null("scan"))?;
        let cfg = SearchConfig { budget: budget as u128, seed, ..SearchConfig::default() };
        let b = sandwich(&e.0, &s.0, eps, r, exponent(p)?, &cfg)?;
        *out(out_bounds, "out_bounds")? = HardySandwich {
            eps: b.eps,
            r: b.r,
            alpha: b.alpha,
            k: b.k,
            phi_eps: b.phi_eps,
            lower_log: b.lower_log,
            upper_log: b.upper_log,
            upper_certified_log: b.upper_certified_log,
            lower_exact: b.lower_exact,
            lower_feasible: b.lower_feasible,
        };
        Ok(())
    })
}
