//! C ABI over the polygroup engine.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `pg_*_parse`, `pg_function_*` or `pg_check*` call and released by the
//! matching `pg_*_free`.
//! Fallible calls return a [`PgStatus`]; the message of the last error on
//! the calling thread is available from [`pg_last_error`]. Strings returned
//! by the library are owned by the caller and released with
//! [`pg_string_free`]. Panics never unwind into C: they surface as
//! [`PgStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polygroup::cli::ExperimentConfig;
use polygroup::rep::MatrixRep;
use polygroup::{calculus, constructions, quasipoly, rep, CheckReport, Error};
use polygroup::{CheckOptions, DegreeKind, GroupElement, GroupFunction, GroupSpec, Rational};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    SpecMismatch = 5,
    Evaluation = 6,
    Unsupported = 7,
    Io = 8,
    Panic = 9,
}

/// A group descriptor.
pub struct PgGroup(GroupSpec);

/// An element in normal form, tagged with its group.
pub struct PgElement {
    group: GroupSpec,
    element: GroupElement,
}

/// A scalar-valued function on a group.
pub struct PgFunction(GroupFunction);

/// The result of a check.
pub struct PgReport(CheckReport);

/// A matrix representation.
pub struct PgRep(MatrixRep);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PgStatus {
    match e {
        Error::Parse(_) | Error::Config(_) => PgStatus::Parse,
        Error::SpecMismatch { .. } => PgStatus::SpecMismatch,
        Error::Evaluation(_) | Error::Overflow => PgStatus::Evaluation,
        Error::Unsupported(_) => PgStatus::Unsupported,
        Error::Io(_) => PgStatus::Io,
        _ => PgStatus::InvalidArgument,
    }
}

/// Runs `body`, translating errors and panics into a status.
fn guard<F>(body: F) -> PgStatus
where
    F: FnOnce() -> Result<(), (PgStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            PgStatus::Panic
        }
    }
}

fn lib<T>(r: polygroup::Result<T>) -> Result<T, (PgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PgStatus, String) {
    (PgStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PgStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (PgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or point to a live `T`.
unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PgStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (PgStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. Free with
/// [`pg_string_free`].
#[no_mangle]
pub extern "C" fn pg_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version. Free with [`pg_string_free`].
#[no_mangle]
pub extern "C" fn pg_version() -> *mut c_char {
    into_c(env!("CARGO_PKG_VERSION").to_string())
}

/// # Safety
/// `descriptor` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_group_parse(descriptor: *const c_char, out: *mut *mut PgGroup) -> PgStatus {
    guard(|| {
        let spec: GroupSpec = lib(read_str(descriptor, "descriptor")?.parse())?;
        write_out(out, Box::into_raw(Box::new(PgGroup(spec))))
    })
}

/// # Safety
/// `g` must be null or a handle from [`pg_group_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_group_free(g: *mut PgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Canonical descriptor of `g`, or null. Free with [`pg_string_free`].
///
/// # Safety
/// `g` must be a live group handle.
#[no_mangle]
pub unsafe extern "C" fn pg_group_describe(g: *const PgGroup) -> *mut c_char {
    g.as_ref().map_or(ptr::null_mut(), |g| into_c(g.0.to_string()))
}

/// # Safety
/// `g` must be a live group handle, `text` a NUL-terminated string, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pg_element_parse(
    g: *const PgGroup,
    text: *const c_char,
    out: *mut *mut PgElement,
) -> PgStatus {
    guard(|| {
        let g = read_ref(g, "group")?;
        let element = lib(g.0.parse_element(read_str(text, "element text")?))?;
        write_out(out, Box::into_raw(Box::new(PgElement { group: g.0.clone(), element })))
    })
}

/// # Safety
/// `x` must be null or an element handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_element_free(x: *mut PgElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Element literal of `x`, or null. Free with [`pg_string_free`].
///
/// # Safety
/// `x` must be a live element handle.
#[no_mangle]
pub unsafe extern "C" fn pg_element_format(x: *const PgElement) -> *mut c_char {
    x.as_ref().map_or(ptr::null_mut(), |x| into_c(x.group.format_element(&x.element)))
}

/// `*out = a · b`.
///
/// # Safety
/// `a`, `b` must be live element handles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_element_mul(
    a: *const PgElement,
    b: *const PgElement,
    out: *mut *mut PgElement,
) -> PgStatus {
    guard(|| {
        let a = read_ref(a, "left element")?;
        let b = read_ref(b, "right element")?;
        let element = lib(a.group.multiply(&a.element, &b.element))?;
        write_out(out, Box::into_raw(Box::new(PgElement { group: a.group.clone(), element })))
    })
}

/// Builtin function by registry name, e.g. `heisenberg` or `gl-demo:2:0,1`.
///
/// # Safety
/// `name` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_function_builtin(name: *const c_char, out: *mut *mut PgFunction) -> PgStatus {
    guard(|| {
        let f = lib(constructions::builtin(read_str(name, "name")?))?;
        write_out(out, Box::into_raw(Box::new(PgFunction(f))))
    })
}

/// Matrix element `ζ·π(w)·x`; vectors are comma-separated rationals.
///
/// # Safety
/// `r` must be a live rep handle, `x` and `zeta` NUL-terminated strings,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_function_matrix_element(
    r: *const PgRep,
    x: *const c_char,
    zeta: *const c_char,
    out: *mut *mut PgFunction,
) -> PgStatus {
    guard(|| {
        let r = read_ref(r, "rep")?;
        let vec = |s: &str| -> Result<Vec<Rational>, (PgStatus, String)> {
            s.split(',').map(|t| t.trim().parse::<Rational>().map_err(|e| (PgStatus::Parse, e.to_string()))).collect()
        };
        let f = lib(quasipoly::matrix_element(&r.0, &vec(read_str(x, "x")?)?, &vec(read_str(zeta, "zeta")?)?))?;
        write_out(out, Box::into_raw(Box::new(PgFunction(f))))
    })
}

/// # Safety
/// `f` must be null or a function handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_function_free(f: *mut PgFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `*out` receives `f(x)` as text (`p/q` or a float). Free with
/// [`pg_string_free`].
///
/// # Safety
/// `f`, `x` must be live handles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_function_eval(
    f: *const PgFunction,
    x: *const PgElement,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let f = read_ref(f, "function")?;
        let x = read_ref(x, "element")?;
        let v = lib(f.0.eval(&x.element))?;
        write_out(out, into_c(v.to_string()))
    })
}

/// Polynomial (`kind = 0`) or semipolynomial (`kind = 1`) check of degree
/// `degree`; `steps` and `bases` are `;`-separated element literals.
///
/// # Safety
/// `f` must be a live function handle, `steps` and `bases` NUL-terminated
/// strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_check(
    f: *const PgFunction,
    kind: u32,
    degree: u32,
    steps: *const c_char,
    bases: *const c_char,
    out: *mut *mut PgReport,
) -> PgStatus {
    guard(|| {
        let f = read_ref(f, "function")?;
        let kind = match kind {
            0 => DegreeKind::Poly,
            1 => DegreeKind::Semipoly,
            k => return Err((PgStatus::InvalidArgument, format!("unknown kind {k}"))),
        };
        let spec = f.0.spec();
        let steps = lib(spec.parse_element_list(read_str(steps, "steps")?))?;
        let bases = lib(spec.parse_element_list(read_str(bases, "bases")?))?;
        let r = lib(calculus::check_degree(&f.0, kind, degree as usize, &steps, &bases, &CheckOptions::default()))?;
        write_out(out, Box::into_raw(Box::new(PgReport(r))))
    })
}

/// Runs a JSON experiment config end to end.
///
/// # Safety
/// `json` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_check_config(json: *const c_char, out: *mut *mut PgReport) -> PgStatus {
    guard(|| {
        let cfg = lib(ExperimentConfig::from_json(read_str(json, "config")?))?;
        let f = lib(cfg.function.build(&cfg.group))?;
        let (steps, bases) = lib(cfg.surface())?;
        let r = lib(calculus::check_degree(&f, cfg.check.kind, cfg.check.degree, &steps, &bases, &cfg.options()))?;
        write_out(out, Box::into_raw(Box::new(PgReport(r))))
    })
}

/// 1 for pass, 0 for fail, -1 for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn pg_report_passed(r: *const PgReport) -> i32 {
    r.as_ref().map_or(-1, |r| i32::from(r.0.passed()))
}

/// Number of witnesses, 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn pg_report_witness_count(r: *const PgReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.witnesses.len())
}

/// JSON form of the report, or null. Free with [`pg_string_free`].
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn pg_report_to_json(r: *const PgReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| into_c(r.0.to_json().to_string()))
}

/// # Safety
/// `r` must be null or a report handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_report_free(r: *mut PgReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Parses the line-oriented representation format.
///
/// # Safety
/// `text` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_rep_parse(text: *const c_char, out: *mut *mut PgRep) -> PgStatus {
    guard(|| {
        let r = lib(MatrixRep::parse(read_str(text, "rep text")?))?;
        write_out(out, Box::into_raw(Box::new(PgRep(r))))
    })
}

/// # Safety
/// `r` must be null or a rep handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_rep_free(r: *mut PgRep) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Dimension of the semipolynomial subspace of degree `n`, intersected
/// over words of length up to `max_word_length`.
///
/// # Safety
/// `r` must be a live rep handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_rep_sp_dim(r: *const PgRep, n: u32, max_word_length: u32, out: *mut usize) -> PgStatus {
    guard(|| {
        let r = read_ref(r, "rep")?;
        let s = lib(rep::sp_subspace(&r.0, n as usize, max_word_length as usize))?;
        write_out(out, s.space.dim())
    })
}

/// Dimension of the polynomial subspace of degree `n`.
///
/// # Safety
/// `r` must be a live rep handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_rep_p_dim(r: *const PgRep, n: u32, out: *mut usize) -> PgStatus {
    guard(|| {
        let r = read_ref(r, "rep")?;
        write_out(out, lib(rep::p_subspace(&r.0, n as usize))?.dim())
    })
}

/// `*out` is true when every `(n+1)`-fold product of the δ-algebra vanishes.
///
/// # Safety
/// `r` must be a live rep handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_rep_certify_degree(r: *const PgRep, n: u32, out: *mut bool) -> PgStatus {
    guard(|| {
        let r = read_ref(r, "rep")?;
        write_out(out, lib(quasipoly::certify_degree_via_rep(&r.0, n as usize))?)
    })
}
