//! C interface. Groups are opaque handles; every call returns a status code and
//! stores a message for `tl_last_error` on failure. Strings returned to the caller
//! must be released with `tl_string_free`. Points are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::Parser;
use transversal_lab::algebra::catalog::catalog;
use transversal_lab::cli::{run, Cli};
use transversal_lab::et::{analyze, Decision, EtOptions, Goal};
use transversal_lab::io::format::{emit_group, parse_group};
use transversal_lab::perm::{KSetOrbitIndex, PermGroup, PointSet};
use transversal_lab::report::verify_report_text;
use transversal_lab::semigroup::classify::{classify_regularity, Regularity};
use transversal_lab::Error;

pub const TL_OK: i32 = 0;
pub const TL_ERR_NULL: i32 = 1;
pub const TL_ERR_UTF8: i32 = 2;
pub const TL_ERR_PARSE: i32 = 3;
pub const TL_ERR_INVALID_ARGUMENT: i32 = 4;
pub const TL_ERR_UNAVAILABLE: i32 = 5;
pub const TL_ERR_RESOURCE: i32 = 6;
pub const TL_ERR_INVALID_CERTIFICATE: i32 = 7;
pub const TL_ERR_INTERNAL: i32 = 8;

pub const TL_NO: i32 = 0;
pub const TL_YES: i32 = 1;
pub const TL_UNKNOWN: i32 = 2;

/// Opaque permutation group.
pub struct TlGroup {
    inner: PermGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidPermutation(_) | Error::DegreeMismatch { .. } => {
            TL_ERR_PARSE
        }
        Error::Unavailable(_) => TL_ERR_UNAVAILABLE,
        Error::ResourceLimit(_) => TL_ERR_RESOURCE,
        _ => TL_ERR_INVALID_ARGUMENT,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (i32, String)>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TL_OK,
        Ok(Err((code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            TL_ERR_INTERNAL
        }
    }
}

fn lib(e: Error) -> (i32, String) {
    (code_of(&e), e.to_string())
}

fn null() -> (i32, String) {
    (TL_ERR_NULL, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (i32, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TL_ERR_UTF8, "argument is not UTF-8".into()))
}

unsafe fn group_arg<'a>(g: *const TlGroup) -> Result<&'a PermGroup, (i32, String)> {
    g.as_ref().map(|h| &h.inner).ok_or_else(null)
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn decision_code(d: &Decision) -> i32 {
    match d {
        Decision::Yes => TL_YES,
        Decision::No => TL_NO,
        Decision::Unknown(_) => TL_UNKNOWN,
    }
}

/// Message for the last failed call on this thread; valid until the next failing call.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a group file (degree / name / gen lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_group_parse(text: *const c_char, out: *mut *mut TlGroup) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = parse_group(str_arg(text)?).map_err(lib)?;
        *out = Box::into_raw(Box::new(TlGroup { inner: g }));
        Ok(())
    })
}

/// Build a catalog group such as "M24" or "PGL,2,17".
///
/// # Safety
/// `key` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_group_catalog(key: *const c_char, out: *mut *mut TlGroup) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = catalog(str_arg(key)?).map_err(lib)?;
        *out = Box::into_raw(Box::new(TlGroup { inner: g }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from `tl_group_parse` / `tl_group_catalog` or be null.
#[no_mangle]
pub unsafe extern "C" fn tl_group_free(g: *mut TlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn tl_group_degree(g: *const TlGroup) -> usize {
    g.as_ref().map_or(0, |h| h.inner.degree())
}

/// Group order in decimal.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_group_order(g: *const TlGroup, out: *mut *mut c_char) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = out_string(group_arg(g)?.order().to_string());
        Ok(())
    })
}

/// Canonical group file text (image lists).
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_group_emit(g: *const TlGroup, out: *mut *mut c_char) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = out_string(emit_group(group_arg(g)?));
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_orbit_count(g: *const TlGroup, k: usize, out: *mut usize) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = group_arg(g)?;
        if k == 0 || k > g.degree() {
            return Err((TL_ERR_INVALID_ARGUMENT, format!("k = {} on {} points", k, g.degree())));
        }
        let idx = KSetOrbitIndex::new(g, k).map_err(lib)?;
        *out = idx.num_orbits().map_err(lib)?;
        Ok(())
    })
}

unsafe fn decide(g: *const TlGroup, k: usize, max_nodes: u64, goal: Goal, out: *mut i32) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = group_arg(g)?;
        let mut opts = EtOptions::with_goal(goal);
        if max_nodes > 0 {
            opts.max_nodes = max_nodes;
        }
        let an = analyze(g, k, &opts).map_err(lib)?;
        let d = if goal == Goal::Et { an.et() } else { an.ut() };
        if let Decision::Unknown(w) = &d {
            set_error(w);
        }
        *out = decision_code(&d);
        Ok(())
    })
}

/// k-et verdict: TL_YES, TL_NO or TL_UNKNOWN. `max_nodes` 0 means the default cap.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_ket(g: *const TlGroup, k: usize, max_nodes: u64, out: *mut i32) -> i32 {
    decide(g, k, max_nodes, Goal::Et, out)
}

/// k-ut verdict, as for `tl_ket`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_kut(g: *const TlGroup, k: usize, max_nodes: u64, out: *mut i32) -> i32 {
    decide(g, k, max_nodes, Goal::Ut, out)
}

/// Is <G, t> regular for every t with image `points[0..len]` (1-based)?
/// Writes TL_YES, TL_NO or TL_UNKNOWN.
///
/// # Safety
/// `g` must be a live handle, `points` must hold `len` values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn tl_regular(
    g: *const TlGroup,
    points: *const usize,
    len: usize,
    out: *mut i32,
) -> i32 {
    guard(|| {
        if out.is_null() || (points.is_null() && len > 0) {
            return Err(null());
        }
        let g = group_arg(g)?;
        let pts = if len == 0 { &[][..] } else { std::slice::from_raw_parts(points, len) };
        if pts.iter().any(|&x| x == 0 || x > g.degree()) {
            return Err((TL_ERR_INVALID_ARGUMENT, "point out of range".into()));
        }
        let b = PointSet::new(pts.iter().map(|x| x - 1).collect()).map_err(lib)?;
        let rep = classify_regularity(g, &b, &EtOptions::default()).map_err(lib)?;
        *out = match rep.decision {
            Regularity::Regular => TL_YES,
            Regularity::NotRegular => TL_NO,
            Regularity::Unknown => {
                set_error(&rep.detail);
                TL_UNKNOWN
            }
        };
        Ok(())
    })
}

/// Run the command-line tool with `argv` (without the program name) and return the
/// JSON report in `out_json`; `out_exit` receives the tool's exit code.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tl_run(
    argc: usize,
    argv: *const *const c_char,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> i32 {
    guard(|| {
        if out_json.is_null() || out_exit.is_null() || (argv.is_null() && argc > 0) {
            return Err(null());
        }
        let mut args = vec!["transversal-lab".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i))?.to_string());
        }
        let cli = Cli::try_parse_from(&args)
            .map_err(|e| (TL_ERR_INVALID_ARGUMENT, e.to_string()))?;
        let o = run(&cli);
        *out_json = out_string(o.render(true));
        *out_exit = o.exit;
        Ok(())
    })
}

/// Check the certificate in a JSON report without search.
/// TL_OK when valid, TL_ERR_INVALID_CERTIFICATE otherwise.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tl_verify_report(json: *const c_char) -> i32 {
    guard(|| {
        verify_report_text(str_arg(json)?).map_err(|m| (TL_ERR_INVALID_CERTIFICATE, m))?;
        Ok(())
    })
}
