//! C interface to the qpl toolkit.
//!
//! Every function returns a [`QplStatus`]; on failure a message is kept per
//! thread and can be read with [`qpl_last_error`]. Strings handed out by the
//! library must be released with [`qpl_string_free`], handles with their own
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use qpl::cusp::{generate_atlas, Atlas};
use qpl::local::{beta_p, fields_for_prime};
use qpl::pencil::{act, classify, format_quadruples, parse_quadruples, Classification, GroupElementZ, Quadruple, S5Status};
use qpl::algebra::IntMatrix;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QplStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotFound = 4,
    Panic = 5,
}

/// Quadruple of 5x5 skew-symmetric integer matrices.
pub struct QplQuadruple(Quadruple);

/// The cusp dissection.
pub struct QplAtlas(Atlas);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QplClassification {
    /// False when the discriminant vanishes; the other fields are then zero.
    pub classified: bool,
    /// Number of complex-conjugate pairs among the five zeros.
    pub i: u8,
    pub reducible: bool,
    pub s5_certified: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn guard<F: FnOnce() -> Result<(), (QplStatus, String)>>(f: F) -> QplStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QplStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QplStatus::Panic
        }
    }
}

fn null() -> (QplStatus, String) {
    (QplStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (QplStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (QplStatus::InvalidArgument, "string is not UTF-8".into()))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qpl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, nul-terminated version string.
#[no_mangle]
pub extern "C" fn qpl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qpl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a quadruple from `len` (which must be 40) coordinates in the order
/// a12..a45, b12..b45, c12..c45, d12..d45.
///
/// # Safety
/// `coords` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_quadruple_new(
    coords: *const i64,
    len: usize,
    out: *mut *mut QplQuadruple,
) -> QplStatus {
    guard(|| {
        if coords.is_null() || out.is_null() {
            return Err(null());
        }
        let slice = std::slice::from_raw_parts(coords, len);
        let q = Quadruple::from_i64s(slice)
            .ok_or((QplStatus::InvalidArgument, format!("expected 40 coordinates, got {}", len)))?;
        *out = Box::into_raw(Box::new(QplQuadruple(q)));
        Ok(())
    })
}

/// Parse one line of forty integers.
///
/// # Safety
/// `line` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_quadruple_parse(line: *const c_char, out: *mut *mut QplQuadruple) -> QplStatus {
    guard(|| {
        let s = text(line)?;
        if out.is_null() {
            return Err(null());
        }
        let mut qs = parse_quadruples(s).map_err(|e| (QplStatus::ParseError, e.to_string()))?;
        if qs.len() != 1 {
            return Err((QplStatus::ParseError, format!("expected one quadruple, found {}", qs.len())));
        }
        *out = Box::into_raw(Box::new(QplQuadruple(qs.remove(0))));
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qpl_quadruple_free(q: *mut QplQuadruple) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Coordinates as a line of text; free with `qpl_string_free`.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_quadruple_to_string(q: *const QplQuadruple, out: *mut *mut c_char) -> QplStatus {
    guard(|| {
        if q.is_null() || out.is_null() {
            return Err(null());
        }
        let s = format_quadruples(std::slice::from_ref(&(*q).0));
        *out = owned(s.trim_end().to_string());
        Ok(())
    })
}

/// Act by (g4, g5), given row-major as 16 and 25 integers.
///
/// # Safety
/// `g4` and `g5` must point to 16 and 25 values; `q` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_quadruple_act(
    q: *const QplQuadruple,
    g4: *const i64,
    g5: *const i64,
    out: *mut *mut QplQuadruple,
) -> QplStatus {
    guard(|| {
        if q.is_null() || g4.is_null() || g5.is_null() || out.is_null() {
            return Err(null());
        }
        let rows = |p: *const i64, n: usize| {
            let s = std::slice::from_raw_parts(p, n * n);
            let r: Vec<&[i64]> = s.chunks(n).collect();
            IntMatrix::from_i64_rows(&r)
        };
        let g = GroupElementZ::new(rows(g4, 4), rows(g5, 5))
            .map_err(|e| (QplStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(QplQuadruple(act(&g, &(*q).0))));
        Ok(())
    })
}

/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_classify(q: *const QplQuadruple, seed: u64, out: *mut QplClassification) -> QplStatus {
    guard(|| {
        if q.is_null() || out.is_null() {
            return Err(null());
        }
        *out = match classify(&(*q).0, seed) {
            Classification::DiscZero => QplClassification::default(),
            Classification::Classified { i, reducible, s5 } => QplClassification {
                classified: true,
                i,
                reducible,
                s5_certified: s5 == S5Status::CertifiedS5,
            },
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_atlas_generate(out: *mut *mut QplAtlas) -> QplStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = Box::into_raw(Box::new(QplAtlas(generate_atlas())));
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qpl_atlas_free(a: *mut QplAtlas) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of cases, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qpl_atlas_len(a: *const QplAtlas) -> usize {
    a.as_ref().map_or(0, |a| a.0.nodes.len())
}

/// Label and bound numerator k (the case is bounded by X^(k/40)) of case `index`.
///
/// # Safety
/// `a` must be live; `label` and `bound_numerator` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_atlas_case(
    a: *const QplAtlas,
    index: usize,
    label: *mut *mut c_char,
    bound_numerator: *mut u32,
) -> QplStatus {
    guard(|| {
        if a.is_null() || label.is_null() || bound_numerator.is_null() {
            return Err(null());
        }
        let atlas = &(*a).0;
        let node = atlas
            .nodes
            .get(index)
            .ok_or((QplStatus::NotFound, format!("no case {}", index)))?;
        *label = owned(node.label.clone());
        *bound_numerator = node.bound_numerator as u32;
        Ok(())
    })
}

/// Local mass at `p` as a reduced fraction `"n/d"`. Fields come from
/// `<fixtures_dir>/p<p>.tbl` when present (pass null to skip), else from the
/// tame enumeration, which needs p > 5. `matches` receives whether the mass
/// equals 1 + p^-2 - p^-4 - p^-5.
///
/// # Safety
/// `fixtures_dir` must be null or nul-terminated; `out` and `matches` writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_beta_p(
    p: u64,
    fixtures_dir: *const c_char,
    out: *mut *mut c_char,
    matches: *mut bool,
) -> QplStatus {
    guard(|| {
        if out.is_null() || matches.is_null() {
            return Err(null());
        }
        let dir = if fixtures_dir.is_null() { None } else { Some(Path::new(text(fixtures_dir)?)) };
        let fields = fields_for_prime(dir, p).map_err(|e| (QplStatus::InvalidArgument, e.to_string()))?;
        let rep = beta_p(p, &fields).map_err(|e| (QplStatus::InvalidArgument, e.to_string()))?;
        *out = owned(rep.total.to_string());
        *matches = rep.matches;
        Ok(())
    })
}

/// Run the command-line front end with `argc` arguments (the first is the
/// program name). Only `QPL_` variables of the process environment are
/// consulted. Output goes to `out` (free it), the exit code to `exit_code`.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `out` and `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn qpl_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> QplStatus {
    guard(|| {
        if argv.is_null() || out.is_null() || exit_code.is_null() {
            return Err(null());
        }
        let args = std::slice::from_raw_parts(argv, argc)
            .iter()
            .map(|&a| text(a).map(str::to_string))
            .collect::<Result<Vec<String>, _>>()?;
        let outcome = qpl::cli::run(args, &qpl::cli::qpl_env());
        *out = owned(outcome.stdout + &outcome.stderr);
        *exit_code = outcome.code;
        Ok(())
    })
}
