//! C ABI over bentkit. Functions and designs are opaque heap handles; every
//! call returns a [`BkStatus`] and writes its result through an out pointer.
//! The message of the last failure on the calling thread is available from
//! [`bk_last_error`]. Strings handed out must be released with [`bk_string_free`].

use bentkit::constructions::catalog;
use bentkit::designs::{addition_design, dev_graph, dev_support, IncidenceStructure};
use bentkit::invariants::{are_isomorphic, ea_equivalent, gf2_rank, smith_normal_form};
use bentkit::walsh::{is_bent, nonlinearity};
use bentkit::{Error, VectorialFunction};
use libc::{c_char, c_int};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes; the nonzero values match the CLI exit codes where they overlap.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed ANF, matrix or identifier.
    Parse = 2,
    /// Input violates a precondition, e.g. a non-bent function where bentness is required.
    Precondition = 3,
    /// The canonical-labeling search exhausted its node budget.
    ResourceLimit = 4,
    /// An internal cross-check failed.
    Inconsistency = 5,
    /// A string argument is not valid UTF-8.
    Utf8 = 6,
    /// The library panicked; the handle arguments are left untouched.
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BkDesignKind {
    /// dev(D_f) of a Boolean function.
    Support = 0,
    /// dev(G_F).
    Graph = 1,
    /// Supported by the minimum-weight codewords of C(F).
    Addition = 2,
}

/// An (n,m)-function.
pub struct BkFunction(VectorialFunction);

/// An incidence structure.
pub struct BkDesign(IncidenceStructure);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BkStatus {
    match e.exit_code() {
        2 => BkStatus::Parse,
        4 => BkStatus::ResourceLimit,
        5 => BkStatus::Inconsistency,
        _ => BkStatus::Precondition,
    }
}

enum Fail {
    Null,
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BkStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null argument".into());
            BkStatus::NullArgument
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            BkStatus::Utf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            BkStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread, or null. Owned by the library
/// and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses coordinate ANFs separated by ';' ("x1*x2 + x3*x4; x1*x3 + x2*x4") or a
/// JSON function record. `n = 0` infers the number of variables; nonzero
/// `digits` selects the digit shorthand ("12 + 34").
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_function_parse(
    text: *const c_char,
    n: usize,
    digits: c_int,
    out: *mut *mut BkFunction,
) -> BkStatus {
    guard(|| {
        let t = read_str(text)?;
        let f = VectorialFunction::parse_input(t, (n > 0).then_some(n), digits != 0)?;
        put(out, Box::into_raw(Box::new(BkFunction(f))))
    })
}

/// The catalog representative of class C{m}_{index} on six variables.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_function_catalog(
    m: usize,
    index: usize,
    out: *mut *mut BkFunction,
) -> BkStatus {
    guard(|| {
        let f = catalog(m, index)?.function();
        put(out, Box::into_raw(Box::new(BkFunction(f))))
    })
}

/// # Safety
/// `f` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn bk_function_free(f: *mut BkFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes n, m and the algebraic degree; any out pointer may be null.
///
/// # Safety
/// `f` must be a valid handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_function_shape(
    f: *const BkFunction,
    n: *mut usize,
    m: *mut usize,
    degree: *mut u32,
) -> BkStatus {
    guard(|| {
        let f = &get(f)?.0;
        if !n.is_null() {
            n.write(f.num_vars());
        }
        if !m.is_null() {
            m.write(f.num_outputs());
        }
        if !degree.is_null() {
            degree.write(f.degree());
        }
        Ok(())
    })
}

/// Coordinate `i` (0-based) as an ANF string; free with [`bk_string_free`].
///
/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_function_anf(
    f: *const BkFunction,
    i: usize,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let f = &get(f)?.0;
        if i >= f.num_outputs() {
            return Err(Error::InvalidInput(format!(
                "coordinate {i} out of range for m = {}",
                f.num_outputs()
            ))
            .into());
        }
        put(out, owned_string(f.anfs()[i].to_string()))
    })
}

/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_function_is_bent(f: *const BkFunction, out: *mut c_int) -> BkStatus {
    guard(|| put(out, is_bent(&get(f)?.0) as c_int))
}

/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_function_nonlinearity(f: *const BkFunction, out: *mut u32) -> BkStatus {
    guard(|| put(out, nonlinearity(&get(f)?.0)))
}

/// EA-equivalence of two bent functions; `budget = 0` uses the default node budget.
///
/// # Safety
/// `a`, `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_ea_equivalent(
    a: *const BkFunction,
    b: *const BkFunction,
    budget: u64,
    out: *mut c_int,
) -> BkStatus {
    guard(|| {
        let eq = ea_equivalent(&get(a)?.0, &get(b)?.0, effective_budget(budget))?;
        put(out, eq as c_int)
    })
}

fn effective_budget(budget: u64) -> u64 {
    if budget == 0 {
        bentkit::invariants::DEFAULT_NODE_BUDGET
    } else {
        budget
    }
}

/// Builds a translation or addition design of `f`.
///
/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_design_new(
    f: *const BkFunction,
    kind: BkDesignKind,
    out: *mut *mut BkDesign,
) -> BkStatus {
    guard(|| {
        let f = &get(f)?.0;
        let d = match kind {
            BkDesignKind::Support => {
                if f.num_outputs() != 1 {
                    return Err(Error::InvalidInput(
                        "support designs need a Boolean function".into(),
                    )
                    .into());
                }
                dev_support(f.coord(0))
            }
            BkDesignKind::Graph => dev_graph(f),
            BkDesignKind::Addition => addition_design(f)?,
        };
        put(out, Box::into_raw(Box::new(BkDesign(d))))
    })
}

/// # Safety
/// `d` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn bk_design_free(d: *mut BkDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of points and blocks; either out pointer may be null.
///
/// # Safety
/// `d` must be a valid handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_design_size(
    d: *const BkDesign,
    points: *mut usize,
    blocks: *mut usize,
) -> BkStatus {
    guard(|| {
        let d = &get(d)?.0;
        if !points.is_null() {
            points.write(d.points());
        }
        if !blocks.is_null() {
            blocks.write(d.num_blocks());
        }
        Ok(())
    })
}

/// Rank over GF(2) of the incidence matrix.
///
/// # Safety
/// `d` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_design_gf2_rank(d: *const BkDesign, out: *mut usize) -> BkStatus {
    guard(|| put(out, gf2_rank(get(d)?.0.matrix())))
}

/// Smith normal form of the incidence matrix as "1^a 2^b ..."; free with [`bk_string_free`].
///
/// # Safety
/// `d` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_design_snf(d: *const BkDesign, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let s = smith_normal_form(get(d)?.0.matrix()).to_string();
        put(out, owned_string(s))
    })
}

/// Incidence matrix in the text export format (header "b v", one 0/1 row per block).
///
/// # Safety
/// `d` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_design_matrix(d: *const BkDesign, out: *mut *mut c_char) -> BkStatus {
    guard(|| put(out, owned_string(get(d)?.0.matrix().to_text())))
}

/// Isomorphism of two designs; `budget = 0` uses the default node budget.
///
/// # Safety
/// `a`, `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_design_isomorphic(
    a: *const BkDesign,
    b: *const BkDesign,
    budget: u64,
    out: *mut c_int,
) -> BkStatus {
    guard(|| {
        let w = are_isomorphic(&get(a)?.0, &get(b)?.0, effective_budget(budget))?;
        put(out, w.is_some() as c_int)
    })
}
