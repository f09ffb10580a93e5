//! C interface to `ratgraph`.
//!
//! Objects cross the boundary as opaque `RgFormalism` handles. Every
//! function returns an [`RgStatus`]; on failure [`rg_last_error`] gives a
//! message for the calling thread. Strings returned through out
//! parameters are owned by the caller and released with
//! [`rg_string_free`]; handles with [`rg_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use ratgraph::cli::{convert, ConversionName};
use ratgraph::equiv::{language, member};
use ratgraph::format::{self, Formalism};
use ratgraph::letter::{format_word, parse_word};
use ratgraph::Error;

/// A loaded automaton, graph, tiling system or cellular automaton.
pub struct RgFormalism(Formalism);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Input = 3,
    Class = 4,
    Precondition = 5,
    FreshSymbol = 6,
    Limit = 7,
    /// The operation exists but produces nothing this interface returns.
    Unsupported = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: RgStatus, msg: &str) -> RgStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> RgStatus {
    let status = match e {
        Error::Input(_) => RgStatus::Input,
        Error::Class(_) => RgStatus::Class,
        Error::Precondition(_) => RgStatus::Precondition,
        Error::FreshSymbol(_) => RgStatus::FreshSymbol,
        Error::Limit(_) => RgStatus::Limit,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), RgStatus>) -> RgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RgStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(RgStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, RgStatus> {
    if p.is_null() {
        return Err(fail(RgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(RgStatus::Utf8, "argument is not UTF-8"))
}

unsafe fn handle<'a>(h: *const RgFormalism) -> Result<&'a Formalism, RgStatus> {
    h.as_ref().map(|x| &x.0).ok_or_else(|| fail(RgStatus::NullPointer, "null handle"))
}

fn out_ptr<T>(p: *mut T) -> Result<(), RgStatus> {
    if p.is_null() {
        Err(fail(RgStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn boxed(f: Formalism) -> *mut RgFormalism {
    Box::into_raw(Box::new(RgFormalism(f)))
}

/// Message of the last failed call on this thread; empty after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_load(path: *const c_char, out: *mut *mut RgFormalism) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        let f = format::load(Path::new(text(path)?)).map_err(|e| from_error(&e))?;
        *out = boxed(f);
        Ok(())
    })
}

/// Parses JSON text. Relation paths inside it resolve against the
/// current directory.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_parse(json: *const c_char, out: *mut *mut RgFormalism) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        let f = format::parse(text(json)?, None).map_err(|e| from_error(&e))?;
        *out = boxed(f);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_free(h: *mut RgFormalism) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The kind of a handle: `nfa`, `transducer`, `graph`, `tiling` or `ca`.
/// The string is static.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rg_kind(h: *const RgFormalism) -> *const c_char {
    let k: &'static CStr = match h.as_ref().map(|x| x.0.kind()) {
        Some("nfa") => c"nfa",
        Some("transducer") => c"transducer",
        Some("graph") => c"graph",
        Some("tiling") => c"tiling",
        Some("ca") => c"ca",
        _ => c"",
    };
    k.as_ptr()
}

/// Exact membership. Words use one character per letter, `{name}` for
/// longer letters.
///
/// # Safety
/// `h` must be a live handle, `word` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rg_member(h: *const RgFormalism, word: *const c_char, out: *mut bool) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        let f = handle(h)?;
        let w = parse_word(text(word)?).map_err(|e| from_error(&e))?;
        *out = member(f, &w).map_err(|e| from_error(&e))?;
        Ok(())
    })
}

/// Accepted words up to `max_len`, shortlex, one per line. The empty
/// word is written as an empty line.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_enumerate(h: *const RgFormalism, max_len: usize, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        let words = language(handle(h)?, max_len).map_err(|e| from_error(&e))?;
        let mut s = String::new();
        for w in words {
            s.push_str(&format_word(&w));
            s.push('\n');
        }
        *out = owned(s);
        Ok(())
    })
}

/// Runs a conversion by its command-line name (`ts2synch`, `ca2graph`,
/// ...) with default options. Checks that produce no object return
/// `Unsupported`; use [`rg_check_global_det`] for that one.
///
/// # Safety
/// `name` must be a NUL-terminated string, `h` a live handle and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rg_convert(name: *const c_char, h: *const RgFormalism, out: *mut *mut RgFormalism) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        let name: ConversionName = text(name)?.parse().map_err(|e| from_error(&e))?;
        let input = handle(h)?.clone();
        let (result, _, _) = convert(name, input, None, 2, 4).map_err(|e| from_error(&e))?;
        match result {
            Some(f) => {
                *out = boxed(f);
                Ok(())
            }
            None => Err(fail(RgStatus::Unsupported, "this conversion produces no object")),
        }
    })
}

/// Global determinism of a graph with initial and final sets.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_check_global_det(h: *const RgFormalism, out: *mut bool) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        let m = match handle(h)? {
            Formalism::Automaton(m) => m,
            other => return Err(fail(RgStatus::Input, &format!("expected a graph with initial and final sets, got {}", other.kind()))),
        };
        *out = ratgraph::conversions::check_global_det(m).map_err(|e| from_error(&e))?;
        Ok(())
    })
}

/// The JSON form of a handle.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_to_json(h: *const RgFormalism, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = owned(format::to_json(handle(h)?));
        Ok(())
    })
}
