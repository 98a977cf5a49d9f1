//! C ABI over the storage/index code library.
//!
//! Conventions: every fallible call returns an [`RdssStatus`] and writes
//! results through out-pointers; `RDSS_STATUS_OK` is zero. On any other
//! status the failing thread's message is readable via
//! [`rdss_last_error_message`] until the next failing call on that
//! thread. Handles are opaque; free them with their matching `_free`
//! function exactly once. Strings returned through `char **` out
//! parameters are owned by the caller and must be released with
//! [`rdss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use rdss_core::confusion::{is_rdss, parse_codebook, Codebook};
use rdss_core::duality::{duality_report, vector_report};
use rdss_core::graph::{
    complete_graph, cycle_graph, empty_graph, fig1_graph, parse_graph, StorageGraph,
};
use rdss_core::search::{minrank, rdss_exact};
use rdss_core::{Error, Limits};

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RdssStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input failed to parse or violated a precondition.
    InvalidInput = 2,
    /// The time budget ran out before the search finished.
    Budget = 3,
    /// The requested computation exceeds the configured space cap.
    Space = 4,
    /// An internal invariant failed; the handle state is unchanged.
    Internal = 5,
}

/// Opaque directed side-information graph.
pub struct RdssGraph(StorageGraph);

/// Opaque codebook over a fixed alphabet.
pub struct RdssCodebook(Codebook);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let cstring = CString::new(msg.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = cstring);
}

fn status_of(err: &Error) -> RdssStatus {
    match err {
        Error::TimeBudgetExceeded => RdssStatus::Budget,
        Error::SpaceExceeded { .. } => RdssStatus::Space,
        _ => RdssStatus::InvalidInput,
    }
}

fn fail(err: Error) -> RdssStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guard<F: FnOnce() -> RdssStatus>(body: F) -> RdssStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".to_string());
            RdssStatus::Internal
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn limits_of(max_space: u64, time_budget_ms: u64) -> Limits {
    Limits::default()
        .with_max_space(max_space)
        .with_time_budget(Duration::from_millis(time_budget_ms))
}

fn give_string(text: String, out: *mut *mut c_char) -> RdssStatus {
    let cstring = match CString::new(text) {
        Ok(s) => s,
        Err(_) => {
            set_error("output contained an interior NUL".to_string());
            return RdssStatus::Internal;
        }
    };
    unsafe { *out = cstring.into_raw() };
    RdssStatus::Ok
}

/// Message for the most recent failure on this thread. The pointer is
/// owned by the library and stays valid until the next failing call on
/// the same thread; never free it.
#[no_mangle]
pub extern "C" fn rdss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string handed out through a `char **` out parameter.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rdss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from its text format ("n m" header plus one 1-based
/// "v w" edge line per arc) into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_graph_parse(
    text: *const c_char,
    out: *mut *mut RdssGraph,
) -> RdssStatus {
    guard(|| {
        if out.is_null() {
            return RdssStatus::NullArgument;
        }
        let Some(text) = read_str(text) else {
            set_error("graph text is null or not UTF-8".to_string());
            return RdssStatus::NullArgument;
        };
        match parse_graph(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(RdssGraph(g)));
                RdssStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds a named family graph: "cycle", "complete", "empty" (using
/// `n`), or "fig1" (fixed five vertices, `n` ignored).
///
/// # Safety
/// `family` must be a valid NUL-terminated string; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_graph_family(
    family: *const c_char,
    n: usize,
    out: *mut *mut RdssGraph,
) -> RdssStatus {
    guard(|| {
        if out.is_null() {
            return RdssStatus::NullArgument;
        }
        let Some(family) = read_str(family) else {
            set_error("family name is null or not UTF-8".to_string());
            return RdssStatus::NullArgument;
        };
        let built = match family {
            "cycle" => cycle_graph(n),
            "complete" => complete_graph(n),
            "empty" => empty_graph(n),
            "fig1" => Ok(fig1_graph()),
            other => {
                set_error(format!("unknown graph family '{other}'"));
                return RdssStatus::InvalidInput;
            }
        };
        match built {
            Ok(g) => {
                *out = Box::into_raw(Box::new(RdssGraph(g)));
                RdssStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a graph handle.
///
/// # Safety
/// `g` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rdss_graph_free(g: *mut RdssGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rdss_graph_vertex_count(g: *const RdssGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Serializes a graph back to its text format.
///
/// # Safety
/// `g` must be a valid handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_graph_to_string(
    g: *const RdssGraph,
    out: *mut *mut c_char,
) -> RdssStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return RdssStatus::NullArgument;
        };
        give_string(g.0.to_file_string(), out)
    })
}

/// Parses a codebook from its text format ("n q count" header plus one
/// word per line).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_codebook_parse(
    text: *const c_char,
    out: *mut *mut RdssCodebook,
) -> RdssStatus {
    guard(|| {
        if out.is_null() {
            return RdssStatus::NullArgument;
        }
        let Some(text) = read_str(text) else {
            set_error("codebook text is null or not UTF-8".to_string());
            return RdssStatus::NullArgument;
        };
        match parse_codebook(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(RdssCodebook(c)));
                RdssStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a codebook handle.
///
/// # Safety
/// `c` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rdss_codebook_free(c: *mut RdssCodebook) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of words, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rdss_codebook_len(c: *const RdssCodebook) -> u64 {
    c.as_ref().map_or(0, |c| c.0.len() as u64)
}

/// Serializes a codebook back to its text format.
///
/// # Safety
/// `c` must be a valid handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_codebook_to_string(
    c: *const RdssCodebook,
    out: *mut *mut c_char,
) -> RdssStatus {
    guard(|| {
        let (Some(c), false) = (c.as_ref(), out.is_null()) else {
            return RdssStatus::NullArgument;
        };
        give_string(c.0.to_file_string(), out)
    })
}

/// Checks whether every pair of codebook words is non-confusable on the
/// graph, writing the verdict to `out`.
///
/// # Safety
/// `g` and `c` must be valid handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_codebook_is_valid(
    g: *const RdssGraph,
    c: *const RdssCodebook,
    out: *mut bool,
) -> RdssStatus {
    guard(|| {
        let (Some(g), Some(c), false) = (g.as_ref(), c.as_ref(), out.is_null()) else {
            return RdssStatus::NullArgument;
        };
        match is_rdss(&c.0, &g.0) {
            Ok(v) => {
                *out = v;
                RdssStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Branch-and-bound search for a maximum storage code. Writes the
/// witness codebook to `out` and whether the search finished
/// exhaustively to `exact_out`.
///
/// # Safety
/// `g` must be a valid handle; `out` and `exact_out` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn rdss_exact_search(
    g: *const RdssGraph,
    q: u32,
    max_space: u64,
    time_budget_ms: u64,
    out: *mut *mut RdssCodebook,
    exact_out: *mut bool,
) -> RdssStatus {
    guard(|| {
        let (Some(g), false, false) = (g.as_ref(), out.is_null(), exact_out.is_null()) else {
            return RdssStatus::NullArgument;
        };
        match rdss_exact(&g.0, q, &limits_of(max_space, time_budget_ms)) {
            Ok(result) => {
                *exact_out = result.exact;
                *out = Box::into_raw(Box::new(RdssCodebook(result.codebook)));
                RdssStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Minimum rank over F_q of any matrix fitting the graph, by exhaustive
/// enumeration. Requires q prime.
///
/// # Safety
/// `g` must be a valid handle; `rank_out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_minrank(
    g: *const RdssGraph,
    q: u32,
    max_space: u64,
    time_budget_ms: u64,
    rank_out: *mut u32,
) -> RdssStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), rank_out.is_null()) else {
            return RdssStatus::NullArgument;
        };
        match minrank(&g.0, q, &limits_of(max_space, time_budget_ms)) {
            Ok(result) => {
                *rank_out = result.rank;
                RdssStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Full two-sided report (search, minrank, covers, verdicts) as the
/// line-oriented `key = value` text. `p` lifts the alphabet to q^p;
/// pass 1 for the scalar report.
///
/// # Safety
/// `g` must be a valid handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rdss_report(
    g: *const RdssGraph,
    q: u32,
    p: u32,
    max_space: u64,
    time_budget_ms: u64,
    out: *mut *mut c_char,
) -> RdssStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return RdssStatus::NullArgument;
        };
        let limits = limits_of(max_space, time_budget_ms);
        let report = if p == 1 {
            duality_report(&g.0, q, &limits)
        } else {
            vector_report(&g.0, q, p, &limits)
        };
        match report {
            Ok(r) => give_string(r.to_report_string(), out),
            Err(e) => fail(e),
        }
    })
}
