//! C ABI for the `dproc` library: opaque handles, integer status codes and
//! a per-thread error message. The header is generated into `include/` at
//! build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dproc::compare::h_distance;
use dproc::enumerate::{unique_traces, EnumerationConfig, Strategy};
use dproc::logic::parse_spec;
use dproc::model::{StakeholderSystem, Trace};
use dproc::utility::{utility, utility_vector};

/// Status codes returned by every fallible function. `DPROC_OK` is zero;
/// the non-zero codes mirror the CLI exit codes where one exists.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum DprocStatus {
    DprocOk = 0,
    DprocNullArgument = 1,
    DprocParseError = 2,
    DprocAlphabetTooLarge = 3,
    DprocUnknownActivity = 4,
    DprocDegenerateProcess = 5,
    DprocMismatchedLength = 6,
    DprocInvalidUtf8 = 7,
}

use DprocStatus::*;

/// Opaque handle to a parsed process together with its stakeholders.
pub struct DprocSystem {
    system: StakeholderSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let message = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(status: DprocStatus, message: impl Into<Vec<u8>>) -> DprocStatus {
    set_error(message);
    status
}

/// Message for the most recent error on this thread, or null. The pointer
/// is valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dproc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

/// Parses a process description. On success stores a new handle in `out`;
/// release it with `dproc_system_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dproc_system_parse(
    text: *const c_char,
    out: *mut *mut DprocSystem,
) -> DprocStatus {
    if text.is_null() || out.is_null() {
        return fail(DprocNullArgument, "null argument");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(text) => text,
        Err(_) => return fail(DprocInvalidUtf8, "input is not valid UTF-8"),
    };
    match parse_spec(text) {
        Ok(system) => {
            *out = Box::into_raw(Box::new(DprocSystem { system }));
            DprocOk
        }
        Err(e) => fail(DprocParseError, e.to_string()),
    }
}

/// Releases a handle returned by `dproc_system_parse`. Null is a no-op.
///
/// # Safety
/// `handle` must come from `dproc_system_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dproc_system_free(handle: *mut DprocSystem) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of activities in the process.
///
/// # Safety
/// `handle` must be a live handle from `dproc_system_parse`.
#[no_mangle]
pub unsafe extern "C" fn dproc_activity_count(handle: *const DprocSystem) -> u32 {
    handle.as_ref().map_or(0, |h| h.system.process.alphabet().len() as u32)
}

/// Number of declared stakeholders.
///
/// # Safety
/// `handle` must be a live handle from `dproc_system_parse`.
#[no_mangle]
pub unsafe extern "C" fn dproc_stakeholder_count(handle: *const DprocSystem) -> u32 {
    handle.as_ref().map_or(0, |h| h.system.stakeholders.len() as u32)
}

fn config(max_alphabet: u32) -> EnumerationConfig {
    EnumerationConfig {
        max_alphabet: max_alphabet as usize,
    }
}

/// Counts the unique traces of the process. `max_alphabet` bounds the
/// alphabet size accepted for enumeration; pass 12 for the default limit.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dproc_trace_count(
    handle: *const DprocSystem,
    max_alphabet: u32,
    out: *mut u64,
) -> DprocStatus {
    let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
        return fail(DprocNullArgument, "null argument");
    };
    match unique_traces(&h.system.process, Strategy::Auto, &config(max_alphabet)) {
        Ok(result) => {
            *out = result.traces.len() as u64;
            DprocOk
        }
        Err(e) => fail(DprocAlphabetTooLarge, e.to_string()),
    }
}

/// Checks one trace against every constraint of the process. `events`
/// points at `len` activity identifiers; `out` receives 1 when all
/// constraints hold, 0 otherwise.
///
/// # Safety
/// `handle` must be live, `events` must point at `len` readable values
/// (null is allowed when `len` is 0), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dproc_check_trace(
    handle: *const DprocSystem,
    events: *const u32,
    len: usize,
    out: *mut u8,
) -> DprocStatus {
    let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
        return fail(DprocNullArgument, "null argument");
    };
    if events.is_null() && len > 0 {
        return fail(DprocNullArgument, "null events with non-zero length");
    }
    let events = if len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(events, len)
    };
    for &a in events {
        if !h.system.process.has_activity(a) {
            return fail(DprocUnknownActivity, format!("unknown activity {a}"));
        }
    }
    let trace = Trace::new(events.to_vec());
    let ok = h
        .system
        .process
        .constraints()
        .iter()
        .all(|c| c.satisfied_by(&trace));
    *out = ok as u8;
    DprocOk
}

/// Enumerates the process and writes one utility per stakeholder into
/// `out`, which must hold `dproc_stakeholder_count` values.
///
/// # Safety
/// `handle` must be live and `out` must point at `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dproc_utilities(
    handle: *const DprocSystem,
    max_alphabet: u32,
    out: *mut f64,
    len: usize,
) -> DprocStatus {
    let (Some(h), false) = (handle.as_ref(), out.is_null()) else {
        return fail(DprocNullArgument, "null argument");
    };
    if len != h.system.stakeholders.len() {
        return fail(
            DprocMismatchedLength,
            format!(
                "buffer holds {len} values but the process has {} stakeholders",
                h.system.stakeholders.len()
            ),
        );
    }
    let result = match unique_traces(&h.system.process, Strategy::Auto, &config(max_alphabet)) {
        Ok(result) => result,
        Err(e) => return fail(DprocAlphabetTooLarge, e.to_string()),
    };
    match utility_vector(&h.system, &result.traces) {
        Ok(vector) => {
            std::slice::from_raw_parts_mut(out, len).copy_from_slice(&vector.values);
            DprocOk
        }
        Err(e) => fail(DprocDegenerateProcess, e.to_string()),
    }
}

/// Utility of `good` desirable traces out of `total`:
/// ln(1 + good) / ln(1 + total).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dproc_utility(good: u64, total: u64, out: *mut f64) -> DprocStatus {
    if out.is_null() {
        return fail(DprocNullArgument, "null argument");
    }
    match utility(good, total) {
        Ok(u) => {
            *out = u;
            DprocOk
        }
        Err(e) => fail(DprocDegenerateProcess, e.to_string()),
    }
}

/// Euclidean distance of a utility vector from the all-ones ideal.
///
/// # Safety
/// `values` must point at `len` readable doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dproc_h_distance(
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> DprocStatus {
    if values.is_null() || out.is_null() || len == 0 {
        return fail(DprocNullArgument, "need a non-empty vector and an output pointer");
    }
    *out = h_distance(std::slice::from_raw_parts(values, len));
    DprocOk
}
