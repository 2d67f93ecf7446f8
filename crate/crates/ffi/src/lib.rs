//! C ABI over `deltagroup`.
//!
//! Objects are opaque handles created by `dg_*_new`/`dg_*_parse`-style
//! constructors and released with the matching `dg_*_free`. Every fallible
//! call returns a [`DgStatus`]; on failure, `dg_last_error_message` gives a
//! description for the calling thread. Strings returned by the library must
//! be released with [`dg_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use deltagroup::catalog::{bundled_desk_catalog, parse_catalog, validate_catalog, Catalog};
use deltagroup::census::{run_census, verify_bound, CensusResult, Completeness};
use deltagroup::constructors::{build, GroupSpec};
use deltagroup::invariants::DeltaReport;
use deltagroup::iso::is_isomorphic;
use deltagroup::report::{emit_report, Format};
use deltagroup::{Error, Group, Permutation};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed catalog text, cycle notation or group spec.
    Parse = 3,
    /// Well-formed input describing an impossible group.
    InvalidInput = 4,
    /// The closure cap was exceeded.
    CapExceeded = 5,
    Io = 6,
    OutOfRange = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Census output format for [`dg_census_report`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgFormat {
    Text = 0,
    Structured = 1,
}

/// Per-group invariants, mirroring `deltagroup::invariants::DeltaReport`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DgDeltaReport {
    pub group_order: u64,
    pub cyclic_count: u64,
    pub delta: u64,
    pub i2: u64,
    pub bound_ok: bool,
    pub equality_case: bool,
}

impl From<DeltaReport> for DgDeltaReport {
    fn from(r: DeltaReport) -> Self {
        DgDeltaReport {
            group_order: r.group_order,
            cyclic_count: r.cyclic_count,
            delta: r.delta,
            i2: r.i2,
            bound_ok: r.bound_ok,
            equality_case: r.equality_case,
        }
    }
}

/// A finite permutation group.
pub struct DgGroup(Group);

/// A parsed small-group catalog.
pub struct DgCatalog(Catalog);

/// The result of a Δ census.
pub struct DgCensus(CensusResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg.into()));
}

fn status_of(e: &Error) -> DgStatus {
    match e {
        Error::Parse(_) | Error::NotAPermutation(_) | Error::InvalidSpec(_) => DgStatus::Parse,
        Error::CapExceeded { .. } => DgStatus::CapExceeded,
        Error::Io(_) => DgStatus::Io,
        Error::OracleRange { .. } => DgStatus::OutOfRange,
        _ => DgStatus::InvalidInput,
    }
}

fn fail(e: Error) -> DgStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// Runs `f`, converting panics into [`DgStatus::Internal`].
fn guard(f: impl FnOnce() -> DgStatus) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error (panic)");
            DgStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, DgStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(DgStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        DgStatus::InvalidUtf8
    })
}

fn null_error() -> DgStatus {
    set_error("null pointer argument");
    DgStatus::NullPointer
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Description of the last failure on this thread, or NULL if none.
/// Release with [`dg_string_free`].
#[no_mangle]
pub extern "C" fn dg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), into_c_string))
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a constructor expression such as `"C2xD8"` or
/// `"C3:C4@2"`.
#[no_mangle]
pub unsafe extern "C" fn dg_group_build(spec: *const c_char, out: *mut *mut DgGroup) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        let spec = try_status!(str_arg(spec));
        let group = spec.parse::<GroupSpec>().and_then(|s| build(&s));
        match group {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DgGroup(g)));
                DgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Closes generators given in cycle notation, separated by `;`, e.g.
/// `"(1,2,3,4) ; (1,3)"`. The degree is the largest point mentioned.
#[no_mangle]
pub unsafe extern "C" fn dg_group_from_generators(gens: *const c_char, out: *mut *mut DgGroup) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        let text = try_status!(str_arg(gens));
        let parsed: Result<Vec<Permutation>, Error> = text.split(';').map(str::parse).collect();
        let perms = match parsed {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let degree = perms.iter().map(Permutation::degree).max().unwrap_or(1);
        let perms: Vec<Permutation> = perms.iter().map(|p| p.extend(degree)).collect();
        match Group::closure(&perms, deltagroup::group::closure_cap()) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DgGroup(g)));
                DgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dg_group_free(g: *mut DgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of elements; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn dg_group_order(g: *const DgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

#[no_mangle]
pub unsafe extern "C" fn dg_group_delta_report(g: *const DgGroup, out: *mut DgDeltaReport) -> DgStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return null_error();
        };
        match DeltaReport::compute(&g.0) {
            Ok(r) => {
                *out = r.into();
                DgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dg_group_is_isomorphic(a: *const DgGroup, b: *const DgGroup, out: *mut bool) -> DgStatus {
    guard(|| {
        let (Some(a), Some(b), false) = (a.as_ref(), b.as_ref(), out.is_null()) else {
            return null_error();
        };
        *out = is_isomorphic(&a.0, &b.0);
        DgStatus::Ok
    })
}

/// Parses catalog text.
#[no_mangle]
pub unsafe extern "C" fn dg_catalog_parse(text: *const c_char, out: *mut *mut DgCatalog) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        let text = try_status!(str_arg(text));
        match parse_catalog(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(DgCatalog(c)));
                DgStatus::Ok
            }
            Err(e) => fail(e.into()),
        }
    })
}

/// Reads and parses a catalog file.
#[no_mangle]
pub unsafe extern "C" fn dg_catalog_read(path: *const c_char, out: *mut *mut DgCatalog) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        let path = try_status!(str_arg(path));
        match Catalog::read(path) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(DgCatalog(c)));
                DgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The bundled catalog of all groups of order at most 40.
#[no_mangle]
pub unsafe extern "C" fn dg_catalog_bundled(out: *mut *mut DgCatalog) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        *out = Box::into_raw(Box::new(DgCatalog(bundled_desk_catalog())));
        DgStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn dg_catalog_free(c: *mut DgCatalog) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of entries; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn dg_catalog_len(c: *const DgCatalog) -> usize {
    c.as_ref().map_or(0, |c| c.0.entries.len())
}

/// Runs catalog validation and stores the number of diagnostics. The
/// diagnostics themselves are joined into the last-error message when
/// there are any.
#[no_mangle]
pub unsafe extern "C" fn dg_catalog_validate(c: *const DgCatalog, diagnostics: *mut usize) -> DgStatus {
    guard(|| {
        let (Some(c), false) = (c.as_ref(), diagnostics.is_null()) else {
            return null_error();
        };
        let d = validate_catalog(&c.0);
        if !d.is_empty() {
            set_error(d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n"));
        }
        *diagnostics = d.len();
        DgStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn dg_census_run(c: *const DgCatalog, delta_max: u64, out: *mut *mut DgCensus) -> DgStatus {
    guard(|| {
        let (Some(c), false) = (c.as_ref(), out.is_null()) else {
            return null_error();
        };
        if delta_max == 0 {
            set_error("delta_max must be at least 1");
            return DgStatus::OutOfRange;
        }
        match run_census(&c.0, delta_max) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(DgCensus(r)));
                DgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dg_census_free(c: *mut DgCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of groups with `Δ = delta`; 0 for NULL or δ out of range.
#[no_mangle]
pub unsafe extern "C" fn dg_census_bucket_len(c: *const DgCensus, delta: u64) -> usize {
    c.as_ref()
        .and_then(|c| c.0.per_delta.get(&delta))
        .map_or(0, Vec::len)
}

/// Id of the `i`-th group (0-based) with `Δ = delta`.
#[no_mangle]
pub unsafe extern "C" fn dg_census_bucket_id(
    c: *const DgCensus,
    delta: u64,
    i: usize,
    order: *mut usize,
    index: *mut usize,
) -> DgStatus {
    guard(|| {
        let (Some(c), false, false) = (c.as_ref(), order.is_null(), index.is_null()) else {
            return null_error();
        };
        match c.0.per_delta.get(&delta).and_then(|b| b.get(i)) {
            Some(r) => {
                *order = r.id.order;
                *index = r.id.index;
                DgStatus::Ok
            }
            None => {
                set_error(format!("no group {i} with difference {delta}"));
                DgStatus::OutOfRange
            }
        }
    })
}

/// Whether the catalog covers every order up to `8·delta`.
#[no_mangle]
pub unsafe extern "C" fn dg_census_is_complete(c: *const DgCensus, delta: u64) -> bool {
    c.as_ref()
        .and_then(|c| c.0.completeness.get(&delta))
        .is_some_and(|&k| k == Completeness::Complete)
}

/// Number of bound violations among the bucketed groups.
#[no_mangle]
pub unsafe extern "C" fn dg_census_violations(c: *const DgCensus, out: *mut usize) -> DgStatus {
    guard(|| {
        let (Some(c), false) = (c.as_ref(), out.is_null()) else {
            return null_error();
        };
        *out = verify_bound(&c.0).len();
        DgStatus::Ok
    })
}

/// Renders the census. Release the string with [`dg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dg_census_report(c: *const DgCensus, format: DgFormat, out: *mut *mut c_char) -> DgStatus {
    guard(|| {
        let (Some(c), false) = (c.as_ref(), out.is_null()) else {
            return null_error();
        };
        let f = match format {
            DgFormat::Text => Format::Text,
            DgFormat::Structured => Format::Structured,
        };
        *out = into_c_string(emit_report(&c.0, f));
        DgStatus::Ok
    })
}
