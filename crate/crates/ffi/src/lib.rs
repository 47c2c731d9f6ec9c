//! C ABI over `netgap`.
//!
//! Networks and codes are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns a
//! [`NetgapStatus`]; on failure [`netgap_last_error`] describes it.
//! Strings returned through out-parameters are released with
//! [`netgap_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use netgap::gap::{gap_exact, psi, GapOptions};
use netgap::gf::FieldSpec;
use netgap::graph::chromatic_number;
use netgap::lincode::{search_solution, verify_solution, CodeJson, NetworkCode, SearchOutcome};
use netgap::network::{self, KneserMode, NodeId};
use netgap::qkneser::qkneser;
use netgap::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetgapStatus {
    Ok = 0,
    /// The question was decided and the answer is no (no solution, not
    /// accepted). Out-parameters are still written where documented.
    Negative = 1,
    /// A search ran out of budget before deciding.
    Budget = 2,
    NullPointer = 3,
    InvalidArgument = 4,
    InvalidNetwork = 5,
    LimitExceeded = 6,
    Parse = 7,
    Internal = 8,
}

/// Opaque multicast network.
pub struct NetgapNetwork(network::Network);

/// Opaque linear network code.
pub struct NetgapCode(NetworkCode);

/// Exact values or brackets from [`netgap_gap`]. An upper value of 0
/// means no upper bound was found.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NetgapGap {
    pub qs_lower: u64,
    pub qs_upper: u64,
    pub qv_lower: u64,
    pub qv_upper: u64,
    pub gap_lower: u64,
    pub gap_upper: u64,
    pub exact: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> NetgapStatus {
    match e {
        Error::LimitExceeded { .. } | Error::Overflow(_) => NetgapStatus::LimitExceeded,
        Error::InvalidNetwork(_) | Error::NotTerminal(_) | Error::MissingAssignment(_) => NetgapStatus::InvalidNetwork,
        Error::Json(_) => NetgapStatus::Parse,
        Error::Io(_) => NetgapStatus::Internal,
        _ => NetgapStatus::InvalidArgument,
    }
}

type Outcome = std::result::Result<NetgapStatus, (NetgapStatus, String)>;

fn fail(e: Error) -> (NetgapStatus, String) {
    (status_of(&e), e.to_string())
}

/// Runs `f`, records any error and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Outcome) -> NetgapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            NetgapStatus::Internal
        }
    }
}

fn null() -> (NetgapStatus, String) {
    (NetgapStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> std::result::Result<&'a str, (NetgapStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (NetgapStatus::Parse, "string is not UTF-8".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> std::result::Result<(), (NetgapStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn net_ref<'a>(net: *const NetgapNetwork) -> std::result::Result<&'a network::Network, (NetgapStatus, String)> {
    net.as_ref().map(|n| &n.0).ok_or_else(null)
}

fn into_c_string(s: String) -> std::result::Result<*mut c_char, (NetgapStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (NetgapStatus::Internal, "string contains a NUL byte".into()))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn netgap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn netgap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_butterfly(out: *mut *mut NetgapNetwork) -> NetgapStatus {
    guard(|| {
        write(out, Box::into_raw(Box::new(NetgapNetwork(network::butterfly()))))?;
        Ok(NetgapStatus::Ok)
    })
}

/// The combination network `N_{h,r,s}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_combination(h: u32, r: u32, s: u32, out: *mut *mut NetgapNetwork) -> NetgapStatus {
    guard(|| {
        let net = network::combination(h as usize, r as usize, s as usize).map_err(fail)?;
        write(out, Box::into_raw(Box::new(NetgapNetwork(net))))?;
        Ok(NetgapStatus::Ok)
    })
}

/// The Kneser network `K_{q,t;h}` with every terminal listed.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_kneser(q: u64, t: u32, h: u32, out: *mut *mut NetgapNetwork) -> NetgapStatus {
    guard(|| {
        let k = network::kneser(q, t as usize, h as usize, KneserMode::Materialized).map_err(fail)?;
        let net = k
            .into_network()
            .ok_or((NetgapStatus::LimitExceeded, "network too large to materialize".into()))?;
        write(out, Box::into_raw(Box::new(NetgapNetwork(net))))?;
        Ok(NetgapStatus::Ok)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_from_json(json: *const c_char, out: *mut *mut NetgapNetwork) -> NetgapStatus {
    guard(|| {
        let net = network::Network::from_json_str(read_str(json)?).map_err(fail)?;
        write(out, Box::into_raw(Box::new(NetgapNetwork(net))))?;
        Ok(NetgapStatus::Ok)
    })
}

/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_to_json(net: *const NetgapNetwork, out: *mut *mut c_char) -> NetgapStatus {
    guard(|| {
        let s = into_c_string(net_ref(net)?.to_json_string())?;
        write(out, s)?;
        Ok(NetgapStatus::Ok)
    })
}

/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_free(net: *mut NetgapNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Node, edge and terminal counts and the number of messages.
///
/// # Safety
/// `net` must be a live handle; out pointers may be null to skip them.
#[no_mangle]
pub unsafe extern "C" fn netgap_network_shape(
    net: *const NetgapNetwork,
    nodes: *mut u64,
    edges: *mut u64,
    terminals: *mut u64,
    h: *mut u32,
) -> NetgapStatus {
    guard(|| {
        let n = net_ref(net)?;
        if !nodes.is_null() {
            nodes.write(n.nodes().len() as u64);
        }
        if !edges.is_null() {
            edges.write(n.edges().len() as u64);
        }
        if !terminals.is_null() {
            terminals.write(n.terminals().len() as u64);
        }
        if !h.is_null() {
            h.write(n.h() as u32);
        }
        Ok(NetgapStatus::Ok)
    })
}

/// Source-to-`terminal` min-cut.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_min_cut(net: *const NetgapNetwork, terminal: u32, out: *mut u64) -> NetgapStatus {
    guard(|| {
        let c = network::min_cut(net_ref(net)?, NodeId(terminal)).map_err(fail)?;
        write(out, c as u64)?;
        Ok(NetgapStatus::Ok)
    })
}

/// Writes whether the network is minimal. Returns `Negative` when it is
/// not (including unsolvable networks).
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_is_minimal(net: *const NetgapNetwork, out: *mut bool) -> NetgapStatus {
    guard(|| {
        let m = network::is_minimal(net_ref(net)?).map_err(fail)?.is_minimal();
        write(out, m)?;
        Ok(if m { NetgapStatus::Ok } else { NetgapStatus::Negative })
    })
}

/// Parses a code in the JSON form written by the command line tool.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_code_from_json(json: *const c_char, out: *mut *mut NetgapCode) -> NetgapStatus {
    guard(|| {
        let j: CodeJson = serde_json::from_str(read_str(json)?).map_err(|e| fail(e.into()))?;
        let code = NetworkCode::from_json(&j).map_err(fail)?;
        write(out, Box::into_raw(Box::new(NetgapCode(code))))?;
        Ok(NetgapStatus::Ok)
    })
}

/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_code_to_json(code: *const NetgapCode, out: *mut *mut c_char) -> NetgapStatus {
    guard(|| {
        let c = code.as_ref().ok_or_else(null)?;
        let s = serde_json::to_string(&c.0.to_json()).map_err(|e| fail(e.into()))?;
        write(out, into_c_string(s)?)?;
        Ok(NetgapStatus::Ok)
    })
}

/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn netgap_code_free(code: *mut NetgapCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// `Ok` when `code` solves `net`, `Negative` when it does not.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn netgap_verify(net: *const NetgapNetwork, code: *const NetgapCode) -> NetgapStatus {
    guard(|| {
        let c = code.as_ref().ok_or_else(null)?;
        let v = verify_solution(net_ref(net)?, &c.0).map_err(fail)?;
        Ok(if v.accepted() { NetgapStatus::Ok } else { NetgapStatus::Negative })
    })
}

/// Searches for a `(q, t)` linear solution. On `Ok` a code handle is
/// written to `out`; `Negative` means none exists, `Budget` undecided.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_search_solution(
    net: *const NetgapNetwork,
    q: u64,
    t: u32,
    budget: u64,
    out: *mut *mut NetgapCode,
) -> NetgapStatus {
    guard(|| {
        let n = net_ref(net)?;
        if out.is_null() {
            return Err(null());
        }
        let field = FieldSpec::from_order(q).map_err(fail)?;
        match search_solution(n, &field, t as usize, budget).map_err(fail)?.0 {
            SearchOutcome::Found(code) => {
                out.write(Box::into_raw(Box::new(NetgapCode(code))));
                Ok(NetgapStatus::Ok)
            }
            SearchOutcome::NoSolution => Ok(NetgapStatus::Negative),
            SearchOutcome::Unknown => Ok(NetgapStatus::Budget),
        }
    })
}

/// Smallest prime power at least `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_psi(n: u64, out: *mut u64) -> NetgapStatus {
    guard(|| {
        write(out, psi(n).map_err(fail)?)?;
        Ok(NetgapStatus::Ok)
    })
}

/// Chromatic number of `qK_{n:m}`. Writes the bracket; `Budget` when the
/// bounds did not meet.
///
/// # Safety
/// `lower` and `upper` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn netgap_chi_qkneser(
    q: u64,
    n: u32,
    m: u32,
    budget: u64,
    lower: *mut u64,
    upper: *mut u64,
) -> NetgapStatus {
    guard(|| {
        if lower.is_null() || upper.is_null() {
            return Err(null());
        }
        let g = qkneser(q, n as usize, m as usize).map_err(fail)?;
        let r = chromatic_number(&g, budget);
        lower.write(r.lower as u64);
        upper.write(r.upper as u64);
        Ok(if r.exact { NetgapStatus::Ok } else { NetgapStatus::Budget })
    })
}

fn gap_report(net: &network::Network, budget: u64) -> std::result::Result<netgap::gap::GapReport, (NetgapStatus, String)> {
    let opts = GapOptions {
        budget,
        ..GapOptions::default()
    };
    gap_exact("network", net, &opts).map_err(fail)
}

/// Computes `q_s`, `q_v` and their gap. `Budget` when any value is only
/// bracketed.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_gap(net: *const NetgapNetwork, budget: u64, out: *mut NetgapGap) -> NetgapStatus {
    guard(|| {
        let r = gap_report(net_ref(net)?, budget)?;
        let exact = r.gap.exact().is_some();
        write(
            out,
            NetgapGap {
                qs_lower: r.qs.value.lower(),
                qs_upper: r.qs.value.upper().unwrap_or(0),
                qv_lower: r.qv.value.lower(),
                qv_upper: r.qv.value.upper().unwrap_or(0),
                gap_lower: r.gap.lower(),
                gap_upper: r.gap.upper().unwrap_or(0),
                exact,
            },
        )?;
        Ok(if exact { NetgapStatus::Ok } else { NetgapStatus::Budget })
    })
}

/// The full gap report, certificates included, as JSON.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn netgap_gap_json(net: *const NetgapNetwork, budget: u64, out: *mut *mut c_char) -> NetgapStatus {
    guard(|| {
        let r = gap_report(net_ref(net)?, budget)?;
        let s = serde_json::to_string(&r).map_err(|e| fail(e.into()))?;
        write(out, into_c_string(s)?)?;
        Ok(if r.gap.exact().is_some() { NetgapStatus::Ok } else { NetgapStatus::Budget })
    })
}
