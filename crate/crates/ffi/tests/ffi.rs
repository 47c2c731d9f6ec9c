use std::ffi::{CStr, CString};
use std::ptr;

use netgap_ffi::*;

fn last_error() -> String {
    let p = netgap_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn butterfly_round_trip_and_solve() {
    unsafe {
        let mut net = ptr::null_mut();
        assert_eq!(netgap_network_butterfly(&mut net), NetgapStatus::Ok);
        let (mut nodes, mut edges, mut terms, mut h) = (0u64, 0u64, 0u64, 0u32);
        assert_eq!(netgap_network_shape(net, &mut nodes, &mut edges, &mut terms, &mut h), NetgapStatus::Ok);
        assert_eq!((nodes, edges, terms, h), (7, 9, 2, 2));

        let mut json = ptr::null_mut();
        assert_eq!(netgap_network_to_json(net, &mut json), NetgapStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(netgap_network_from_json(json, &mut again), NetgapStatus::Ok);
        netgap_string_free(json);

        let mut minimal = false;
        assert_eq!(netgap_is_minimal(again, &mut minimal), NetgapStatus::Ok);
        assert!(minimal);

        let mut code = ptr::null_mut();
        assert_eq!(netgap_search_solution(again, 2, 1, 1_000_000, &mut code), NetgapStatus::Ok);
        assert_eq!(netgap_verify(net, code), NetgapStatus::Ok);

        let mut cj = ptr::null_mut();
        assert_eq!(netgap_code_to_json(code, &mut cj), NetgapStatus::Ok);
        let mut code2 = ptr::null_mut();
        assert_eq!(netgap_code_from_json(cj, &mut code2), NetgapStatus::Ok);
        assert_eq!(netgap_verify(net, code2), NetgapStatus::Ok);
        netgap_string_free(cj);

        netgap_code_free(code);
        netgap_code_free(code2);
        netgap_network_free(net);
        netgap_network_free(again);
    }
}

#[test]
fn negative_answers() {
    unsafe {
        let mut net = ptr::null_mut();
        assert_eq!(netgap_network_combination(2, 4, 2, &mut net), NetgapStatus::Ok);
        let mut code = ptr::null_mut();
        assert_eq!(netgap_search_solution(net, 2, 1, 1_000_000, &mut code), NetgapStatus::Negative);
        assert!(code.is_null());
        netgap_network_free(net);

        let mut net = ptr::null_mut();
        assert_eq!(netgap_network_combination(2, 4, 3, &mut net), NetgapStatus::Ok);
        let mut minimal = true;
        assert_eq!(netgap_is_minimal(net, &mut minimal), NetgapStatus::Negative);
        assert!(!minimal);
        let mut cut = 0;
        assert_eq!(netgap_min_cut(net, 5, &mut cut), NetgapStatus::Ok);
        assert_eq!(cut, 3);
        netgap_network_free(net);
    }
}

#[test]
fn numbers() {
    unsafe {
        let mut p = 0;
        assert_eq!(netgap_psi(6, &mut p), NetgapStatus::Ok);
        assert_eq!(p, 7);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(netgap_chi_qkneser(2, 4, 2, 100_000_000, &mut lo, &mut hi), NetgapStatus::Ok);
        assert_eq!((lo, hi), (6, 6));

        let mut net = ptr::null_mut();
        assert_eq!(netgap_network_kneser(2, 2, 2, &mut net), NetgapStatus::Ok);
        let mut g = NetgapGap::default();
        assert_eq!(netgap_gap(net, 100_000_000, &mut g), NetgapStatus::Ok);
        assert!(g.exact);
        assert_eq!((g.qs_lower, g.qv_lower, g.gap_lower), (5, 4, 1));
        let mut json = ptr::null_mut();
        assert_eq!(netgap_gap_json(net, 100_000_000, &mut json), NetgapStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["gap"]["value"], 1);
        netgap_string_free(json);
        netgap_network_free(net);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = 0;
        assert_eq!(netgap_psi(0, &mut p), NetgapStatus::InvalidArgument);
        assert!(last_error().contains("positive"));
        assert_eq!(netgap_psi(5, ptr::null_mut()), NetgapStatus::NullPointer);

        let bad = CString::new("{not json").unwrap();
        let mut net = ptr::null_mut();
        assert_eq!(netgap_network_from_json(bad.as_ptr(), &mut net), NetgapStatus::Parse);
        assert!(net.is_null());

        let mut net = ptr::null_mut();
        assert_eq!(netgap_network_combination(3, 2, 3, &mut net), NetgapStatus::InvalidArgument);
        assert_eq!(netgap_network_kneser(6, 1, 2, &mut net), NetgapStatus::InvalidArgument);
        assert_eq!(netgap_verify(ptr::null(), ptr::null()), NetgapStatus::NullPointer);
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/netgap.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["netgap_network_butterfly", "netgap_verify", "netgap_gap", "netgap_last_error", "NETGAP_STATUS_BUDGET"] {
        assert!(text.contains(f), "{f} missing from the header");
    }
    let src = std::env::temp_dir().join(format!("netgap_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"netgap.h\"\nint main(void) { NetgapNetwork *n = 0; return netgap_network_butterfly(&n) == NETGAP_STATUS_OK ? 0 : 1; }\n").unwrap();
    match std::process::Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .status()
    {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler; syntax check skipped"),
    }
    let _ = std::fs::remove_file(src);
}
