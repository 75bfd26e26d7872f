use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use vhcx_ffi::*;

fn corpus(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)).unwrap()
}

fn parse(name: &str) -> *mut VhcxComplex {
    let text = CString::new(corpus(name)).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { vhcx_complex_parse(text.as_ptr(), &mut c) }, VhcxStatus::Ok);
    assert!(!c.is_null());
    c
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vhcx_last_error()) }.to_str().unwrap().to_string()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vhcx_string_free(s) };
    out
}

#[test]
fn link_and_euler() {
    let c = parse("sigma.vh");
    let (mut ok, mut covered, mut expected) = (false, 0usize, 0usize);
    assert_eq!(unsafe { vhcx_check_link(c, &mut ok, &mut covered, &mut expected) }, VhcxStatus::Ok);
    assert!(ok);
    assert_eq!((covered, expected), (96, 96));
    let mut chi = 0i64;
    assert_eq!(unsafe { vhcx_euler_characteristic(c, &mut chi) }, VhcxStatus::Ok);
    assert_eq!(chi, 15);
    unsafe { vhcx_complex_free(c) };
}

#[test]
fn broken_link_is_math_fail() {
    let text = CString::new("complex t\nhorizontal a1\nvertical b1\n").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { vhcx_complex_parse(text.as_ptr(), &mut c) }, VhcxStatus::Ok);
    let (mut ok, mut covered, mut expected) = (true, 0usize, 0usize);
    assert_eq!(unsafe { vhcx_check_link(c, &mut ok, &mut covered, &mut expected) }, VhcxStatus::MathFail);
    assert!(!ok);
    assert_eq!((covered, expected), (0, 4));
    unsafe { vhcx_complex_free(c) };
}

#[test]
fn local_orders() {
    let c = parse("sigma.vh");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vhcx_local_group_order(c, VHCX_SIDE_HORIZONTAL, 1, &mut s) }, VhcxStatus::Ok);
    assert_eq!(take(s), "95040");
    assert_eq!(unsafe { vhcx_local_group_order(c, VHCX_SIDE_VERTICAL, 2, &mut s) }, VhcxStatus::Ok);
    assert_eq!(take(s), "32786484626674308612096000000000");
    assert_eq!(unsafe { vhcx_local_group_order(c, 7, 1, &mut s) }, VhcxStatus::InvalidArgument);
    assert_eq!(unsafe { vhcx_local_group_order(c, 0, 0, &mut s) }, VhcxStatus::InvalidArgument);
    unsafe { vhcx_complex_free(c) };
}

#[test]
fn closure_index_codes() {
    let c = parse("sigma.vh");
    let w = CString::new("a2*a1^-1*a3*a4^-1").unwrap();
    let mut k = 0usize;
    assert_eq!(unsafe { vhcx_normal_closure_index(c, w.as_ptr(), 0, &mut k) }, VhcxStatus::Ok);
    assert_eq!(k, 4);
    assert_eq!(unsafe { vhcx_normal_closure_index(c, w.as_ptr(), 1000, &mut k) }, VhcxStatus::Exhausted);
    assert!(last_error().contains("1000"));
    let bad = CString::new("z9").unwrap();
    assert_eq!(unsafe { vhcx_normal_closure_index(c, bad.as_ptr(), 0, &mut k) }, VhcxStatus::InvalidArgument);
    assert!(last_error().contains("z9"));
    unsafe { vhcx_complex_free(c) };
}

#[test]
fn certificate_json() {
    let c = parse("sigma.vh");
    let w = CString::new("a2*a1^-1*a3*a4^-1").unwrap();
    let mut simple = false;
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vhcx_simplicity_certificate(c, w.as_ptr(), true, &mut simple, &mut s) }, VhcxStatus::Ok);
    assert!(simple);
    let json = take(s);
    assert!(json.contains("\"complex\": \"sigma\""));
    assert_eq!(unsafe { vhcx_simplicity_certificate(c, w.as_ptr(), false, &mut simple, &mut s) }, VhcxStatus::Ok);
    assert!(!simple);
    take(s);
    unsafe { vhcx_complex_free(c) };
}

#[test]
fn amalgams() {
    let mut r = VhcxAmalgamRanks::default();
    assert_eq!(unsafe { vhcx_amalgam_ranks(3960, 24, &mut r) }, VhcxStatus::Ok);
    assert_eq!((r.horizontal_cut.vertex_rank, r.horizontal_cut.edge_rank), (47, 364321));
    assert_eq!((r.vertical_cut.vertex_rank, r.vertical_cut.edge_rank), (7919, 380065));
    assert!(r.euler_consistent);
    assert_eq!(unsafe { vhcx_amalgam_ranks(0, 1, &mut r) }, VhcxStatus::InvalidArgument);
}

#[test]
fn null_and_parse_errors() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { vhcx_complex_parse(ptr::null(), &mut c) }, VhcxStatus::NullPointer);
    let text = CString::new("complex x\nhorizontal a1\nvertical b1\nsquare a1 a1 a1 b1\n").unwrap();
    assert_eq!(unsafe { vhcx_complex_parse(text.as_ptr(), &mut c) }, VhcxStatus::ParseError);
    assert!(last_error().contains("line 4"));
    let mut chi = 0;
    assert_eq!(unsafe { vhcx_euler_characteristic(ptr::null(), &mut chi) }, VhcxStatus::NullPointer);
    unsafe {
        vhcx_complex_free(ptr::null_mut());
        vhcx_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/vhcx.h")).unwrap();
    for f in [
        "vhcx_complex_parse",
        "vhcx_complex_free",
        "vhcx_check_link",
        "vhcx_euler_characteristic",
        "vhcx_local_group_order",
        "vhcx_normal_closure_index",
        "vhcx_simplicity_certificate",
        "vhcx_amalgam_ranks",
        "vhcx_string_free",
        "vhcx_last_error",
        "typedef struct VhcxComplex VhcxComplex",
        "VHCX_STATUS_EXHAUSTED = 2",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}

/// Compiles a C program against the header and static library.
#[test]
fn c_program_links() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/abi-<hash>
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libvhcx_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out: PathBuf = std::env::temp_dir().join(format!("vhcx_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).arg(manifest.join("../../corpus/sigma.vh")).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "96/96 95040\n");
}
