//! C ABI over `vhcx`.
//!
//! Complexes are opaque handles created by [`vhcx_complex_parse`] and
//! released with [`vhcx_complex_free`]. Every fallible call returns a
//! [`VhcxStatus`]; on failure [`vhcx_last_error`] describes what went wrong.
//! Strings handed out by the library must be released with
//! [`vhcx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use vhcx::certificates::{amalgam_ranks, simplicity_certificate, CertOptions};
use vhcx::complex::{Side, SquareComplex};
use vhcx::coset::{normal_closure_index, EnumError, EnumOptions, DEFAULT_COSET_CAP};
use vhcx::fp::presentation_from_complex;
use vhcx::local::local_group;
use vhcx::parse::parse_complex;

/// Opaque handle to a parsed square complex.
pub struct VhcxComplex {
    inner: SquareComplex,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VhcxStatus {
    Ok = 0,
    /// The mathematical check ran and failed.
    MathFail = 1,
    /// A resource cap was hit; the answer is unknown.
    Exhausted = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    ParseError = 5,
    InvalidArgument = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VhcxAmalgam {
    pub vertex_rank: u64,
    pub edge_rank: u64,
    pub edge_index: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VhcxAmalgamRanks {
    pub horizontal_cut: VhcxAmalgam,
    pub vertical_cut: VhcxAmalgam,
    pub euler_characteristic: i64,
    pub euler_consistent: bool,
}

pub const VHCX_SIDE_HORIZONTAL: u32 = 0;
pub const VHCX_SIDE_VERTICAL: u32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: VhcxStatus, msg: impl Into<String>) -> VhcxStatus {
    set_error(msg);
    status
}

/// Clears the error slot, runs `f`, and turns a panic into `Internal`.
fn guard(f: impl FnOnce() -> VhcxStatus) -> VhcxStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(VhcxStatus::Internal, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, VhcxStatus> {
    if p.is_null() {
        return Err(fail(VhcxStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(VhcxStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn complex_arg<'a>(c: *const VhcxComplex) -> Result<&'a SquareComplex, VhcxStatus> {
    c.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| fail(VhcxStatus::NullPointer, "null complex handle"))
}

fn out_string(s: String, out: *mut *mut c_char) -> VhcxStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            VhcxStatus::Ok
        }
        Err(_) => fail(VhcxStatus::Internal, "string contains NUL"),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(VhcxStatus::NullPointer, concat!("null output pointer `", stringify!($p), "`"));
        })+
    };
}

/// Parses `.vh` text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vhcx_complex_parse(text: *const c_char, out: *mut *mut VhcxComplex) -> VhcxStatus {
    guard(|| {
        nonnull!(out);
        let text = tri!(str_arg(text));
        match parse_complex(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(VhcxComplex { inner }));
                VhcxStatus::Ok
            }
            Err(e) => fail(VhcxStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `c` must come from [`vhcx_complex_parse`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vhcx_complex_free(c: *mut VhcxComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Link condition: `*ok` is set, along with the covered and expected
/// corner counts. Returns `MathFail` when the condition fails.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vhcx_check_link(
    c: *const VhcxComplex,
    ok: *mut bool,
    covered: *mut usize,
    expected: *mut usize,
) -> VhcxStatus {
    guard(|| {
        nonnull!(ok, covered, expected);
        let c = tri!(complex_arg(c));
        let r = c.check_link();
        *ok = r.ok;
        *covered = r.covered;
        *expected = r.expected;
        if r.ok {
            VhcxStatus::Ok
        } else {
            fail(VhcxStatus::MathFail, "link condition fails")
        }
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vhcx_euler_characteristic(c: *const VhcxComplex, out: *mut i64) -> VhcxStatus {
    guard(|| {
        nonnull!(out);
        *out = tri!(complex_arg(c)).euler_characteristic();
        VhcxStatus::Ok
    })
}

/// Order of the local group on the `depth`-sphere of the given side's tree,
/// as a decimal string in `*out`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vhcx_local_group_order(
    c: *const VhcxComplex,
    side: u32,
    depth: u32,
    out: *mut *mut c_char,
) -> VhcxStatus {
    guard(|| {
        nonnull!(out);
        let c = tri!(complex_arg(c));
        let side = match side {
            VHCX_SIDE_HORIZONTAL => Side::Horizontal,
            VHCX_SIDE_VERTICAL => Side::Vertical,
            _ => return fail(VhcxStatus::InvalidArgument, "side must be 0 or 1"),
        };
        match local_group(c, side, depth as usize) {
            Ok(g) => out_string(g.order().to_string(), out),
            Err(e) => fail(VhcxStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Index of the normal closure of `word`; `cap = 0` selects the default.
/// Returns `Exhausted` when the enumeration hits the cap.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vhcx_normal_closure_index(
    c: *const VhcxComplex,
    word: *const c_char,
    cap: usize,
    out: *mut usize,
) -> VhcxStatus {
    guard(|| {
        nonnull!(out);
        let c = tri!(complex_arg(c));
        let p = presentation_from_complex(c);
        let w = match p.parse_word(tri!(str_arg(word))) {
            Ok(w) => w,
            Err(e) => return fail(VhcxStatus::InvalidArgument, e.to_string()),
        };
        let cap = if cap == 0 { DEFAULT_COSET_CAP } else { cap };
        match normal_closure_index(&p, &w, EnumOptions::with_cap(cap)) {
            Ok(k) => {
                *out = k;
                VhcxStatus::Ok
            }
            Err(e @ EnumError::Exhausted { .. }) => fail(VhcxStatus::Exhausted, e.to_string()),
            Err(e) => fail(VhcxStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Simplicity certificate for `<<word>>` as JSON in `*json_out`. A
/// certificate is produced even when it stops short of concluding
/// simplicity; `*simple` tells which.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vhcx_simplicity_certificate(
    c: *const VhcxComplex,
    word: *const c_char,
    assume_nrf: bool,
    simple: *mut bool,
    json_out: *mut *mut c_char,
) -> VhcxStatus {
    guard(|| {
        nonnull!(simple, json_out);
        let c = tri!(complex_arg(c));
        let w = match presentation_from_complex(c).parse_word(tri!(str_arg(word))) {
            Ok(w) => w,
            Err(e) => return fail(VhcxStatus::InvalidArgument, e.to_string()),
        };
        let opts = CertOptions {
            assume_nrf,
            ..Default::default()
        };
        match simplicity_certificate(c, &w, opts) {
            Ok(cert) => {
                *simple = cert.is_simple();
                out_string(cert.to_json(), json_out)
            }
            Err(e) => fail(VhcxStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn vhcx_amalgam_ranks(m: u64, n: u64, out: *mut VhcxAmalgamRanks) -> VhcxStatus {
    guard(|| {
        nonnull!(out);
        let r = match amalgam_ranks(m, n) {
            Ok(r) => r,
            Err(e) => return fail(VhcxStatus::InvalidArgument, e.to_string()),
        };
        let conv = |a: vhcx::certificates::Amalgam| VhcxAmalgam {
            vertex_rank: a.vertex_rank,
            edge_rank: a.edge_rank,
            edge_index: a.edge_index,
        };
        *out = VhcxAmalgamRanks {
            horizontal_cut: conv(r.horizontal_cut),
            vertical_cut: conv(r.vertical_cut),
            euler_characteristic: r.euler_characteristic,
            euler_consistent: r.euler_consistent,
        };
        VhcxStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn vhcx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn vhcx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
