use bentkit_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn parse(text: &str, n: usize) -> (BkStatus, *mut BkFunction) {
    let c = CString::new(text).unwrap();
    let mut f = ptr::null_mut();
    let s = unsafe { bk_function_parse(c.as_ptr(), n, 0, &mut f) };
    (s, f)
}

fn take_string(p: *mut libc::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { bk_string_free(p) };
    s
}

fn last_error() -> String {
    let p = bk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn parse_and_inspect() {
    let (s, f) = parse("x1*x3 + x2*x4; x1*x4 + x2*x3 + x2*x4", 0);
    assert_eq!(s, BkStatus::Ok);
    let (mut n, mut m, mut deg) = (0usize, 0usize, 0u32);
    assert_eq!(
        unsafe { bk_function_shape(f, &mut n, &mut m, &mut deg) },
        BkStatus::Ok
    );
    assert_eq!((n, m, deg), (4, 2, 2));
    let mut bent = 0;
    assert_eq!(unsafe { bk_function_is_bent(f, &mut bent) }, BkStatus::Ok);
    assert_eq!(bent, 1);
    let mut nl = 0u32;
    assert_eq!(
        unsafe { bk_function_nonlinearity(f, &mut nl) },
        BkStatus::Ok
    );
    assert_eq!(nl, 6);
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { bk_function_anf(f, 1, &mut a) }, BkStatus::Ok);
    assert_eq!(take_string(a), "x1*x4 + x2*x3 + x2*x4");
    assert_eq!(
        unsafe { bk_function_anf(f, 2, &mut a) },
        BkStatus::Precondition
    );
    unsafe { bk_function_free(f) };
}

#[test]
fn errors_map_to_status_codes() {
    let (s, f) = parse("x1*", 0);
    assert_eq!(s, BkStatus::Parse);
    assert!(f.is_null());
    assert!(last_error().contains("parse"));

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { bk_function_parse(ptr::null(), 0, 0, &mut out) },
        BkStatus::NullArgument
    );
    assert_eq!(
        unsafe { bk_function_catalog(4, 1, &mut out) },
        BkStatus::Precondition
    );

    let (_, g) = parse("x1*x2", 4);
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { bk_design_new(g, BkDesignKind::Addition, &mut d) },
        BkStatus::Precondition
    );
    assert!(last_error().contains("not bent"));
    unsafe { bk_function_free(g) };
    unsafe { bk_function_free(ptr::null_mut()) };
    unsafe { bk_design_free(ptr::null_mut()) };
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes = [0xffu8, b'x', 0];
    let mut f = ptr::null_mut();
    let s = unsafe { bk_function_parse(bytes.as_ptr().cast(), 0, 0, &mut f) };
    assert_eq!(s, BkStatus::Utf8);
}

#[test]
fn catalog_designs_and_invariants() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { bk_function_catalog(1, 1, &mut f) }, BkStatus::Ok);
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { bk_design_new(f, BkDesignKind::Support, &mut d) },
        BkStatus::Ok
    );
    let (mut v, mut b) = (0usize, 0usize);
    assert_eq!(unsafe { bk_design_size(d, &mut v, &mut b) }, BkStatus::Ok);
    assert_eq!((v, b), (64, 64));
    let mut r = 0usize;
    assert_eq!(unsafe { bk_design_gf2_rank(d, &mut r) }, BkStatus::Ok);
    assert_eq!(r, 8);

    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { bk_design_new(f, BkDesignKind::Graph, &mut g) },
        BkStatus::Ok
    );
    let mut snf = ptr::null_mut();
    assert_eq!(unsafe { bk_design_snf(g, &mut snf) }, BkStatus::Ok);
    let snf = take_string(snf);
    assert!(snf.starts_with("1^"), "{snf}");

    let mut iso = -1;
    assert_eq!(
        unsafe { bk_design_isomorphic(d, d, 0, &mut iso) },
        BkStatus::Ok
    );
    assert_eq!(iso, 1);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { bk_design_matrix(d, &mut text) }, BkStatus::Ok);
    assert!(take_string(text).starts_with("64 64\n"));
    unsafe {
        bk_design_free(d);
        bk_design_free(g);
        bk_function_free(f);
    }
}

#[test]
fn ea_equivalence_through_handles() {
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { bk_function_catalog(1, 1, &mut a) }, BkStatus::Ok);
    assert_eq!(unsafe { bk_function_catalog(1, 2, &mut b) }, BkStatus::Ok);
    let (_, c) = parse("x1*x2 + x3*x4 + x5*x6", 6);
    let mut eq = -1;
    assert_eq!(unsafe { bk_ea_equivalent(a, c, 0, &mut eq) }, BkStatus::Ok);
    assert_eq!(eq, 1);
    assert_eq!(unsafe { bk_ea_equivalent(a, b, 0, &mut eq) }, BkStatus::Ok);
    assert_eq!(eq, 0);
    unsafe {
        bk_function_free(a);
        bk_function_free(b);
        bk_function_free(c);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(bk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/bentkit.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "bk_function_parse",
        "bk_design_new",
        "BK_STATUS_RESOURCE_LIMIT",
        "size_t",
    ] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    else {
        eprintln!("no C compiler found; syntax check skipped");
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
