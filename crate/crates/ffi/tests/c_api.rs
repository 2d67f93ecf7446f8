use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use deltagroup_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    dg_string_free(p);
    s
}

unsafe fn group(spec: &str) -> *mut DgGroup {
    let mut g = ptr::null_mut();
    assert_eq!(dg_group_build(c(spec).as_ptr(), &mut g), DgStatus::Ok);
    g
}

#[test]
fn group_lifecycle_and_report() {
    unsafe {
        let g = group("D8");
        assert_eq!(dg_group_order(g), 8);
        let mut r = DgDeltaReport::default();
        assert_eq!(dg_group_delta_report(g, &mut r), DgStatus::Ok);
        assert_eq!((r.group_order, r.cyclic_count, r.delta, r.i2), (8, 7, 1, 6));
        assert!(r.bound_ok && r.equality_case);

        let mut h = ptr::null_mut();
        assert_eq!(
            dg_group_from_generators(c("(1,2,3,4) ; (1,3)").as_ptr(), &mut h),
            DgStatus::Ok
        );
        let mut iso = false;
        assert_eq!(dg_group_is_isomorphic(g, h, &mut iso), DgStatus::Ok);
        assert!(iso);

        let q = group("Q8");
        assert_eq!(dg_group_is_isomorphic(g, q, &mut iso), DgStatus::Ok);
        assert!(!iso);

        dg_group_free(g);
        dg_group_free(h);
        dg_group_free(q);
        dg_group_free(ptr::null_mut());
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(dg_group_build(c("Z7").as_ptr(), &mut g), DgStatus::Parse);
        assert!(g.is_null());
        let msg = take_string(dg_last_error_message());
        assert!(!msg.is_empty());

        assert_eq!(dg_group_build(ptr::null(), &mut g), DgStatus::NullPointer);
        assert_eq!(dg_group_build(c("C2").as_ptr(), ptr::null_mut()), DgStatus::NullPointer);

        let bad = [0xffu8, 0];
        assert_eq!(dg_group_build(bad.as_ptr().cast(), &mut g), DgStatus::InvalidUtf8);

        let mut cat = ptr::null_mut();
        assert_eq!(dg_catalog_parse(c("8 1 C8 : (1,2\n").as_ptr(), &mut cat), DgStatus::Parse);
        assert!(take_string(dg_last_error_message()).contains("line 1"));

        assert_eq!(
            dg_catalog_read(c("/nonexistent/catalog.txt").as_ptr(), &mut cat),
            DgStatus::Io
        );
        assert_eq!(dg_group_order(ptr::null()), 0);
    }
}

#[test]
fn census_over_bundled_catalog() {
    unsafe {
        let mut cat = ptr::null_mut();
        assert_eq!(dg_catalog_bundled(&mut cat), DgStatus::Ok);
        assert_eq!(dg_catalog_len(cat), 181);

        let mut census = ptr::null_mut();
        assert_eq!(dg_census_run(cat, 0, &mut census), DgStatus::OutOfRange);
        assert_eq!(dg_census_run(cat, 6, &mut census), DgStatus::Ok);
        let lens: Vec<usize> = (1..=5).map(|d| dg_census_bucket_len(census, d)).collect();
        assert_eq!(lens, vec![4, 4, 3, 11, 3]);
        assert!(dg_census_is_complete(census, 5));
        assert!(!dg_census_is_complete(census, 6));

        let (mut order, mut index) = (0usize, 0usize);
        assert_eq!(dg_census_bucket_id(census, 1, 3, &mut order, &mut index), DgStatus::Ok);
        assert_eq!((order, index), (8, 3));
        assert_eq!(
            dg_census_bucket_id(census, 1, 4, &mut order, &mut index),
            DgStatus::OutOfRange
        );

        let mut violations = usize::MAX;
        assert_eq!(dg_census_violations(census, &mut violations), DgStatus::Ok);
        assert_eq!(violations, 0);

        let mut text = ptr::null_mut();
        assert_eq!(dg_census_report(census, DgFormat::Text, &mut text), DgStatus::Ok);
        assert!(take_string(text).starts_with("Four groups with difference 1\nC3 = [ 3, 1 ]\n"));
        assert_eq!(dg_census_report(census, DgFormat::Structured, &mut text), DgStatus::Ok);
        assert!(take_string(text).contains("\"delta_max\": 6"));

        dg_census_free(census);
        dg_catalog_free(cat);
    }
}

#[test]
fn catalog_validation_counts_diagnostics() {
    unsafe {
        let mut cat = ptr::null_mut();
        let text = c("!complete 4\n4 1 C4 : (1,2,3,4)\n4 2 C4 : (1,3,2,4)\n");
        assert_eq!(dg_catalog_parse(text.as_ptr(), &mut cat), DgStatus::Ok);
        assert_eq!(dg_catalog_len(cat), 2);
        let mut n = 0usize;
        assert_eq!(dg_catalog_validate(cat, &mut n), DgStatus::Ok);
        assert!(n >= 2, "duplicate and missing C2xC2 expected, got {n}");
        assert!(take_string(dg_last_error_message()).contains("isomorphic to [ 4, 1 ]"));
        dg_catalog_free(cat);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/deltagroup.h");
    assert!(std::path::Path::new(header).exists());
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler available; skipping header check");
        return;
    };
    assert!(status.success());
}
