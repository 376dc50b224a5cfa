//! Drives the C entry points as a C caller would: handles, out-pointers,
//! status codes, and string ownership.

use fatlines_capi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    fl_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = fl_last_error();
    assert!(!p.is_null(), "expected an error message");
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

#[test]
fn version_is_a_static_string() {
    let p = fl_version();
    assert!(!p.is_null());
    let v = unsafe { CStr::from_ptr(p) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn skew_pair_through_the_c_surface() {
    unsafe {
        let mut cfg: *mut FlConfig = ptr::null_mut();
        let family = CString::new("skew").unwrap();
        let status = fl_config_generate(family.as_ptr(), -1, 0, ptr::null(), &mut cfg);
        assert_eq!(status, FlStatus::FlOk);
        assert!(!cfg.is_null());

        let mut count = 0usize;
        assert_eq!(fl_config_component_count(cfg, &mut count), FlStatus::FlOk);
        assert_eq!(count, 2);

        let (mut a1, mut a2) = (0usize, 0usize);
        assert_eq!(fl_type(cfg, &mut a1, &mut a2), FlStatus::FlOk);
        assert_eq!((a1, a2), (2, 4));

        let mut a = 0usize;
        assert_eq!(fl_alpha(cfg, 1, &mut a), FlStatus::FlOk);
        assert_eq!(a, 2);

        let mut h = 0usize;
        assert_eq!(fl_hilbert(cfg, 1, 0, &mut h), FlStatus::FlOk);
        assert_eq!(h, 1);

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(fl_config_to_json(cfg, &mut json), FlStatus::FlOk);
        let doc = take_string(json);
        assert!(doc.contains("\"label\":\"skew-pair\""));

        let mut verdict: *mut c_char = ptr::null_mut();
        assert_eq!(fl_classify_json(cfg, 0, 0, &mut verdict), FlStatus::FlOk);
        let summary = take_string(verdict);
        assert!(summary.contains("\"acm_verdict\":\"FailsAt(1)\""), "{summary}");
        assert!(summary.contains("\"theorem_consistent\":true"), "{summary}");
        assert!(summary.contains("\"structure\":\"Other\""), "{summary}");

        fl_config_free(cfg);
    }
}

#[test]
fn parse_roundtrip_preserves_the_document() {
    unsafe {
        let mut cfg: *mut FlConfig = ptr::null_mut();
        let family = CString::new("pseudostar").unwrap();
        assert_eq!(
            fl_config_generate(family.as_ptr(), 4, 7, ptr::null(), &mut cfg),
            FlStatus::FlOk
        );
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(fl_config_to_json(cfg, &mut json), FlStatus::FlOk);
        let doc = take_string(json);
        fl_config_free(cfg);

        let text = CString::new(doc.clone()).unwrap();
        let mut back: *mut FlConfig = ptr::null_mut();
        assert_eq!(fl_config_parse(text.as_ptr(), &mut back), FlStatus::FlOk);
        let mut count = 0usize;
        assert_eq!(fl_config_component_count(back, &mut count), FlStatus::FlOk);
        assert_eq!(count, 6);

        let mut again: *mut c_char = ptr::null_mut();
        assert_eq!(fl_config_to_json(back, &mut again), FlStatus::FlOk);
        assert_eq!(take_string(again), doc);
        fl_config_free(back);
    }
}

#[test]
fn failures_set_statuses_and_messages() {
    unsafe {
        let mut cfg: *mut FlConfig = ptr::null_mut();

        let bad = CString::new("not json").unwrap();
        assert_eq!(
            fl_config_parse(bad.as_ptr(), &mut cfg),
            FlStatus::FlInvalidInput
        );
        assert!(last_error().contains("schema"));

        let unknown = CString::new("no-such-family").unwrap();
        assert_eq!(
            fl_config_generate(unknown.as_ptr(), 3, 0, ptr::null(), &mut cfg),
            FlStatus::FlInvalidInput
        );
        assert!(last_error().contains("unknown family"));

        let skew = CString::new("skew").unwrap();
        let badfield = CString::new("GFP:91").unwrap();
        assert_eq!(
            fl_config_generate(skew.as_ptr(), -1, 0, badfield.as_ptr(), &mut cfg),
            FlStatus::FlInvalidInput
        );
        assert!(last_error().contains("not prime"));

        assert_eq!(
            fl_config_parse(ptr::null(), &mut cfg),
            FlStatus::FlNullPointer
        );
        assert_eq!(
            fl_config_generate(skew.as_ptr(), -1, 0, ptr::null(), ptr::null_mut()),
            FlStatus::FlNullPointer
        );

        // m = 0 is rejected before any computation
        assert_eq!(
            fl_config_generate(skew.as_ptr(), -1, 0, ptr::null(), &mut cfg),
            FlStatus::FlOk
        );
        let mut a = 0usize;
        assert_eq!(fl_alpha(cfg, 0, &mut a), FlStatus::FlInvalidInput);

        // classification demands lines, not plane points
        let collinear = CString::new("collinear").unwrap();
        let mut pts: *mut FlConfig = ptr::null_mut();
        assert_eq!(
            fl_config_generate(collinear.as_ptr(), 3, 0, ptr::null(), &mut pts),
            FlStatus::FlOk
        );
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            fl_classify_json(pts, 0, 0, &mut json),
            FlStatus::FlInvalidInput
        );

        fl_config_free(pts);
        fl_config_free(cfg);
        fl_config_free(ptr::null_mut());
        fl_string_free(ptr::null_mut());
    }
}

#[test]
fn header_ships_with_the_crate() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fatlines.h");
    let text = std::fs::read_to_string(header).expect("generated header present");
    for needle in [
        "typedef struct FlConfig FlConfig;",
        "fl_config_generate",
        "fl_classify_json",
        "fl_string_free",
        "FlStatus",
    ] {
        assert!(text.contains(needle), "header is missing {needle}");
    }
}
