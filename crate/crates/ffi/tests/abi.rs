use std::ffi::{c_char, CStr};
use std::ptr;

use grassmann_lab_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { gl_string_free(p) };
    s
}

fn build(q: u64, n: usize, m: usize) -> *mut GlGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gl_graph_build(q, n, m, &mut g) }, GlStatus::Ok);
    g
}

#[test]
fn graph_queries() {
    let g = build(2, 4, 2);
    unsafe {
        let mut v = 0;
        assert_eq!(gl_graph_vertex_count(g, &mut v), GlStatus::Ok);
        assert_eq!(v, 35);
        let mut degree = 0;
        for y in 0..v {
            let mut adj = false;
            assert_eq!(gl_graph_is_adjacent(g, 0, y, &mut adj), GlStatus::Ok);
            let mut d = 9;
            assert_eq!(gl_graph_distance(g, 0, y, &mut d), GlStatus::Ok);
            assert_eq!(adj, d == 1);
            degree += usize::from(adj);
        }
        assert_eq!(degree, 18);
        let mut w = 0;
        assert_eq!(gl_graph_omega(g, &mut w), GlStatus::Ok);
        assert_eq!(w, 7);
        let mut ok = false;
        assert_eq!(gl_graph_verify_lemmas(g, &mut ok), GlStatus::Ok);
        assert!(ok);
        gl_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(gl_graph_build(6, 4, 2, &mut g), GlStatus::InvalidInput);
        assert!(g.is_null());
        assert!(last_error().unwrap().contains('6'));
        assert_eq!(gl_graph_build(2, 12, 6, &mut g), GlStatus::ResourceBound);
        assert_eq!(gl_graph_build(2, 4, 2, ptr::null_mut()), GlStatus::NullPointer);

        let mut v = 0;
        assert_eq!(gl_graph_vertex_count(ptr::null(), &mut v), GlStatus::NullPointer);
        let g = build(2, 4, 2);
        let mut adj = false;
        assert_eq!(gl_graph_is_adjacent(g, 0, 35, &mut adj), GlStatus::InvalidInput);
        assert!(last_error().unwrap().contains("out of range"));
        gl_graph_free(g);
        gl_graph_free(ptr::null_mut());
        gl_string_free(ptr::null_mut());
    }
}

#[test]
fn core_test_verdicts() {
    unsafe {
        let mut verdict = GlVerdict::Undetermined;
        assert_eq!(gl_core_test(5, 2, 2, &mut verdict, ptr::null_mut()), GlStatus::Ok);
        assert_eq!(verdict, GlVerdict::Core);

        let mut json = ptr::null_mut();
        assert_eq!(gl_core_test(4, 2, 2, &mut verdict, &mut json), GlStatus::Ok);
        assert_eq!(verdict, GlVerdict::NotCore);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["verdict"], "not-core");
        assert_eq!(v["omega"], 7);

        assert_eq!(gl_core_test(4, 2, 6, &mut verdict, ptr::null_mut()), GlStatus::InvalidInput);
        assert_eq!(gl_core_test(4, 2, 2, ptr::null_mut(), ptr::null_mut()), GlStatus::NullPointer);
    }
}

#[test]
fn qbinom_json() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(gl_qbinom_json(5, 2, 3, 16, &mut out), GlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["value"], "1210");
        assert_eq!(v["h_at"]["value"], "121/4");
        assert_eq!(v["factorization"], "Phi_4 * Phi_5");
        assert!(v["scan"]["entries"].as_array().unwrap().iter().all(|e| e["integer"] == false));

        assert_eq!(gl_qbinom_json(4, 2, 0, 0, &mut out), GlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert!(v.get("value").is_none() && v.get("scan").is_none());

        assert_eq!(gl_qbinom_json(2, 4, 0, 0, &mut out), GlStatus::InvalidInput);
        assert!(out.is_null());
    }
}

#[test]
fn header_declares_the_abi() {
    let header = include_str!("../include/grassmann_lab.h");
    for name in [
        "typedef struct GlGraph GlGraph",
        "GL_STATUS_OK = 0",
        "GL_STATUS_CHECK_FAILED = 1",
        "GL_STATUS_RESOURCE_BOUND = 2",
        "GL_STATUS_INVALID_INPUT = 3",
        "GL_STATUS_NULL_POINTER = 4",
        "GL_STATUS_INTERNAL = 5",
        "GL_VERDICT_NOT_CORE",
        "gl_graph_build(",
        "gl_graph_free(",
        "gl_graph_vertex_count(",
        "gl_graph_is_adjacent(",
        "gl_graph_distance(",
        "gl_graph_omega(",
        "gl_graph_verify_lemmas(",
        "gl_core_test(",
        "gl_qbinom_json(",
        "gl_string_free(",
        "gl_last_error_message(",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
    assert!(!header.contains("last_error("), "test helper leaked into the header");
}
