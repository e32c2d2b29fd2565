//! Exercise the C ABI from the Rust side: status codes, handle lifecycles
//! and the JSON surface. Calls are unsafe per the library contract; every
//! pointer below is either null on purpose or owned by the test.

use std::ffi::CStr;
use std::ptr;

use g2aw_ffi::*;

#[test]
fn params_lifecycle_and_errors() {
    unsafe {
        let mut p: *mut g2aw_params = ptr::null_mut();
        // zero scale rejected
        let st = g2aw_params_new(1, 2, 0.0, 1.0, 1.0, 1.0, &mut p);
        assert_eq!(st, g2aw_status::G2AW_INVALID_ARGUMENT);
        // degenerate circle rejected
        let st = g2aw_params_new(0, 0, 1.0, 1.0, 1.0, 1.0, &mut p);
        assert_eq!(st, g2aw_status::G2AW_DEGENERATE);
        // null out-pointer rejected
        let st = g2aw_params_new(1, 2, 1.0, 1.0, 1.0, 1.0, ptr::null_mut());
        assert_eq!(st, g2aw_status::G2AW_NULL_POINTER);
        // valid params build and free
        let st = g2aw_params_new(1, 2, 1.0, 1.0, 1.0, 1.0, &mut p);
        assert_eq!(st, g2aw_status::G2AW_OK);
        assert!(!p.is_null());
        g2aw_params_free(p);
        // freeing null is a no-op
        g2aw_params_free(ptr::null_mut());
    }
}

#[test]
fn sigmas_match_published_example() {
    unsafe {
        let mut p: *mut g2aw_params = ptr::null_mut();
        let st = g2aw_params_new(1, 2, 2.82249, 2.29632, 1.79654, 2.49609, &mut p);
        assert_eq!(st, g2aw_status::G2AW_OK);
        let mut sig = [0.0f64; 3];
        assert_eq!(g2aw_sigmas(p, sig.as_mut_ptr()), g2aw_status::G2AW_OK);
        // the inputs are 5-decimal roundings of the solution, which the
        // discriminants magnify by O(1e3)
        assert!((sig[0] + 694.91837).abs() < 5e-2);
        assert!((sig[1] + 357.13002).abs() < 5e-2);
        assert!((sig[2] - 102.96860).abs() < 5e-2);
        let (mut gamma, mut delta) = (0.0f64, 0.0f64);
        assert_eq!(
            g2aw_gamma_delta(p, &mut gamma, &mut delta),
            g2aw_status::G2AW_OK
        );
        assert!(delta != 0.0);
        g2aw_params_free(p);
    }
}

#[test]
fn classify_report_json() {
    unsafe {
        let mut p: *mut g2aw_params = ptr::null_mut();
        g2aw_params_new(1, -1, 0.5, 1.0, 1.0, 1.0, &mut p);
        let mut rep: *mut g2aw_report = ptr::null_mut();
        let st = g2aw_classify(p, 2, 1, &mut rep);
        assert_eq!(st, g2aw_status::G2AW_OK);
        // Delta = 0, Gamma != 0, n != 0 leaves no Abelian instanton here, so
        // the report is exactly the irreducible pair at sigma1 = 1.5 > 0
        assert_eq!(g2aw_report_solution_count(rep), 2);
        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(g2aw_report_json(rep, &mut json), g2aw_status::G2AW_OK);
        let text = CStr::from_ptr(json).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(v["n"], 2);
        g2aw_string_free(json);
        g2aw_report_free(rep);
        g2aw_params_free(p);
    }
}

#[test]
fn weyl_reducible_reported() {
    unsafe {
        let mut p: *mut g2aw_params = ptr::null_mut();
        g2aw_params_new(1, -2, 1.0, 1.0, 1.0, 1.0, &mut p);
        let mut rep: *mut g2aw_report = ptr::null_mut();
        let st = g2aw_classify(p, 0, 1, &mut rep);
        assert_eq!(st, g2aw_status::G2AW_WEYL_REDUCIBLE);
        g2aw_params_free(p);
    }
}

#[test]
fn np_solve_returns_two_branches() {
    unsafe {
        let mut rep: *mut g2aw_report = ptr::null_mut();
        let st = g2aw_np_solve(1, 2, 1.0, 6, &mut rep);
        assert_eq!(st, g2aw_status::G2AW_OK);
        assert_eq!(g2aw_report_solution_count(rep), 2);
        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(g2aw_report_json(rep, &mut json), g2aw_status::G2AW_OK);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("\"branch\""));
        g2aw_string_free(json);
        g2aw_report_free(rep);
    }
}

#[test]
fn abelian_residual_oracle() {
    unsafe {
        let sq5 = 5f64.sqrt();
        let mut p: *mut g2aw_params = ptr::null_mut();
        g2aw_params_new(
            1,
            -1,
            4.0 * (2.0f64 / 5.0).sqrt(),
            (4.0 / 15.0) * (75.0 + 15.0 * sq5).sqrt(),
            (4.0 / 15.0) * (75.0 - 15.0 * sq5).sqrt(),
            -(16.0 / 45.0) * 30f64.sqrt(),
            &mut p,
        );
        let mut r = f64::NAN;
        // b = -n sqrt30/36 zeroes the residual; a perturbed b does not
        let b = -30f64.sqrt() / 36.0;
        assert_eq!(g2aw_abelian_residual(p, 1, b, &mut r), g2aw_status::G2AW_OK);
        assert!(r < 1e-12, "residual at the instanton: {r}");
        assert_eq!(
            g2aw_abelian_residual(p, 1, b + 0.1, &mut r),
            g2aw_status::G2AW_OK
        );
        assert!(r > 1e-3);
        g2aw_params_free(p);
    }
}

#[test]
fn topology_and_squash() {
    unsafe {
        let (mut w2, mut p1, mut modulus) = (0u8, 0i64, 0i64);
        let st = g2aw_char_classes(1, 2, -4, &mut w2, &mut p1, &mut modulus);
        assert_eq!(st, g2aw_status::G2AW_OK);
        assert_eq!((w2, p1, modulus), (0, 2, 7));
        assert_eq!(
            g2aw_char_classes(0, 0, 1, &mut w2, &mut p1, &mut modulus),
            g2aw_status::G2AW_DEGENERATE
        );

        let mut roots = [0.0f64; 4];
        assert_eq!(g2aw_squash_roots(roots.as_mut_ptr()), g2aw_status::G2AW_OK);
        let sq5 = 5f64.sqrt();
        assert!((roots[0] - 1.0 / sq5).abs() < 1e-15);
        assert!((roots[1] - 12.0 / sq5).abs() < 1e-15);

        let name = CStr::from_ptr(g2aw_status_name(g2aw_status::G2AW_OK));
        assert_eq!(name.to_str().unwrap(), "ok");
    }
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/g2aw.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header exists");
    for decl in [
        "g2aw_params_new",
        "g2aw_classify",
        "g2aw_np_solve",
        "g2aw_report_json",
        "g2aw_char_classes",
        "typedef struct g2aw_params g2aw_params;",
        "G2AW_WEYL_REDUCIBLE",
    ] {
        assert!(text.contains(decl), "header lacks {decl}");
    }
}
