//! C ABI over the g2aw library.
//!
//! Handles are opaque pointers owned by the library; every constructor has a
//! matching `_free`, every fallible call returns a `g2aw_status` code and
//! writes results through out-pointers. Structured results (classification
//! reports, nearly-parallel solutions) are exposed as JSON strings released
//! with [`g2aw_string_free`]. No call unwinds across the boundary.
//!
//! Safety: every function that accepts a pointer requires it to be either
//! null or a live pointer previously produced by this library (handles) or
//! valid writable storage of the documented length (out-parameters).

#![allow(non_camel_case_types)]
// the safety contract above applies uniformly to every export
#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use g2aw::connections::{classify_abelian, classify_so3, instanton_residual, ConnectionsError};
use g2aw::g2::G2Params;
use g2aw::np::{solve_np, squash_np, NpError};
use g2aw::topology::char_classes;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum g2aw_status {
    G2AW_OK = 0,
    /// invalid numeric argument (zero scale, bad range)
    G2AW_INVALID_ARGUMENT = 1,
    /// degenerate space (k, l) = (0, 0)
    G2AW_DEGENERATE = 2,
    /// (k, l) must be Weyl-rotated before classification
    G2AW_WEYL_REDUCIBLE = 3,
    /// the multistart solver found fewer branches than expected
    G2AW_NO_CONVERGENCE = 4,
    /// curvature failed the basic-form check
    G2AW_NON_BASIC = 5,
    G2AW_NULL_POINTER = 6,
    /// internal panic caught at the boundary
    G2AW_INTERNAL = 7,
}

/// Opaque handle to a structure point (k, l, A, B, C, D).
#[repr(C)]
pub struct g2aw_params {
    _opaque: [u8; 0],
}

/// Opaque handle to a classification or solver result.
#[repr(C)]
pub struct g2aw_report {
    _opaque: [u8; 0],
}

enum ReportInner {
    Classification(g2aw::connections::ClassificationReport),
    NpSolutions(Vec<g2aw::np::NpSolution>),
}

fn params_from_handle<'a>(p: *const g2aw_params) -> Option<&'a G2Params> {
    unsafe { (p as *const G2Params).as_ref() }
}

fn report_from_handle<'a>(r: *const g2aw_report) -> Option<&'a ReportInner> {
    unsafe { (r as *const ReportInner).as_ref() }
}

fn map_conn_err(e: &ConnectionsError) -> g2aw_status {
    match e {
        ConnectionsError::WeylReducible { .. } => g2aw_status::G2AW_WEYL_REDUCIBLE,
        ConnectionsError::NonBasicCurvature(_) => g2aw_status::G2AW_NON_BASIC,
        ConnectionsError::Frame(_) => g2aw_status::G2AW_DEGENERATE,
        _ => g2aw_status::G2AW_INVALID_ARGUMENT,
    }
}

fn guarded(body: impl FnOnce() -> g2aw_status) -> g2aw_status {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(g2aw_status::G2AW_INTERNAL)
}

/// Build a structure handle. On success writes an owned pointer to `out`;
/// release it with [`g2aw_params_free`].
#[no_mangle]
pub unsafe extern "C" fn g2aw_params_new(
    k: i64,
    l: i64,
    big_a: f64,
    big_b: f64,
    big_c: f64,
    big_d: f64,
    out: *mut *mut g2aw_params,
) -> g2aw_status {
    guarded(|| {
        if out.is_null() {
            return g2aw_status::G2AW_NULL_POINTER;
        }
        match G2Params::new(k, l, big_a, big_b, big_c, big_d) {
            Ok(p) => {
                let boxed = Box::new(p);
                unsafe { *out = Box::into_raw(boxed) as *mut g2aw_params };
                g2aw_status::G2AW_OK
            }
            Err(g2aw::g2::G2Error::Frame(_)) => g2aw_status::G2AW_DEGENERATE,
            Err(_) => g2aw_status::G2AW_INVALID_ARGUMENT,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn g2aw_params_free(p: *mut g2aw_params) {
    if !p.is_null() {
        unsafe { drop(Box::from_raw(p as *mut G2Params)) };
    }
}

/// Gamma and Delta of the Abelian classification.
#[no_mangle]
pub unsafe extern "C" fn g2aw_gamma_delta(
    p: *const g2aw_params,
    gamma: *mut f64,
    delta: *mut f64,
) -> g2aw_status {
    guarded(|| {
        let (Some(p), false, false) = (params_from_handle(p), gamma.is_null(), delta.is_null())
        else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        let (g, d) = g2aw::connections::gamma_delta(p);
        unsafe {
            *gamma = g;
            *delta = d;
        }
        g2aw_status::G2AW_OK
    })
}

/// The three existence discriminants, written to `out[0..3]`.
#[no_mangle]
pub unsafe extern "C" fn g2aw_sigmas(p: *const g2aw_params, out: *mut f64) -> g2aw_status {
    guarded(|| {
        let (Some(p), false) = (params_from_handle(p), out.is_null()) else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        let (s1, s2, s3) = g2aw::connections::sigmas(p);
        unsafe {
            *out.add(0) = s1;
            *out.add(1) = s2;
            *out.add(2) = s3;
        }
        g2aw_status::G2AW_OK
    })
}

/// Scalar torsion of the structure (closed form).
#[no_mangle]
pub unsafe extern "C" fn g2aw_tau0(p: *const g2aw_params, out: *mut f64) -> g2aw_status {
    guarded(|| {
        let (Some(p), false) = (params_from_handle(p), out.is_null()) else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        match p.tau0() {
            Ok(t) => {
                unsafe { *out = t.value() };
                g2aw_status::G2AW_OK
            }
            Err(_) => g2aw_status::G2AW_INVALID_ARGUMENT,
        }
    })
}

/// The four nearly-parallel equation residuals at the given lambda,
/// written to `out[0..4]`.
#[no_mangle]
pub unsafe extern "C" fn g2aw_np_residual(
    p: *const g2aw_params,
    lambda: f64,
    out: *mut f64,
) -> g2aw_status {
    guarded(|| {
        let (Some(p), false) = (params_from_handle(p), out.is_null()) else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        let r = g2aw::np::np_residual(p, lambda);
        for (i, v) in r.into_iter().enumerate() {
            unsafe { *out.add(i) = v };
        }
        g2aw_status::G2AW_OK
    })
}

/// Classify invariant instantons on the degree-n bundle. `gauge_so3` of 0
/// restricts to the Abelian (reducible) classification. On success writes a
/// report handle; release it with [`g2aw_report_free`].
#[no_mangle]
pub unsafe extern "C" fn g2aw_classify(
    p: *const g2aw_params,
    n: i64,
    gauge_so3: i32,
    out: *mut *mut g2aw_report,
) -> g2aw_status {
    guarded(|| {
        let (Some(p), false) = (params_from_handle(p), out.is_null()) else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        let report = if gauge_so3 != 0 {
            classify_so3(p, n)
        } else {
            classify_abelian(p, n)
        };
        match report {
            Ok(r) => {
                let boxed = Box::new(ReportInner::Classification(r));
                unsafe { *out = Box::into_raw(boxed) as *mut g2aw_report };
                g2aw_status::G2AW_OK
            }
            Err(e) => map_conn_err(&e),
        }
    })
}

/// Solve the nearly-parallel system on X_{k,l}; `starts` is the multistart
/// grid density per axis (8 is the default used by the CLI).
#[no_mangle]
pub unsafe extern "C" fn g2aw_np_solve(
    k: i64,
    l: i64,
    lambda: f64,
    starts: usize,
    out: *mut *mut g2aw_report,
) -> g2aw_status {
    guarded(|| {
        if out.is_null() {
            return g2aw_status::G2AW_NULL_POINTER;
        }
        match solve_np(k, l, lambda, starts) {
            Ok(sols) => {
                let boxed = Box::new(ReportInner::NpSolutions(sols));
                unsafe { *out = Box::into_raw(boxed) as *mut g2aw_report };
                g2aw_status::G2AW_OK
            }
            Err(NpError::NoConvergence { .. }) => g2aw_status::G2AW_NO_CONVERGENCE,
            Err(NpError::Frame(_)) => g2aw_status::G2AW_DEGENERATE,
            Err(_) => g2aw_status::G2AW_INVALID_ARGUMENT,
        }
    })
}

/// Number of solutions held by a report.
#[no_mangle]
pub unsafe extern "C" fn g2aw_report_solution_count(r: *const g2aw_report) -> usize {
    match report_from_handle(r) {
        Some(ReportInner::Classification(c)) => c.solutions.len(),
        Some(ReportInner::NpSolutions(s)) => s.len(),
        None => 0,
    }
}

/// Serialize a report to JSON. The returned string is owned by the caller
/// and must be released with [`g2aw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn g2aw_report_json(
    r: *const g2aw_report,
    out: *mut *mut c_char,
) -> g2aw_status {
    guarded(|| {
        let (Some(r), false) = (report_from_handle(r), out.is_null()) else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        let json = match r {
            ReportInner::Classification(c) => serde_json::to_string(c),
            ReportInner::NpSolutions(s) => serde_json::to_string(s),
        };
        match json.ok().and_then(|s| CString::new(s).ok()) {
            Some(cs) => {
                unsafe { *out = cs.into_raw() };
                g2aw_status::G2AW_OK
            }
            None => g2aw_status::G2AW_INTERNAL,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn g2aw_report_free(r: *mut g2aw_report) {
    if !r.is_null() {
        unsafe { drop(Box::from_raw(r as *mut ReportInner)) };
    }
}

#[no_mangle]
pub unsafe extern "C" fn g2aw_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// Residual |F ^ psi| of the Abelian connection with coefficient b on the
/// degree-n bundle — the oracle behind every classified coefficient.
#[no_mangle]
pub unsafe extern "C" fn g2aw_abelian_residual(
    p: *const g2aw_params,
    n: i64,
    b: f64,
    out: *mut f64,
) -> g2aw_status {
    guarded(|| {
        let (Some(p), false) = (params_from_handle(p), out.is_null()) else {
            return g2aw_status::G2AW_NULL_POINTER;
        };
        let case = match g2aw::connections::ansatz(p.k, p.l, n) {
            Ok(t) => t.case,
            Err(e) => return map_conn_err(&e),
        };
        let conn = g2aw::connections::InvariantConnection::reducible(n, b, case);
        match instanton_residual(&conn, p) {
            Ok(r) => {
                unsafe { *out = r };
                g2aw_status::G2AW_OK
            }
            Err(e) => map_conn_err(&e),
        }
    })
}

/// Characteristic classes of the homogeneous SO(3)-bundle of degree n:
/// w2 in Z_2 and p1 in Z_{k^2+kl+l^2}.
#[no_mangle]
pub unsafe extern "C" fn g2aw_char_classes(
    k: i64,
    l: i64,
    n: i64,
    w2: *mut u8,
    p1: *mut i64,
    modulus: *mut i64,
) -> g2aw_status {
    guarded(|| {
        if w2.is_null() || p1.is_null() || modulus.is_null() {
            return g2aw_status::G2AW_NULL_POINTER;
        }
        match char_classes(k, l, n) {
            Ok(c) => {
                unsafe {
                    *w2 = c.w2;
                    *p1 = c.p1;
                    *modulus = c.modulus;
                }
                g2aw_status::G2AW_OK
            }
            Err(_) => g2aw_status::G2AW_DEGENERATE,
        }
    })
}

/// The two squashed nearly-parallel roots, written as
/// (t1, lambda1, t2, lambda2) to `out[0..4]`.
#[no_mangle]
pub unsafe extern "C" fn g2aw_squash_roots(out: *mut f64) -> g2aw_status {
    guarded(|| {
        if out.is_null() {
            return g2aw_status::G2AW_NULL_POINTER;
        }
        let roots = squash_np();
        unsafe {
            *out.add(0) = roots[0].0;
            *out.add(1) = roots[0].1;
            *out.add(2) = roots[1].0;
            *out.add(3) = roots[1].1;
        }
        g2aw_status::G2AW_OK
    })
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn g2aw_status_name(status: g2aw_status) -> *const c_char {
    let name: &'static [u8] = match status {
        g2aw_status::G2AW_OK => b"ok\0",
        g2aw_status::G2AW_INVALID_ARGUMENT => b"invalid argument\0",
        g2aw_status::G2AW_DEGENERATE => b"degenerate (k, l)\0",
        g2aw_status::G2AW_WEYL_REDUCIBLE => b"needs a Weyl rotation\0",
        g2aw_status::G2AW_NO_CONVERGENCE => b"solver did not converge\0",
        g2aw_status::G2AW_NON_BASIC => b"curvature not basic\0",
        g2aw_status::G2AW_NULL_POINTER => b"null pointer\0",
        g2aw_status::G2AW_INTERNAL => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}
