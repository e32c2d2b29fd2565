//! Numerical solution of the nearly-parallel system d(phi) = lambda psi.
//!
//! On the structure family the condition reduces to four polynomial
//! equations in (A, B, C, D):
//!
//!   A^2 + B^2 + C^2 - sqrt(2) lambda A B C                    = 0
//!   D(k A^2 + m B^2) - 4 s A B C + sqrt(2) lambda s A^2 B^2   = 0
//!   D(l B^2 + k C^2) - 4 s A B C + sqrt(2) lambda s B^2 C^2   = 0
//!   D(l A^2 + m C^2) - 4 s A B C + sqrt(2) lambda s A^2 C^2   = 0
//!
//! solved by damped Newton iteration from a multi-start grid. Solutions are
//! deduplicated modulo the Z2 x Z2 sign action and verified coefficient-wise
//! against the full-form identity d(phi) - lambda psi = 0.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::g2::{G2Error, G2Params};
use crate::su3::{frame_data, FrameError, FrameSpec};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error)]
pub enum NpError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Params(#[from] G2Error),
    #[error("expected {expected} nearly-parallel branches on X({k},{l}), found {}", .partial.len())]
    NoConvergence {
        k: i64,
        l: i64,
        expected: usize,
        partial: Vec<NpSolution>,
    },
}

/// Branch label per the sign of D on the canonical representative
/// (C > 0 once lambda > 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NpBranch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Serialize)]
pub struct NpSolution {
    #[serde(flatten)]
    pub params: G2Params,
    pub lambda: f64,
    pub branch: NpBranch,
    /// inf-norm of the four reduced equations
    pub residual: f64,
    /// max coefficient of d(phi) - lambda psi
    pub form_residual: f64,
}

/// The four left-hand sides, in the fixed order above.
pub fn np_residual(p: &G2Params, lambda: f64) -> [f64; 4] {
    let spec = p.frame();
    np_residual_spec(&spec, [p.a, p.b, p.c, p.d], lambda)
}

fn np_residual_spec(spec: &FrameSpec, x: [f64; 4], lambda: f64) -> [f64; 4] {
    let [a, b, c, d] = x;
    let (kf, lf, mf, s) = (spec.k as f64, spec.l as f64, spec.m as f64, spec.s);
    let abc = a * b * c;
    [
        a * a + b * b + c * c - SQRT2 * lambda * abc,
        d * (kf * a * a + mf * b * b) - 4.0 * s * abc + SQRT2 * lambda * s * a * a * b * b,
        d * (lf * b * b + kf * c * c) - 4.0 * s * abc + SQRT2 * lambda * s * b * b * c * c,
        d * (lf * a * a + mf * c * c) - 4.0 * s * abc + SQRT2 * lambda * s * a * a * c * c,
    ]
}

fn np_jacobian(spec: &FrameSpec, x: [f64; 4], lambda: f64) -> [[f64; 4]; 4] {
    let [a, b, c, d] = x;
    let (kf, lf, mf, s) = (spec.k as f64, spec.l as f64, spec.m as f64, spec.s);
    let t = SQRT2 * lambda;
    [
        [
            2.0 * a - t * b * c,
            2.0 * b - t * a * c,
            2.0 * c - t * a * b,
            0.0,
        ],
        [
            2.0 * kf * a * d - 4.0 * s * b * c + 2.0 * t * s * a * b * b,
            2.0 * mf * b * d - 4.0 * s * a * c + 2.0 * t * s * a * a * b,
            -4.0 * s * a * b,
            kf * a * a + mf * b * b,
        ],
        [
            -4.0 * s * b * c,
            2.0 * lf * b * d - 4.0 * s * a * c + 2.0 * t * s * b * c * c,
            2.0 * kf * c * d - 4.0 * s * a * b + 2.0 * t * s * b * b * c,
            lf * b * b + kf * c * c,
        ],
        [
            2.0 * lf * a * d - 4.0 * s * b * c + 2.0 * t * s * a * c * c,
            -4.0 * s * a * c,
            2.0 * mf * c * d - 4.0 * s * a * b + 2.0 * t * s * a * a * c,
            lf * a * a + mf * c * c,
        ],
    ]
}

fn inf_norm(v: &[f64; 4]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

#[allow(clippy::needless_range_loop)]
fn solve_linear_4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let mut pivot = col;
        for row in (col + 1)..4 {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in (col + 1)..4 {
            let f = m[row][col] / m[col][col];
            for c2 in col..4 {
                m[row][c2] -= f * m[col][c2];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for c2 in (row + 1)..4 {
            acc -= m[row][c2] * x[c2];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Damped Newton from one start; None unless the residual reaches 1e-13.
fn newton(spec: &FrameSpec, start: [f64; 4], lambda: f64) -> Option<[f64; 4]> {
    let mut x = start;
    let mut r = np_residual_spec(spec, x, lambda);
    for _ in 0..100 {
        let rn = inf_norm(&r);
        if rn < 1e-13 {
            return Some(x);
        }
        let j = np_jacobian(spec, x, lambda);
        let neg = [-r[0], -r[1], -r[2], -r[3]];
        let mut dx = solve_linear_4(j, neg)?;
        // halve the step until the residual stops increasing
        let mut accepted = false;
        for _ in 0..40 {
            let cand = [x[0] + dx[0], x[1] + dx[1], x[2] + dx[2], x[3] + dx[3]];
            let rc = np_residual_spec(spec, cand, lambda);
            if inf_norm(&rc) < rn {
                x = cand;
                r = rc;
                accepted = true;
                break;
            }
            for d in dx.iter_mut() {
                *d *= 0.5;
            }
        }
        if !accepted || inf_norm(&x) > 1e3 {
            return None;
        }
    }
    None
}

/// Range of (k, l) for which exactly two inequivalent branches are expected.
pub fn two_branch_guard(spec: &FrameSpec) -> bool {
    let (k, l, m) = (spec.k, spec.l, spec.m);
    k != l && k != -l && l != m && l != -m && m != k && m != -k
}

/// Solve the nearly-parallel system by multi-start Newton iteration.
///
/// Starts run over a `grid_per_axis`-point magnitude grid in [0.2, 4] per
/// axis, with both sign patterns of C and D (A, B start positive since the
/// sign action makes them canonical). Solutions are canonicalized,
/// deduplicated at 1e-6, verified against the full-form identity, and sorted
/// by canonical coordinates.
pub fn solve_np(
    k: i64,
    l: i64,
    lambda: f64,
    grid_per_axis: usize,
) -> Result<Vec<NpSolution>, NpError> {
    let data = frame_data(k, l)?;
    let spec = data.spec;
    let n = grid_per_axis.max(2);
    let axis: Vec<f64> = (0..n)
        .map(|i| 0.2 + (4.0 - 0.2) * (i as f64) / ((n - 1) as f64))
        .collect();

    let mut starts = Vec::with_capacity(n * n * n * n * 4);
    for &a in &axis {
        for &b in &axis {
            for &c in &axis {
                for &d in &axis {
                    for (sc, sd) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        starts.push([a, b, sc * c, sd * d]);
                    }
                }
            }
        }
    }

    let mut found: Vec<[f64; 4]> = starts
        .par_iter()
        .filter_map(|&x0| newton(&spec, x0, lambda))
        .filter(|x| {
            let prod = x[0] * x[1] * x[2] * x[3];
            prod.abs() > 1e-3 && x.iter().all(|v| v.is_finite())
        })
        .collect();

    // canonicalize and deduplicate
    for x in found.iter_mut() {
        let p = G2Params::new(k, l, x[0], x[1], x[2], x[3])
            .expect("nonzero scales")
            .canonicalize();
        *x = [p.a, p.b, p.c, p.d];
    }
    found.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let mut unique: Vec<[f64; 4]> = Vec::new();
    for x in found {
        if !unique
            .iter()
            .any(|u| (0..4).all(|i| (u[i] - x[i]).abs() < 1e-6))
        {
            unique.push(x);
        }
    }

    let mut solutions = Vec::new();
    for x in unique {
        let params = G2Params::new(k, l, x[0], x[1], x[2], x[3])?;
        let residual = inf_norm(&np_residual(&params, lambda));
        let dphi = params.phi().d(&data.constants);
        let form_residual = dphi.add_scaled(&params.psi(), -lambda).max_abs_coeff();
        if form_residual > 1e-9 {
            // a root of the reduced system that fails the full identity
            // would signal a conventions bug; never report one silently
            continue;
        }
        let branch = if params.d > 0.0 {
            NpBranch::Plus
        } else {
            NpBranch::Minus
        };
        solutions.push(NpSolution {
            params,
            lambda,
            branch,
            residual,
            form_residual,
        });
    }

    if two_branch_guard(&spec) && solutions.len() < 2 {
        return Err(NpError::NoConvergence {
            k,
            l,
            expected: 2,
            partial: solutions,
        });
    }
    Ok(solutions)
}

/// Roots (t, lambda) of the squashed tri-Sasakian conditions
/// lambda = 12 t and t^2 + 1 = lambda t / 2.
pub fn squash_np() -> [(f64, f64); 2] {
    // substituting lambda = 12t gives 5 t^2 = 1
    let t = 1.0 / 5f64.sqrt();
    [(t, 12.0 * t), (-t, -12.0 * t)]
}

/// The two nearly-parallel points of the family on X_{1,1}, normalized to
/// lambda = 1: both have C^2 = B^2 and D^2 = A^2.
///
/// * tri-Sasakian: A^2 = 2 B^2 with ABCD > 0;
/// * strictly nearly parallel: A^2 = 2 B^2 / 5 with ABCD < 0,
///
/// with overall scale fixed by A^2 + B^2 + C^2 = sqrt(2) A B C.
pub fn x11_np_solutions() -> Vec<G2Params> {
    let ts = {
        let a = 2.0 * SQRT2;
        G2Params::new(1, 1, a, 2.0, 2.0, a).expect("valid")
    };
    let snp = {
        let b = 6.0 / 5f64.sqrt();
        let a = b * (2.0f64 / 5.0).sqrt();
        G2Params::new(1, 1, a, b, b, -a).expect("valid")
    };
    vec![ts, snp]
}

/// Canonical parameters of the nearly-parallel structure on X_{1,-1}
/// (the lambda = 1 representative with A, B > 0):
/// A = 4 sqrt(2/5), B = (4/15) sqrt(75 + 15 sqrt5),
/// C = (4/15) sqrt(75 - 15 sqrt5), D = -(16/45) sqrt30.
pub fn x1m1_np_params() -> G2Params {
    let sq5 = 5f64.sqrt();
    G2Params::new(
        1,
        -1,
        4.0 * (2.0f64 / 5.0).sqrt(),
        (4.0 / 15.0) * (75.0 + 15.0 * sq5).sqrt(),
        (4.0 / 15.0) * (75.0 - 15.0 * sq5).sqrt(),
        -(16.0 / 45.0) * 30f64.sqrt(),
    )
    .expect("valid")
}
