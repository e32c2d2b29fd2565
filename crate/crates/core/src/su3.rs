//! The (k,l)-adapted su(3) basis and its structure constants.
//!
//! The basis e1..e7, H is orthonormal for <X,Y> = -tr(XY); sqrt(6) s H
//! generates the embedded circle u(1)_{k,l}, and e1..e7 span its orthogonal
//! complement. Structure constants are obtained by brute-force commutators,
//! c^a_{bc} = <[e_b, e_c], e_a>, and drive the coframe differential
//!
//!   d(w^a) = (1/2) c^a_{bc} w^b ^ w^c.
//!
//! The sign of d is pinned by two checks in the test suite: d(w4) equals
//! -(1/(sqrt(2) s))(m w15 + k w26 + l w37), and the coclosed family of
//! [`crate::g2`] satisfies d(phi) = +lambda psi at its nearly-parallel points.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use thiserror::Error;

use crate::exterior::Mask;

#[derive(Debug, Error, PartialEq)]
pub enum FrameError {
    #[error("degenerate circle subgroup: (k, l) = (0, 0)")]
    DegenerateSubgroup,
}

/// Weights (k, l, m = -k-l) of the circle embedding and the normalization
/// s = sqrt(k^2 + l^2 + m^2) / sqrt(6).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSpec {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub s: f64,
}

impl FrameSpec {
    pub fn new(k: i64, l: i64) -> Result<Self, FrameError> {
        if k == 0 && l == 0 {
            return Err(FrameError::DegenerateSubgroup);
        }
        let m = -k - l;
        let s = (((k * k + l * l + m * m) as f64) / 6.0).sqrt();
        Ok(FrameSpec { k, l, m, s })
    }

    /// Weyl-reduced weight space labels: the U(1)-weights on the three
    /// root planes (w1,w5), (w2,w6), (w3,w7).
    pub fn weights(&self) -> [i64; 3] {
        [self.k - self.l, self.l - self.m, self.m - self.k]
    }
}

pub type Mat3 = [[Complex64; 3]; 3];

fn zero3() -> Mat3 {
    [[Complex64::ZERO; 3]; 3]
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = zero3();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex64::ZERO;
            for t in 0..3 {
                acc += a[i][t] * b[t][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn commutator(a: &Mat3, b: &Mat3) -> Mat3 {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    let mut out = zero3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = ab[i][j] - ba[i][j];
        }
    }
    out
}

/// <X, Y> = -tr(XY); real on anti-Hermitian matrices.
fn pairing(a: &Mat3, b: &Mat3) -> f64 {
    let mut tr = Complex64::ZERO;
    for i in 0..3 {
        for t in 0..3 {
            tr += a[i][t] * b[t][i];
        }
    }
    -tr.re
}

/// The explicit basis matrices e1..e7, H (H stored as element 8).
#[derive(Debug, Clone)]
pub struct Frame {
    pub spec: FrameSpec,
    pub basis: [Mat3; 8],
}

/// Build the (k,l)-adapted orthonormal basis of su(3).
pub fn build_frame(k: i64, l: i64) -> Result<Frame, FrameError> {
    let spec = FrameSpec::new(k, l)?;
    let s = spec.s;
    let i = Complex64::new(0.0, 1.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let isq2 = 1.0 / 2f64.sqrt();

    let mut basis = [zero3(); 8];
    // off-diagonal pairs: real rotation + i * symmetric, per (12), (23), (13) blocks
    basis[0] = [
        [r(0.0), r(isq2), r(0.0)],
        [r(-isq2), r(0.0), r(0.0)],
        [r(0.0), r(0.0), r(0.0)],
    ];
    basis[4] = [
        [r(0.0), i * isq2, r(0.0)],
        [i * isq2, r(0.0), r(0.0)],
        [r(0.0), r(0.0), r(0.0)],
    ];
    basis[1] = [
        [r(0.0), r(0.0), r(0.0)],
        [r(0.0), r(0.0), r(isq2)],
        [r(0.0), r(-isq2), r(0.0)],
    ];
    basis[5] = [
        [r(0.0), r(0.0), r(0.0)],
        [r(0.0), r(0.0), i * isq2],
        [r(0.0), i * isq2, r(0.0)],
    ];
    basis[2] = [
        [r(0.0), r(0.0), r(-isq2)],
        [r(0.0), r(0.0), r(0.0)],
        [r(isq2), r(0.0), r(0.0)],
    ];
    basis[6] = [
        [r(0.0), r(0.0), i * isq2],
        [r(0.0), r(0.0), r(0.0)],
        [i * isq2, r(0.0), r(0.0)],
    ];
    let (kf, lf, mf) = (spec.k as f64, spec.l as f64, spec.m as f64);
    let c4 = 1.0 / (3.0 * 2f64.sqrt() * s);
    basis[3] = [
        [i * ((lf - mf) * c4), r(0.0), r(0.0)],
        [r(0.0), i * ((mf - kf) * c4), r(0.0)],
        [r(0.0), r(0.0), i * ((kf - lf) * c4)],
    ];
    let ch = 1.0 / (6f64.sqrt() * s);
    basis[7] = [
        [i * (kf * ch), r(0.0), r(0.0)],
        [r(0.0), i * (lf * ch), r(0.0)],
        [r(0.0), r(0.0), i * (mf * ch)],
    ];

    let frame = Frame { spec, basis };
    // orthonormality is asserted, not assumed
    for a in 0..8 {
        for b in 0..8 {
            let want = if a == b { 1.0 } else { 0.0 };
            let got = pairing(&frame.basis[a], &frame.basis[b]);
            assert!(
                (got - want).abs() < 1e-12,
                "basis not orthonormal at ({a},{b}): {got}"
            );
        }
    }
    Ok(frame)
}

/// Structure constants c^a_{bc} = <[e_b, e_c], e_a> over indices 1..=8
/// (index 8 is the H-direction), with the precomputed two-form tables
/// d(w^a) = sum_{b<c} c^a_{bc} w^{bc}.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    c: Vec<f64>, // 8 x 8 x 8, index (a-1)*64 + (b-1)*8 + (c-1)
    d_table: [Vec<(Mask, f64)>; 8],
}

impl StructureConstants {
    pub fn c(&self, a: u8, b: u8, c: u8) -> f64 {
        self.c[(a as usize - 1) * 64 + (b as usize - 1) * 8 + (c as usize - 1)]
    }

    /// Sparse coefficients of d(w^a) over canonical 2-form monomials.
    pub fn d_basis(&self, a: u8) -> &[(Mask, f64)] {
        &self.d_table[a as usize - 1]
    }

    /// Max |c^a_{bc} + c^a_{cb}| over all triples.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 1..=8 {
            for b in 1..=8 {
                for c in 1..=8 {
                    worst = worst.max((self.c(a, b, c) + self.c(a, c, b)).abs());
                }
            }
        }
        worst
    }

    /// Max residual of the cyclic bracket identity
    /// `[e_a,[e_b,e_c]] + [e_b,[e_c,e_a]] + [e_c,[e_a,e_b]] = 0`
    /// expressed through the constants.
    pub fn jacobi_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 1..=8u8 {
            for b in 1..=8u8 {
                for c in 1..=8u8 {
                    for e in 1..=8u8 {
                        let mut acc = 0.0;
                        for d in 1..=8u8 {
                            acc += self.c(e, a, d) * self.c(d, b, c)
                                + self.c(e, b, d) * self.c(d, c, a)
                                + self.c(e, c, d) * self.c(d, a, b);
                        }
                        worst = worst.max(acc.abs());
                    }
                }
            }
        }
        worst
    }
}

/// Brute-force structure constants of a frame.
pub fn structure_constants(frame: &Frame) -> StructureConstants {
    let mut c = vec![0.0f64; 512];
    for b in 0..8 {
        for cc in 0..8 {
            let comm = commutator(&frame.basis[b], &frame.basis[cc]);
            for a in 0..8 {
                let v = pairing(&comm, &frame.basis[a]);
                c[a * 64 + b * 8 + cc] = if v.abs() < 1e-14 { 0.0 } else { v };
            }
        }
    }
    let d_table = core::array::from_fn(|a| {
        let mut row = Vec::new();
        for b in 0..8u8 {
            for cc in (b + 1)..8u8 {
                let v = c[a * 64 + (b as usize) * 8 + cc as usize];
                if v != 0.0 {
                    row.push(((1 << b) | (1 << cc), v));
                }
            }
        }
        row
    });
    StructureConstants { c, d_table }
}

/// A frame together with its structure constants, built once per (k, l).
#[derive(Debug, Clone)]
pub struct FrameData {
    pub spec: FrameSpec,
    pub frame: Frame,
    pub constants: StructureConstants,
}

type FrameCache = Mutex<HashMap<(i64, i64), Arc<FrameData>>>;

static CACHE: OnceLock<FrameCache> = OnceLock::new();

/// Cached frame + constants for X_{k,l}. Immutable after construction, so
/// concurrent readers share one Arc.
pub fn frame_data(k: i64, l: i64) -> Result<Arc<FrameData>, FrameError> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(k, l)) {
        return Ok(hit.clone());
    }
    let frame = build_frame(k, l)?;
    let constants = structure_constants(&frame);
    debug_assert!(constants.antisymmetry_residual() < 1e-14);
    debug_assert!(constants.jacobi_residual() < 1e-12);
    let data = Arc::new(FrameData {
        spec: frame.spec,
        frame,
        constants,
    });
    cache.lock().unwrap().insert((k, l), data.clone());
    Ok(data)
}
