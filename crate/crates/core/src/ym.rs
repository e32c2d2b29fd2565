//! Invariant Yang-Mills energy on the connection ansatz.
//!
//! Homogeneity makes the energy density constant, so the functional reduces
//! to E = (1/2) sum_i |F_i|^2 in the structure metric; critical points,
//! Hessian signatures and argmins are scale-invariant statements while raw
//! energy values depend on an overall volume normalization and are never
//! asserted.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::connections::{
    classify_so3, curvature, gamma_delta, instanton_residual, AnsatzCase, ConnectionsError,
    InvariantConnection,
};
use crate::g2::G2Params;

#[derive(Debug, Error, PartialEq)]
pub enum YmError {
    #[error(transparent)]
    Connections(#[from] ConnectionsError),
    #[error(
        "Delta = 0: the Abelian instantons form a family; its energy-critical \
         member sits at b = {critical_b_per_n:.9} * n"
    )]
    DeltaZero {
        /// b/n of the unique Yang-Mills-critical member of the b-family
        critical_b_per_n: f64,
    },
}

/// Addressable coefficients of an invariant connection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoeffSlot {
    B,
    A1,
    A2,
    A3,
    A1Extra,
    A5,
    Alpha,
    Beta,
}

impl CoeffSlot {
    pub fn get(&self, conn: &InvariantConnection) -> f64 {
        match self {
            CoeffSlot::B => conn.b,
            CoeffSlot::A1 => conn.a1,
            CoeffSlot::A2 => conn.a2,
            CoeffSlot::A3 => conn.a3,
            CoeffSlot::A1Extra => conn.a1_extra,
            CoeffSlot::A5 => conn.a5,
            CoeffSlot::Alpha => conn.alpha,
            CoeffSlot::Beta => conn.beta,
        }
    }

    pub fn set(&self, conn: &mut InvariantConnection, value: f64) {
        match self {
            CoeffSlot::B => conn.b = value,
            CoeffSlot::A1 => conn.a1 = value,
            CoeffSlot::A2 => conn.a2 = value,
            CoeffSlot::A3 => conn.a3 = value,
            CoeffSlot::A1Extra => conn.a1_extra = value,
            CoeffSlot::A5 => conn.a5 = value,
            CoeffSlot::Alpha => conn.alpha = value,
            CoeffSlot::Beta => conn.beta = value,
        }
    }
}

/// The a-type slot carrying the weight block of a case (None when every
/// connection is reducible).
pub fn active_slot(case: AnsatzCase) -> Option<CoeffSlot> {
    match case {
        AnsatzCase::Weight1 | AnsatzCase::X11Trivial => Some(CoeffSlot::A1),
        AnsatzCase::Weight2 | AnsatzCase::X11WeightPlus | AnsatzCase::Angled12 => {
            Some(CoeffSlot::A2)
        }
        AnsatzCase::Weight3
        | AnsatzCase::X11WeightMinus
        | AnsatzCase::Angled23
        | AnsatzCase::Angled13 => Some(CoeffSlot::A3),
        AnsatzCase::Reducible | AnsatzCase::X11Reducible => None,
    }
}

/// E = (1/2) sum |F_i|^2 through the assembled curvature.
pub fn ym_energy(p: &G2Params, conn: &InvariantConnection) -> Result<f64, YmError> {
    let f = curvature(conn, p)?;
    let g = p.metric();
    let mut total = 0.0;
    for fi in f.components() {
        total += fi.norm_sq(&g).expect("curvature is basic after the check");
    }
    Ok(0.5 * total)
}

fn eval_shifted(
    p: &G2Params,
    conn: &InvariantConnection,
    slot: CoeffSlot,
    dv: f64,
) -> Result<f64, YmError> {
    let mut c = *conn;
    slot.set(&mut c, slot.get(conn) + dv);
    ym_energy(p, &c)
}

const FD_STEP: f64 = 1e-5;

/// Central difference with one Richardson step; exact for the quartic
/// energy up to roundoff.
fn richardson_d1(
    p: &G2Params,
    conn: &InvariantConnection,
    slot: CoeffSlot,
    h: f64,
) -> Result<f64, YmError> {
    let d = |hh: f64| -> Result<f64, YmError> {
        Ok((eval_shifted(p, conn, slot, hh)? - eval_shifted(p, conn, slot, -hh)?) / (2.0 * hh))
    };
    Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
}

/// Gradient of the energy over the given free coefficients.
pub fn ym_gradient(
    p: &G2Params,
    conn: &InvariantConnection,
    slots: &[CoeffSlot],
) -> Result<Vec<f64>, YmError> {
    slots
        .iter()
        .map(|&s| richardson_d1(p, conn, s, FD_STEP))
        .collect()
}

/// Symmetric Hessian of the energy over the given free coefficients.
pub fn ym_hessian(
    p: &G2Params,
    conn: &InvariantConnection,
    slots: &[CoeffSlot],
) -> Result<Vec<Vec<f64>>, YmError> {
    let n = slots.len();
    let e0 = ym_energy(p, conn)?;
    let mut hess = vec![vec![0.0; n]; n];
    let h = 1e-3; // second differences tolerate a larger step; Richardson
                  // still cancels the quartic's truncation exactly
    for i in 0..n {
        let d2 = |hh: f64| -> Result<f64, YmError> {
            Ok(
                (eval_shifted(p, conn, slots[i], hh)? - 2.0 * e0
                    + eval_shifted(p, conn, slots[i], -hh)?)
                    / (hh * hh),
            )
        };
        hess[i][i] = (4.0 * d2(h / 2.0)? - d2(h)?) / 3.0;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mixed = |hh: f64| -> Result<f64, YmError> {
                let mut pp = *conn;
                slots[i].set(&mut pp, slots[i].get(conn) + hh);
                slots[j].set(&mut pp, slots[j].get(conn) + hh);
                let epp = ym_energy(p, &pp)?;
                let mut pm = *conn;
                slots[i].set(&mut pm, slots[i].get(conn) + hh);
                slots[j].set(&mut pm, slots[j].get(conn) - hh);
                let epm = ym_energy(p, &pm)?;
                let mut mp = *conn;
                slots[i].set(&mut mp, slots[i].get(conn) - hh);
                slots[j].set(&mut mp, slots[j].get(conn) + hh);
                let emp = ym_energy(p, &mp)?;
                let mut mm = *conn;
                slots[i].set(&mut mm, slots[i].get(conn) - hh);
                slots[j].set(&mut mm, slots[j].get(conn) - hh);
                let emm = ym_energy(p, &mm)?;
                Ok((epp - epm - emp + emm) / (4.0 * hh * hh))
            };
            let v = (4.0 * mixed(h / 2.0)? - mixed(h)?) / 3.0;
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    Ok(hess)
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut m: Vec<Vec<f64>> = matrix.to_vec();
    for _ in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m[i][j].abs());
            }
        }
        if off < 1e-14 {
            break;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if m[i][j].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (m[j][j] - m[i][i]) / m[i][j];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mik, mjk) = (m[i][k], m[j][k]);
                    m[i][k] = c * mik - s * mjk;
                    m[j][k] = s * mik + c * mjk;
                }
                for k in 0..n {
                    let (mki, mkj) = (m[k][i], m[k][j]);
                    m[k][i] = c * mki - s * mkj;
                    m[k][j] = s * mki + c * mkj;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// A connection with its energy, derivatives and Morse data.
#[derive(Debug, Clone, Serialize)]
pub struct YmPoint {
    pub conn: InvariantConnection,
    pub energy: f64,
    pub grad: Vec<f64>,
    pub hessian: Vec<Vec<f64>>,
    /// count of negative Hessian eigenvalues over the free coefficients
    pub index: usize,
}

pub fn ym_point(
    p: &G2Params,
    conn: &InvariantConnection,
    slots: &[CoeffSlot],
) -> Result<YmPoint, YmError> {
    let energy = ym_energy(p, conn)?;
    let grad = ym_gradient(p, conn, slots)?;
    let hessian = ym_hessian(p, conn, slots)?;
    let index = symmetric_eigenvalues(&hessian)
        .iter()
        .filter(|&&e| e < -1e-8)
        .count();
    Ok(YmPoint {
        conn: *conn,
        energy,
        grad,
        hessian,
        index,
    })
}

/// Left-hand side of the Abelian Yang-Mills criticality condition
/// A^2B^2(A^2-B^2) l + A^2C^2(C^2-A^2) k + B^2C^2(B^2-C^2) m; zero iff the
/// unique Abelian instanton (Delta != 0) is a Yang-Mills critical point.
pub fn ym_criticality_residual(p: &G2Params) -> Result<f64, YmError> {
    let spec = p.frame();
    let (_, delta) = gamma_delta(p);
    let (a2, b2, c2) = (p.a * p.a, p.b * p.b, p.c * p.c);
    let scale = a2 * b2 * (spec.l as f64).abs()
        + a2 * c2 * (spec.k as f64).abs()
        + b2 * c2 * (spec.m as f64).abs();
    if delta.abs() <= 1e-10 * scale.max(1e-30) {
        return Err(YmError::DeltaZero {
            critical_b_per_n: abelian_ym_critical_b(p, 1),
        });
    }
    Ok(a2 * b2 * (a2 - b2) * spec.l as f64
        + a2 * c2 * (c2 - a2) * spec.k as f64
        + b2 * c2 * (b2 - c2) * spec.m as f64)
}

/// Critical b of the Abelian energy parabola in closed form.
pub fn abelian_ym_critical_b(p: &G2Params, n: i64) -> f64 {
    let spec = p.frame();
    let (kf, lf, mf, s) = (spec.k as f64, spec.l as f64, spec.m as f64, spec.s);
    let (a4, b4, c4) = (p.a.powi(4), p.b.powi(4), p.c.powi(4));
    let num = a4 * b4 * lf * (kf - mf) + a4 * c4 * kf * (mf - lf) + b4 * c4 * mf * (lf - kf);
    let den = a4 * b4 * lf * lf + a4 * c4 * kf * kf + b4 * c4 * mf * mf;
    (n as f64) / (6.0 * 2f64.sqrt() * s) * num / den
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    pub a: f64,
    pub b: f64,
    pub energy: f64,
    pub index: usize,
    pub is_instanton: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LandscapeGrid {
    /// row-major over (a, b): a varies slowest
    pub rows: Vec<(f64, f64, f64)>,
    pub critical_points: Vec<CriticalPoint>,
}

/// Energy grid over a two-coefficient slice of the ansatz, plus the critical
/// points found inside the window (classified instantons and numerically
/// located Yang-Mills minima).
pub fn landscape_grid(
    p: &G2Params,
    n: i64,
    slots: (CoeffSlot, CoeffSlot),
    a_range: (f64, f64),
    b_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<LandscapeGrid, YmError> {
    let (na, nb) = (resolution.0.max(1), resolution.1.max(1));
    let template_case = crate::connections::ansatz(p.k, p.l, n)?.case;
    let base = InvariantConnection::reducible(n, 0.0, template_case);
    let coord = |lo: f64, hi: f64, i: usize, n: usize| {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
        }
    };

    let rows: Vec<(f64, f64, f64)> = (0..na)
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = coord(a_range.0, a_range.1, i, na);
            (0..nb).map(move |j| (i, j, a, coord(b_range.0, b_range.1, j, nb)))
        })
        .map(|(_, _, a, b)| {
            let mut conn = base;
            slots.0.set(&mut conn, a);
            slots.1.set(&mut conn, b);
            let e = ym_energy(p, &conn).expect("grid point energy");
            (a, b, e)
        })
        .collect();

    // critical points: classified instantons inside the window ...
    let slot_pair = [slots.0, slots.1];
    let mut seeds: Vec<[f64; 2]> = Vec::new();
    if let Ok(report) = classify_so3(p, n) {
        for sol in &report.solutions {
            seeds.push([slots.0.get(&sol.conn), slots.1.get(&sol.conn)]);
        }
    }
    // ... plus grid-local minima as starts for the non-instanton ones
    let energy_at = |x: [f64; 2]| -> f64 {
        let mut conn = base;
        slots.0.set(&mut conn, x[0]);
        slots.1.set(&mut conn, x[1]);
        ym_energy(p, &conn).expect("energy")
    };
    if na >= 3 && nb >= 3 {
        for i in 1..(na - 1) {
            for j in 1..(nb - 1) {
                let idx = |ii: usize, jj: usize| ii * nb + jj;
                let e = rows[idx(i, j)].2;
                let mut is_min = true;
                for (di, dj) in [(0usize, 1usize), (2, 1), (1, 0), (1, 2), (0, 0), (0, 2), (2, 0), (2, 2)]
                {
                    let v = rows[idx(i + di - 1, j + dj - 1)].2;
                    if v < e {
                        is_min = false;
                        break;
                    }
                }
                if is_min {
                    seeds.push([rows[idx(i, j)].0, rows[idx(i, j)].1]);
                }
            }
        }
    }

    // polish every seed by damped Newton on the finite-difference gradient
    let mut critical: Vec<CriticalPoint> = Vec::new();
    for seed in seeds {
        let mut x = seed;
        let mut ok = false;
        for _ in 0..80 {
            let mut conn = base;
            slots.0.set(&mut conn, x[0]);
            slots.1.set(&mut conn, x[1]);
            let g = ym_gradient(p, &conn, &slot_pair).expect("gradient");
            let gn = g[0].abs().max(g[1].abs());
            if gn < 1e-10 {
                ok = true;
                break;
            }
            let h = ym_hessian(p, &conn, &slot_pair).expect("hessian");
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            if det.abs() < 1e-12 {
                break;
            }
            let dx = [
                -(h[1][1] * g[0] - h[0][1] * g[1]) / det,
                -(-h[1][0] * g[0] + h[0][0] * g[1]) / det,
            ];
            let e_here = energy_at(x);
            let mut step = 1.0;
            let mut moved = false;
            for _ in 0..30 {
                let cand = [x[0] + step * dx[0], x[1] + step * dx[1]];
                let gc = {
                    let mut cc = base;
                    slots.0.set(&mut cc, cand[0]);
                    slots.1.set(&mut cc, cand[1]);
                    let gg = ym_gradient(p, &cc, &slot_pair).expect("gradient");
                    gg[0].abs().max(gg[1].abs())
                };
                if gc < gn || energy_at(cand) < e_here {
                    x = cand;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if !ok {
            continue;
        }
        if x[0] < a_range.0 - 1e-9
            || x[0] > a_range.1 + 1e-9
            || x[1] < b_range.0 - 1e-9
            || x[1] > b_range.1 + 1e-9
        {
            continue;
        }
        if critical
            .iter()
            .any(|c| (c.a - x[0]).abs() < 1e-6 && (c.b - x[1]).abs() < 1e-6)
        {
            continue;
        }
        let mut conn = base;
        slots.0.set(&mut conn, x[0]);
        slots.1.set(&mut conn, x[1]);
        let point = ym_point(p, &conn, &slot_pair).expect("critical point data");
        let is_instanton = instanton_residual(&conn, p)
            .map(|r| r < 1e-6)
            .unwrap_or(false);
        critical.push(CriticalPoint {
            a: x[0],
            b: x[1],
            energy: point.energy,
            index: point.index,
            is_instanton,
        });
    }
    critical.sort_by(|u, v| (u.a, u.b).partial_cmp(&(v.a, v.b)).unwrap());

    Ok(LandscapeGrid {
        rows,
        critical_points: critical,
    })
}
