//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance is pinned here; nothing is deferred to later calibration.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use g2aw::connections::{
    ansatz, bisect_sigma_zero, classify_abelian, classify_so3, deformation_det, gamma_delta,
    instanton_residual, sigmas, sweep, AnsatzCase, Axis, InvariantConnection,
};
use g2aw::exterior::Form;
use g2aw::g2::{psi_hodge_gap, G2Params};
use g2aw::np::{np_residual, solve_np, squash_np, x11_np_solutions, x1m1_np_params, NpBranch};
use g2aw::su3::frame_data;
use g2aw::topology::{char_classes, weight_bundle_classes, weight_bundle_classes_closed_form};
use g2aw::verify::{run_verify, VerifyStatus};
use g2aw::ym::{
    active_slot, landscape_grid, ym_criticality_residual, ym_gradient, ym_hessian, CoeffSlot,
};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn random_params(rng: &mut StdRng, k: i64, l: i64) -> G2Params {
    let mut draw = |signed: bool| {
        let v: f64 = rng.gen_range(0.4..2.2);
        if signed && rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    };
    let (a, b) = (draw(false), draw(false));
    let (c, d) = (draw(true), draw(true));
    G2Params::new(k, l, a, b, c, d).unwrap()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {}  [{detail}]",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_structure_equations() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for (k, l) in [(1i64, 1i64), (1, -1), (1, 2), (2, 3)] {
        let data = frame_data(k, l).unwrap();
        worst = worst.max(data.constants.jacobi_residual());
        for a in 1..=8u8 {
            worst = worst.max(
                Form::basis_one_form(a)
                    .d(&data.constants)
                    .d(&data.constants)
                    .max_abs_coeff(),
            );
        }
        for _ in 0..25 {
            let p = random_params(&mut rng, k, l);
            worst = worst.max(psi_hodge_gap(&p).unwrap());
            worst = worst.max(p.psi().d(&data.constants).max_abs_coeff());
            worst = worst.max(p.phi().d(&data.constants).d(&data.constants).max_abs_coeff());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "1",
        worst < 1e-12 && elapsed < 5.0,
        &format!("max structure residual {worst:.2e} over 100 random structures in {elapsed:.2}s"),
    );
}

#[test]
fn criterion_2_nearly_parallel_reproduction() {
    let start = Instant::now();
    struct Expect {
        k: i64,
        l: i64,
        plus: [f64; 4],
        sig_plus: [f64; 3],
        minus: [f64; 4],
        sig_minus: [f64; 3],
    }
    let table = [
        Expect {
            k: 1,
            l: 2,
            plus: [2.82249, 2.29632, 1.79654, 2.49609],
            sig_plus: [-694.91837, -357.13002, 102.96860],
            minus: [1.69915, 2.63936, 2.72083, -1.72713],
            sig_minus: [257.21323, -623.28938, -676.14197],
        },
        Expect {
            k: 1,
            l: 3,
            plus: [2.81314, 2.38489, 1.76003, 2.30416],
            sig_plus: [-1304.73725, -794.17740, 286.31370],
            minus: [1.70181, 2.61482, 2.73734, -1.76385],
            sig_minus: [468.21163, -1124.80823, -1272.28946],
        },
        Expect {
            k: 2,
            l: 3,
            plus: [2.82707, 2.19724, 1.84821, 2.66829],
            sig_plus: [-1857.93578, -753.70309, 107.33579],
            minus: [1.69781, 2.65772, 2.70655, -1.70795],
            sig_minus: [705.20889, -1726.54024, -1812.54120],
        },
        Expect {
            k: 2,
            l: 11,
            plus: [2.80000, 2.45576, 1.73649, 2.13220],
            sig_plus: [-14809.57254, -10158.19056, 4009.81206],
            minus: [1.70630, 2.58424, 2.75458, -1.82250],
            sig_minus: [5116.36820, -12243.99444, -14559.71627],
        },
    ];
    let mut worst = 0.0f64;
    for e in &table {
        let sols = solve_np(e.k, e.l, 1.0, 8).unwrap();
        let plus = sols.iter().find(|s| s.branch == NpBranch::Plus).unwrap();
        let minus = sols.iter().find(|s| s.branch == NpBranch::Minus).unwrap();
        for (sol, coords, sigs) in [
            (plus, e.plus, e.sig_plus),
            (minus, e.minus, e.sig_minus),
        ] {
            let got = [sol.params.a, sol.params.b, sol.params.c, sol.params.d];
            for i in 0..4 {
                worst = worst.max((got[i] - coords[i]).abs());
            }
            let (s1, s2, s3) = sigmas(&sol.params);
            for (i, s) in [s1, s2, s3].into_iter().enumerate() {
                worst = worst.max((s - sigs[i]).abs());
            }
        }
    }
    // example on X(1,4): the printed phi-minus row is not a solution and is
    // carried as a flagged record, never silently asserted
    let flagged = run_verify(Some("example7.phi_minus.printed_row"));
    let ok_flag = flagged.len() == 1 && flagged[0].status == VerifyStatus::Flagged;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "2",
        worst < 1e-3 && ok_flag && elapsed < 30.0,
        &format!(
            "published values of four spaces reproduced to {worst:.2e} (tol 1e-3), \
             non-solution row flagged, in {elapsed:.2}s"
        ),
    );
}

#[test]
fn criterion_3_x1m1_closed_forms() {
    let p = x1m1_np_params();
    // solver matches the radicals to 1e-12 after canonicalization
    let sols = solve_np(1, -1, 1.0, 8).unwrap();
    let best = sols
        .iter()
        .map(|s| {
            (s.params.a - p.a)
                .abs()
                .max((s.params.b - p.b).abs())
                .max((s.params.c - p.c).abs())
                .max((s.params.d - p.d).abs())
        })
        .fold(f64::INFINITY, f64::min);

    // the existence discriminant on the bundle of degree k - l = 2: the
    // analysis prints -14336/225, but evaluating it with the solution value
    // of D gives -17408/225, confirmed by the assembled-curvature equations;
    // the print is carried as a flagged record
    let (s1, _, _) = sigmas(&p);
    let sigma_ok = (s1 - (-17408.0 / 225.0)).abs() < 1e-9;
    let flagged = run_verify(Some("x1m1.p2.sigma1_printed"));
    let sigma_flagged = flagged.len() == 1 && flagged[0].status == VerifyStatus::Flagged;

    // Abelian coefficient: the residual oracle fixes b = -n sqrt30/36 in the
    // canonical ansatz (the printed +n sqrt30/36 belongs to the opposite-sign
    // h parameterization and is flagged); magnitude matches the print
    let mut b_ok = true;
    let mut worst_res = 0.0f64;
    for n in [-2i64, 1, 3] {
        let rep = classify_abelian(&p, n).unwrap();
        let b = rep.solutions[0].conn.b;
        b_ok &= (b + (n as f64) * 30f64.sqrt() / 36.0).abs() < 1e-12;
        worst_res = worst_res.max(rep.solutions[0].residual);
    }

    // irreducible pair on P_-1: radicals pass the curvature oracle
    let rep = classify_so3(&p, -1).unwrap();
    let sq5 = 5f64.sqrt();
    let a_want = (12.0 * sq5 - 21.0).sqrt() / 6.0;
    let b_want = -(6f64.sqrt() / 36.0) * (45.0 - 7.0 * sq5) / (5.0 + sq5);
    let irr: Vec<_> = rep.solutions.iter().filter(|s| !s.reducible).collect();
    let mut irr_ok = irr.len() == 2;
    for s in &irr {
        irr_ok &= (s.conn.a3.abs() - a_want).abs() < 1e-12;
        irr_ok &= (s.conn.b - b_want).abs() < 1e-12;
        worst_res = worst_res.max(s.residual);
    }
    report(
        "3",
        best < 1e-12 && sigma_ok && sigma_flagged && b_ok && irr_ok && worst_res < 1e-9,
        &format!(
            "radicals to {best:.2e}; sigma1(P_2) = -17408/225 (printed -14336/225 flagged); \
             b = -n sqrt30/36 and the irreducible (a3, b) radicals at residual {worst_res:.2e}"
        ),
    );
}

/// Exact quadratic model of the instanton residual over two coefficients.
///
/// Each coefficient of F ^ psi is a quadratic polynomial in the free pair
/// (x, y); six evaluations of the assembled-curvature residual determine it
/// exactly, which a random cross-check certifies. The grid scan then costs
/// O(1) per point.
struct QuadraticResidual {
    comps: Vec<[f64; 6]>,
}

impl QuadraticResidual {
    fn build<F>(eval: F) -> Self
    where
        F: Fn(f64, f64) -> Vec<(usize, f64)>,
    {
        let pts = [
            (0.0, 0.0),
            (1.0, 0.0),
            (0.0, 1.0),
            (2.0, 0.0),
            (0.0, 2.0),
            (1.0, 1.0),
        ];
        // invert the Vandermonde-like design for [1, x, y, x^2, xy, y^2]
        let design: Vec<[f64; 6]> = pts
            .iter()
            .map(|&(x, y)| [1.0, x, y, x * x, x * y, y * y])
            .collect();
        let mut samples: std::collections::BTreeMap<usize, [f64; 6]> = Default::default();
        for (i, &(x, y)) in pts.iter().enumerate() {
            for (key, v) in eval(x, y) {
                samples.entry(key).or_insert([0.0; 6])[i] = v;
            }
        }
        let comps = samples
            .values()
            .map(|rhs| solve6(&design, rhs))
            .collect();
        QuadraticResidual { comps }
    }

    fn residual(&self, x: f64, y: f64) -> f64 {
        let basis = [1.0, x, y, x * x, x * y, y * y];
        let mut worst = 0.0f64;
        for q in &self.comps {
            let mut acc = 0.0;
            for i in 0..6 {
                acc += q[i] * basis[i];
            }
            worst = worst.max(acc.abs());
        }
        worst
    }
}

#[allow(clippy::needless_range_loop)]
fn solve6(design: &[[f64; 6]], rhs: &[f64; 6]) -> [f64; 6] {
    let mut m = [[0.0f64; 7]; 6];
    for i in 0..6 {
        m[i][..6].copy_from_slice(&design[i]);
        m[i][6] = rhs[i];
    }
    for col in 0..6 {
        let pivot = (col..6).max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap()).unwrap();
        m.swap(col, pivot);
        for row in 0..6 {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            for c2 in col..7 {
                m[row][c2] -= f * m[col][c2];
            }
        }
    }
    core::array::from_fn(|i| m[i][6] / m[i][i])
}

fn residual_components(p: &G2Params, template: &InvariantConnection, slots: (CoeffSlot, CoeffSlot), x: f64, y: f64) -> Vec<(usize, f64)> {
    let mut conn = *template;
    slots.0.set(&mut conn, x);
    slots.1.set(&mut conn, y);
    let f = g2aw::connections::curvature(&conn, p).expect("basic curvature");
    let psi = p.psi();
    let mut out = Vec::new();
    for (ci, fi) in f.components().into_iter().enumerate() {
        for (mask, v) in fi.wedge(&psi).iter() {
            out.push((ci * 256 + mask as usize, v));
        }
    }
    out
}

#[test]
fn criterion_4_instanton_oracle_and_grid_converse() {
    // forward direction: closed-form solutions pass the curvature oracle
    let mut rng = StdRng::seed_from_u64(104);
    let mut worst = 0.0f64;
    let mut n_solutions = 0usize;
    for _ in 0..125 {
        let (k, l) = [(1i64, 2i64), (2, 3), (1, -1), (3, 5), (1, 1)][rng.gen_range(0..5)];
        let p = random_params(&mut rng, k, l);
        let wts = p.frame().weights();
        let n = wts[rng.gen_range(0..3)];
        let rep = classify_so3(&p, n).unwrap();
        for s in &rep.solutions {
            worst = worst.max(s.residual);
            n_solutions += 1;
        }
    }
    let forward_ok = worst < 1e-9;

    // converse: on 20 sampled parameter points, a dense scan of the free
    // coefficient plane at pitch 1e-2 over [-3, 3] finds no residual below
    // the 1e-4 floor away from the classified set
    let mut rng = StdRng::seed_from_u64(204);
    let mut sampled = 0usize;
    let mut converse_ok = true;
    let mut checked_points = 0usize;
    while sampled < 20 {
        let (k, l) = [(1i64, 2i64), (2, 3), (1, -1), (1, 1)][rng.gen_range(0..4)];
        let p = random_params(&mut rng, k, l);
        let wts = p.frame().weights();
        let n = wts[rng.gen_range(0..3)];
        let template = match ansatz(k, l, n) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let Some(a_slot) = active_slot(template.case) else { continue };
        sampled += 1;
        let base = InvariantConnection::reducible(n, 0.0, template.case);
        let slots = (a_slot, CoeffSlot::B);
        let quad = QuadraticResidual::build(|x, y| residual_components(&p, &base, slots, x, y));
        // certify the quadratic model against the honest oracle
        for _ in 0..40 {
            let (x, y) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let mut conn = base;
            slots.0.set(&mut conn, x);
            slots.1.set(&mut conn, y);
            let honest = instanton_residual(&conn, &p).unwrap();
            let model = quad.residual(x, y);
            assert!(
                (honest - model).abs() < 1e-10 * honest.max(1.0),
                "quadratic residual model must match the oracle exactly"
            );
        }
        // the classified set in this plane
        let rep = classify_so3(&p, n).unwrap();
        let known: Vec<(f64, f64, bool)> = rep
            .solutions
            .iter()
            .map(|s| (a_slot.get(&s.conn), s.conn.b, s.family_dim > 0))
            .collect();
        let hits: Vec<(f64, f64)> = (0..=600)
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = -3.0 + 0.01 * i as f64;
                (0..=600).map(move |j| (x, -3.0 + 0.01 * j as f64))
            })
            .filter(|&(x, y)| quad.residual(x, y) < 1e-4)
            .collect();
        checked_points += 601 * 601;
        for (x, y) in hits {
            let near_known = known.iter().any(|&(ka, kb, family)| {
                if family {
                    // the b direction is free in a family: distance to the line
                    (x - ka).abs() < 0.1
                } else {
                    (x - ka).abs() < 0.1 && (y - kb).abs() < 0.1
                }
            });
            if !near_known {
                converse_ok = false;
                eprintln!(
                    "unclassified near-zero at ({x}, {y}) on X({k},{l}) n={n}: \
                     residual {}",
                    quad.residual(x, y)
                );
            }
        }
    }
    // sigma-threshold at the published crossings: on the sigma1 > 0 side the
    // off-axis grid minimum sits within one pitch of the classified
    // irreducible pair; on the sigma1 < 0 side it stays bounded away from
    // zero (the scan sees no off-axis valley at all)
    let mut threshold_ok = true;
    for (k, l, n, a_values) in [
        (1i64, -1i64, 2i64, vec![0.9f64, 1.1]),
        (1, -5, 6, vec![0.9, 1.1, 1.25, 1.4]),
    ] {
        for &av in &a_values {
            let p = G2Params::new(k, l, av, 1.0, 1.0, 1.0).unwrap();
            let template = ansatz(k, l, n).unwrap();
            let a_slot = active_slot(template.case).unwrap();
            let base = InvariantConnection::reducible(n, 0.0, template.case);
            let slots = (a_slot, CoeffSlot::B);
            let quad =
                QuadraticResidual::build(|x, y| residual_components(&p, &base, slots, x, y));
            let rep = classify_so3(&p, n).unwrap();
            let irreducible: Vec<(f64, f64)> = rep
                .solutions
                .iter()
                .filter(|s| !s.reducible)
                .map(|s| (a_slot.get(&s.conn), s.conn.b))
                .collect();
            let mut best = (f64::INFINITY, 0.0f64, 0.0f64);
            for i in 0..=600 {
                let x = -3.0 + 0.01 * i as f64;
                if x.abs() <= 0.05 {
                    continue;
                }
                for j in 0..=600 {
                    let y = -3.0 + 0.01 * j as f64;
                    let r = quad.residual(x, y);
                    if r < best.0 {
                        best = (r, x, y);
                    }
                }
            }
            let (s1, _, _) = sigmas(&p);
            let ok = if s1 > 0.0 {
                best.0 < 4e-3
                    && irreducible
                        .iter()
                        .any(|&(ka, kb)| (best.1 - ka).abs() < 0.02 && (best.2 - kb).abs() < 0.02)
            } else {
                irreducible.is_empty() && best.0 > 4e-3
            };
            if !ok {
                threshold_ok = false;
                eprintln!(
                    "threshold failure on X({k},{l}) n={n} A={av}: sigma1 = {s1:.4}, grid \
                     minimum {:.3e} at ({:.2}, {:.2})",
                    best.0, best.1, best.2
                );
            }
        }
    }

    report(
        "4",
        forward_ok && converse_ok && threshold_ok,
        &format!(
            "{n_solutions} closed-form solutions at residual <= {worst:.2e}; grid converse \
             clean over {checked_points} scanned coefficient pairs on 20 parameter points and \
             on both sides of the published crossings"
        ),
    );
}

#[test]
fn criterion_5_merging_and_obstruction() {
    // det = (8BC/3) sigma1 at the irreducible instanton over 100 draws
    let mut rng = StdRng::seed_from_u64(105);
    let mut worst_irr = 0.0f64;
    let mut worst_red = 0.0f64;
    let mut irr_seen = 0;
    while irr_seen < 100 {
        let p = random_params(&mut rng, 1, 2);
        let (_, delta) = gamma_delta(&p);
        if delta.abs() < 1e-3 {
            continue;
        }
        let (s1, _, _) = sigmas(&p);
        let n = p.k - p.l;
        // documented honest variant at the reducible instanton: -(4BC/3) sigma1
        let rep = classify_abelian(&p, n).unwrap();
        let det_red = deformation_det(&p, &rep.solutions[0].conn).unwrap();
        let want_red = -4.0 * p.b * p.c * s1 / 3.0;
        worst_red = worst_red.max((det_red - want_red).abs() / want_red.abs().max(1e-12));
        if s1 > 1e-3 {
            irr_seen += 1;
            let rep = classify_so3(&p, n).unwrap();
            let irr = rep.solutions.iter().find(|s| !s.reducible).unwrap();
            let det = deformation_det(&p, &irr.conn).unwrap();
            let want = 8.0 * p.b * p.c * s1 / 3.0;
            worst_irr = worst_irr.max((det - want).abs() / want.abs().max(1e-12));
        }
    }

    // figure sweeps: branches vanish exactly at the bisected crossings
    let fig1 = G2Params::new(1, -1, 1.0, 1.0, 1.0, 1.0).unwrap();
    let t1 = sweep(&fig1, 2, Axis::A, 0.05, 1.4, 271).unwrap();
    let c1 = bisect_sigma_zero(&fig1, Axis::A, 1, 0.5, 1.4).unwrap();
    let mut branches_ok = (c1 - 1.0).abs() < 1e-6;
    for row in &t1.rows {
        let inside = row.param_value < c1 - 1e-9;
        branches_ok &= row.a_plus.is_nan() == !inside;
        if inside {
            branches_ok &= (row.a_plus + row.a_minus).abs() < 1e-14;
        }
    }
    let fig2 = G2Params::new(1, -5, 1.0, 1.0, 1.0, 1.0).unwrap();
    let t2 = sweep(&fig2, 6, Axis::A, 0.1, 1.6, 301).unwrap();
    let c2a = bisect_sigma_zero(&fig2, Axis::A, 1, 0.5, 1.2).unwrap();
    let c2b = bisect_sigma_zero(&fig2, Axis::A, 1, 1.2, 1.6).unwrap();
    branches_ok &= (c2a - 1.0).abs() < 1e-6 && (c2b - 7f64.sqrt() / 2.0).abs() < 1e-6;
    for row in &t2.rows {
        let inside = row.param_value < c2a - 1e-9 || row.param_value > c2b + 1e-9;
        branches_ok &= row.a_plus.is_nan() == !inside;
    }
    report(
        "5",
        worst_irr < 1e-9 && worst_red < 1e-9 && branches_ok,
        &format!(
            "det/(8BC sigma1/3) deviates {worst_irr:.2e} at the irreducible instanton \
             (and matches -(4BC/3) sigma1 at the reducible one to {worst_red:.2e}); \
             branch zeros at A = {c1:.8} and A = {c2a:.8}, {c2b:.8}"
        ),
    );
}

#[test]
fn criterion_6_topology() {
    let mut mismatches = 0;
    for k in -20..=20i64 {
        for l in -20..=20i64 {
            if k == 0 && l == 0 {
                continue;
            }
            if weight_bundle_classes(k, l).unwrap()
                != weight_bundle_classes_closed_form(k, l).unwrap()
            {
                mismatches += 1;
            }
        }
    }
    // the five published bundle verdicts
    let cases = [
        (1i64, 2i64, -4i64, 0u8, 2i64, -1i64, 1u8, 1i64),
        (1, 3, -5, 1, 12, -2, 0, 4),
        (1, 4, -6, 0, 15, -3, 1, 9),
        (2, 3, -7, 1, 11, -1, 1, 1),
        (2, 11, -15, 1, 78, -9, 1, 81),
    ];
    let mut verdicts_ok = true;
    for (k, l, np, w2p, p1p, nm, w2m, p1m) in cases {
        let cp = char_classes(k, l, np).unwrap();
        let cm = char_classes(k, l, nm).unwrap();
        verdicts_ok &= cp.w2 == w2p && cp.p1 == p1p && cm.w2 == w2m && cm.p1 == p1m;
        verdicts_ok &= cp != cm;
    }
    report(
        "6",
        mismatches == 0 && verdicts_ok,
        "closed-form and direct classes agree for |k|,|l| <= 20; all five published \
         (w2, p1) pairs and distinct-bundle verdicts reproduced",
    );
}

#[test]
fn criterion_7_yang_mills() {
    let p = x1m1_np_params();
    let slots = [CoeffSlot::A3, CoeffSlot::B];
    let rep = classify_so3(&p, -1).unwrap();
    let mut saddles_ok = true;
    for sol in rep.solutions.iter().filter(|s| !s.reducible) {
        let h = ym_hessian(&p, &sol.conn, &slots).unwrap();
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let trace = h[0][0] + h[1][1];
        saddles_ok &= det < 0.0 && trace > 0.0;
    }

    // reducible instanton is the global minimum among the a2 = 0 grid points
    let start = Instant::now();
    let grid = landscape_grid(
        &p,
        -1,
        (CoeffSlot::A3, CoeffSlot::B),
        (-1.2, 1.2),
        (-1.2, 1.2),
        (200, 200),
    )
    .unwrap();
    let grid_time = start.elapsed().as_secs_f64();
    let red = rep.solutions.iter().find(|s| s.reducible).unwrap();
    let e_red = g2aw::ym::ym_energy(&p, &red.conn).unwrap();
    let grid_min = grid
        .rows
        .iter()
        .map(|r| r.2)
        .fold(f64::INFINITY, f64::min);
    let global_ok = e_red <= grid_min + 1e-12;

    // gradients vanish at every instanton over the nearly-parallel structures,
    // and the Abelian criticality polynomial vanishes there too
    let mut worst_grad = 0.0f64;
    let mut worst_eq = 0.0f64;
    let mut np_structures: Vec<G2Params> = vec![p];
    for s in solve_np(1, 2, 1.0, 6).unwrap() {
        np_structures.push(s.params);
    }
    np_structures.extend(x11_np_solutions());
    for q in &np_structures {
        worst_eq = worst_eq.max(ym_criticality_residual(q).unwrap().abs());
        for n in q.frame().weights() {
            let Ok(rep) = classify_so3(q, n) else { continue };
            for sol in rep.solutions.iter().filter(|s| s.family_dim == 0) {
                let slots: Vec<CoeffSlot> = match active_slot(sol.conn.case) {
                    Some(a) => vec![CoeffSlot::B, a],
                    None => vec![CoeffSlot::B],
                };
                for g in ym_gradient(q, &sol.conn, &slots).unwrap() {
                    worst_grad = worst_grad.max(g.abs());
                }
            }
        }
    }
    report(
        "7",
        saddles_ok && global_ok && worst_grad < 1e-6 && worst_eq < 1e-6 && grid_time < 10.0,
        &format!(
            "index-1 saddles confirmed; reducible instanton at or below the 200x200 grid \
             minimum (computed in {grid_time:.2}s); max instanton gradient {worst_grad:.2e}; \
             max criticality residual {worst_eq:.2e}"
        ),
    );
}

#[test]
fn criterion_8_x11_program() {
    // uniqueness of the Abelian instanton on the C = B, D = A subfamily
    let p = G2Params::new(1, 1, 0.7, 1.3, 1.3, 0.7).unwrap();
    let rep = classify_abelian(&p, 5).unwrap();
    let unique_ok = rep.solutions.len() == 1
        && rep.solutions[0].family_dim == 0
        && rep.solutions[0].conn.b.abs() < 1e-14;
    let p_eq = G2Params::new(1, 1, 1.3, 1.3, 1.3, 1.3).unwrap();
    let rep = classify_abelian(&p_eq, 5).unwrap();
    let family_ok = rep.solutions.len() == 1 && rep.solutions[0].family_dim == 1;

    // the two Einstein points separate by instanton existence
    let pts = x11_np_solutions();
    let (ts, snp) = (&pts[0], &pts[1]);
    let (t1, t2, t3) = sigmas(ts);
    let ts_ok = t1 < 0.0 && t2 < 0.0 && t3 < 0.0;
    let (s1, s2, s3) = sigmas(snp);
    let snp_pair = classify_so3(snp, 0)
        .unwrap()
        .solutions
        .iter()
        .filter(|s| !s.reducible)
        .count();
    let snp_ok = s1 > 0.0 && s2 < 0.0 && s3 < 0.0 && snp_pair == 2;

    // collapsing rates in the fixed unit metric
    let unit = G2Params::new(1, 1, 1.0, 1.0, 1.0, 1.0).unwrap().metric();
    let avals = [0.5f64, 0.25, 0.125, 0.0625];
    let mut logs_n0 = Vec::new();
    let mut logs_n3 = Vec::new();
    for &av in &avals {
        let q = G2Params::new(1, 1, av, 1.0, 1.0, av).unwrap();
        let rep = classify_so3(&q, 0).unwrap();
        let sol = rep
            .solutions
            .iter()
            .filter(|s| !s.reducible)
            .find(|s| s.conn.a1 < 0.0)
            .unwrap();
        let d1 = Form::basis_one_form(4).scale(sol.conn.b + 1.0 / SQRT2);
        let d2 = Form::basis_one_form(1).scale(sol.conn.a1 + 1.0 / SQRT2);
        let d3 = Form::basis_one_form(5).scale(sol.conn.a1 + 1.0 / SQRT2);
        let dist = (d1.norm_sq(&unit).unwrap()
            + d2.norm_sq(&unit).unwrap()
            + d3.norm_sq(&unit).unwrap())
        .sqrt();
        logs_n0.push((av.ln(), dist.ln()));
        let rep = classify_so3(&q, 3).unwrap();
        let sol = rep.solutions.iter().find(|s| !s.reducible).unwrap();
        let f = g2aw::connections::curvature(&sol.conn, &q).unwrap();
        let mut norm = 0.0;
        for fi in f.components() {
            norm += fi.contract(1).norm_sq(&unit).unwrap();
        }
        logs_n3.push((av.ln(), norm.sqrt().ln()));
    }
    let slope = |pts: &[(f64, f64)]| {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|q| q.0).sum();
        let sy: f64 = pts.iter().map(|q| q.1).sum();
        let sxx: f64 = pts.iter().map(|q| q.0 * q.0).sum();
        let sxy: f64 = pts.iter().map(|q| q.0 * q.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    };
    let s0 = slope(&logs_n0);
    let s3v = slope(&logs_n3);
    report(
        "8",
        unique_ok && family_ok && ts_ok && snp_ok && (s0 - 2.0).abs() <= 0.1 && (s3v + 1.0).abs() <= 0.1,
        &format!(
            "unique b = 0 for A != B, 1-parameter family at A = B; tri-Sasakian sigmas all \
             negative, strictly nearly parallel has the trivial-bundle pair; collapse slope \
             {s0:.4}, contraction divergence slope {s3v:.4}"
        ),
    );
}

#[test]
fn criterion_9_squash_roots() {
    let roots = squash_np();
    let sq5 = 5f64.sqrt();
    let worst = (roots[0].0 - 1.0 / sq5)
        .abs()
        .max((roots[0].1 - 12.0 / sq5).abs())
        .max((roots[1].0 + 1.0 / sq5).abs())
        .max((roots[1].1 + 12.0 / sq5).abs());
    report(
        "9",
        worst < 1e-15,
        &format!("squash roots +-(1/sqrt5, 12/sqrt5) to {worst:.2e}"),
    );
}

#[test]
fn verify_suite_is_clean() {
    // the reproduction suite behind `g2aw verify` must have no failing record
    let records = run_verify(None);
    let fails: Vec<_> = records
        .iter()
        .filter(|r| r.status == VerifyStatus::Fail)
        .collect();
    assert!(
        fails.is_empty(),
        "verify records failed: {:?}",
        fails.iter().map(|r| &r.claim_id).collect::<Vec<_>>()
    );
    // nearly-parallel solutions must also satisfy the full-form identity
    for (k, l) in [(1i64, 2i64), (1, -1), (1, 1)] {
        for s in solve_np(k, l, 1.0, 6).unwrap() {
            assert!(s.form_residual < 1e-9);
            assert!(
                np_residual(&s.params, s.lambda)
                    .iter()
                    .all(|r| r.abs() < 1e-10),
                "reduced equations at a returned solution"
            );
        }
    }
    // spot-check one angled case id for coverage of the report plumbing
    let t = ansatz(1, -1, -1).unwrap();
    assert_eq!(t.case, AnsatzCase::Angled23);
}
