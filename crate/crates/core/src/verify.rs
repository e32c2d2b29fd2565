//! The reproduction suite behind `g2aw verify`: every published number the
//! library claims to reproduce, checked at a fixed tolerance.
//!
//! Status semantics: `pass`/`fail` compare computed against expected at the
//! record's tolerance; `flagged` marks documented discrepancies in the
//! source material (mutually inconsistent printed formulas, non-solution
//! table rows, relabeled bundles). A flagged record reports the printed
//! value as `expected`, what this library computes as `computed`, and never
//! fails the run on its own.

use serde::Serialize;

use crate::connections::{
    bisect_sigma_zero, branch_b, classify_abelian, classify_so3, curvature, deformation_det,
    gamma_delta, sigmas, Axis,
};
use crate::exterior::Form;
use crate::g2::{psi_hodge_gap, G2Params};
use crate::np::{np_residual, solve_np, squash_np, x11_np_solutions, x1m1_np_params, NpBranch};
use crate::su3::frame_data;
use crate::topology::{char_classes, weight_bundle_classes, weight_bundle_classes_closed_form};
use crate::ym::{
    abelian_ym_critical_b, active_slot, landscape_grid, ym_criticality_residual, ym_gradient,
    ym_hessian, ym_point, CoeffSlot,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyStatus {
    Pass,
    Fail,
    Flagged,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub claim_id: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub status: VerifyStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerifyRecord {
    fn check(claim_id: &str, expected: f64, computed: f64, tolerance: f64) -> Self {
        let status = if (expected - computed).abs() <= tolerance {
            VerifyStatus::Pass
        } else {
            VerifyStatus::Fail
        };
        VerifyRecord {
            claim_id: claim_id.to_string(),
            expected,
            computed,
            tolerance,
            status,
            note: None,
        }
    }

    fn check_note(claim_id: &str, expected: f64, computed: f64, tolerance: f64, note: &str) -> Self {
        let mut r = Self::check(claim_id, expected, computed, tolerance);
        r.note = Some(note.to_string());
        r
    }

    fn flagged(claim_id: &str, printed: f64, computed: f64, note: &str) -> Self {
        VerifyRecord {
            claim_id: claim_id.to_string(),
            expected: printed,
            computed,
            tolerance: 0.0,
            status: VerifyStatus::Flagged,
            note: Some(note.to_string()),
        }
    }
}

struct ExampleData {
    name: &'static str,
    k: i64,
    l: i64,
    plus: [f64; 4],
    sigma_plus: [f64; 3],
    minus: Option<[f64; 4]>,
    sigma_minus: Option<[f64; 3]>,
    /// (bundle degree, w2, p1) for the sigma-positive bundle of each branch
    bundle_plus: (i64, u8, i64),
    bundle_minus: (i64, u8, i64),
}

fn published_examples() -> Vec<ExampleData> {
    vec![
        ExampleData {
            name: "example5",
            k: 1,
            l: 2,
            plus: [2.82249, 2.29632, 1.79654, 2.49609],
            sigma_plus: [-694.91837, -357.13002, 102.96860],
            minus: Some([1.69915, 2.63936, 2.72083, -1.72713]),
            sigma_minus: Some([257.21323, -623.28938, -676.14197]),
            bundle_plus: (-4, 0, 2),
            bundle_minus: (-1, 1, 1),
        },
        ExampleData {
            name: "example6",
            k: 1,
            l: 3,
            plus: [2.81314, 2.38489, 1.76003, 2.30416],
            sigma_plus: [-1304.73725, -794.17740, 286.31370],
            minus: Some([1.70181, 2.61482, 2.73734, -1.76385]),
            sigma_minus: Some([468.21163, -1124.80823, -1272.28946]),
            bundle_plus: (-5, 1, 12),
            bundle_minus: (-2, 0, 4),
        },
        ExampleData {
            name: "example7",
            k: 1,
            l: 4,
            plus: [2.80647, 2.42496, 1.74612, 2.20834],
            sigma_plus: [-2113.76099, -1378.20704, 526.44201],
            minus: None, // the printed row is not a solution; handled flagged
            sigma_minus: None,
            bundle_plus: (-6, 0, 15),
            bundle_minus: (-3, 1, 9),
        },
        ExampleData {
            name: "example8",
            k: 2,
            l: 3,
            plus: [2.82707, 2.19724, 1.84821, 2.66829],
            sigma_plus: [-1857.93578, -753.70309, 107.33579],
            minus: Some([1.69781, 2.65772, 2.70655, -1.70795]),
            sigma_minus: Some([705.20889, -1726.54024, -1812.54120]),
            bundle_plus: (-7, 1, 11),
            bundle_minus: (-1, 1, 1),
        },
        ExampleData {
            name: "example9",
            k: 2,
            l: 11,
            plus: [2.80000, 2.45576, 1.73649, 2.13220],
            sigma_plus: [-14809.57254, -10158.19056, 4009.81206],
            minus: Some([1.70630, 2.58424, 2.75458, -1.82250]),
            sigma_minus: Some([5116.36820, -12243.99444, -14559.71627]),
            bundle_plus: (-15, 1, 78),
            bundle_minus: (-9, 1, 81),
        },
    ]
}

fn random_valid_params(rng: &mut ChaCha8Rng, k: i64, l: i64) -> G2Params {
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
    G2Params::new(k, l, a, b, c, d).expect("nonzero draws")
}

fn structure_records(out: &mut Vec<VerifyRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6732_6177);
    let mut worst_psi = 0.0f64;
    let mut worst_dpsi = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut worst_dd = 0.0f64;
    let mut worst_jacobi = 0.0f64;
    let mut worst_tau0 = 0.0f64;
    for (k, l) in [(1i64, 1i64), (1, -1), (1, 2), (2, 3)] {
        let data = frame_data(k, l).unwrap();
        worst_jacobi = worst_jacobi.max(data.constants.jacobi_residual());
        for a in 1..=8u8 {
            worst_dd = worst_dd.max(
                Form::basis_one_form(a)
                    .d(&data.constants)
                    .d(&data.constants)
                    .max_abs_coeff(),
            );
        }
        for _ in 0..25 {
            let p = random_valid_params(&mut rng, k, l);
            worst_psi = worst_psi.max(psi_hodge_gap(&p).unwrap());
            worst_dpsi = worst_dpsi.max(p.psi().d(&data.constants).max_abs_coeff());
            worst_norm =
                worst_norm.max((p.phi().norm_sq(&p.metric()).unwrap() - 7.0).abs());
            worst_tau0 = worst_tau0.max(p.tau0().unwrap().relative_gap());
        }
    }
    out.push(VerifyRecord::check("structure.jacobi_residual", 0.0, worst_jacobi, 1e-12));
    out.push(VerifyRecord::check("structure.d_squared", 0.0, worst_dd, 1e-12));
    out.push(VerifyRecord::check("structure.psi_eq_star_phi", 0.0, worst_psi, 1e-12));
    out.push(VerifyRecord::check("structure.d_psi_zero", 0.0, worst_dpsi, 1e-12));
    out.push(VerifyRecord::check("structure.phi_norm_seven", 0.0, worst_norm, 1e-9));
    out.push(VerifyRecord::check("structure.tau0_two_routes", 0.0, worst_tau0, 1e-9));

    // d(w4) matches the printed weight pattern -(1/(sqrt2 s))(m, k, l)
    let data = frame_data(1, 2).unwrap();
    let spec = data.spec;
    let dw4 = Form::basis_one_form(4).d(&data.constants);
    let f = -1.0 / (SQRT2 * spec.s);
    let expect = Form::monomial(&[1, 5], f * spec.m as f64)
        .unwrap()
        .add(&Form::monomial(&[2, 6], f * spec.k as f64).unwrap())
        .add(&Form::monomial(&[3, 7], f * spec.l as f64).unwrap());
    out.push(VerifyRecord::check(
        "structure.d_w4_printed_form",
        0.0,
        dw4.sub(&expect).max_abs_coeff(),
        1e-13,
    ));

    // canonical curvature: the two printed forms disagree; direct computation
    // gives -(n/(12 s^2))((k-l) w15 + (l-m) w26 + (m-k) w37)
    let conn = crate::connections::InvariantConnection::reducible(
        1,
        0.0,
        crate::connections::AnsatzCase::Reducible,
    );
    let p = G2Params::new(1, 2, 1.0, 1.0, 1.0, 1.0).unwrap();
    let fc = curvature(&conn, &p).unwrap();
    let pref = -1.0 / (12.0 * spec.s * spec.s);
    let expect = Form::monomial(&[1, 5], pref * (spec.k - spec.l) as f64)
        .unwrap()
        .add(&Form::monomial(&[2, 6], pref * (spec.l - spec.m) as f64).unwrap())
        .add(&Form::monomial(&[3, 7], pref * (spec.m - spec.k) as f64).unwrap());
    out.push(VerifyRecord::check_note(
        "structure.canonical_curvature",
        0.0,
        fc.f1.sub(&expect).max_abs_coeff(),
        1e-13,
        "F_c = -(n/(12 s^2))((k-l) w15 + (l-m) w26 + (m-k) w37): magnitude and the (m-k) \
         weight follow one printed variant, the overall sign the other; direct \
         computation from the structure constants is authoritative",
    ));
}

fn example_records(out: &mut Vec<VerifyRecord>) {
    for ex in published_examples() {
        let sols = match solve_np(ex.k, ex.l, 1.0, 8) {
            Ok(s) => s,
            Err(e) => {
                out.push(VerifyRecord::check_note(
                    &format!("{}.solver", ex.name),
                    0.0,
                    1.0,
                    0.0,
                    &format!("solver failed: {e}"),
                ));
                continue;
            }
        };
        let plus = sols.iter().find(|s| s.branch == NpBranch::Plus);
        let minus = sols.iter().find(|s| s.branch == NpBranch::Minus);
        let coords = ["A", "B", "C", "D"];
        if let Some(plus) = plus {
            let got = [plus.params.a, plus.params.b, plus.params.c, plus.params.d];
            for i in 0..4 {
                out.push(VerifyRecord::check(
                    &format!("{}.phi_plus.{}", ex.name, coords[i]),
                    ex.plus[i],
                    got[i],
                    1e-3,
                ));
            }
            let (s1, s2, s3) = sigmas(&plus.params);
            for (i, got) in [s1, s2, s3].into_iter().enumerate() {
                out.push(VerifyRecord::check(
                    &format!("{}.phi_plus.sigma{}", ex.name, i + 1),
                    ex.sigma_plus[i],
                    got,
                    1e-3,
                ));
            }
        }
        if let Some(minus) = minus {
            let got = [
                minus.params.a,
                minus.params.b,
                minus.params.c,
                minus.params.d,
            ];
            match (ex.minus, ex.sigma_minus) {
                (Some(want), Some(want_sigma)) => {
                    for i in 0..4 {
                        out.push(VerifyRecord::check(
                            &format!("{}.phi_minus.{}", ex.name, coords[i]),
                            want[i],
                            got[i],
                            1e-3,
                        ));
                    }
                    let (s1, s2, s3) = sigmas(&minus.params);
                    for (i, g) in [s1, s2, s3].into_iter().enumerate() {
                        out.push(VerifyRecord::check(
                            &format!("{}.phi_minus.sigma{}", ex.name, i + 1),
                            want_sigma[i],
                            g,
                            1e-3,
                        ));
                    }
                }
                _ => {
                    // example7: the printed row is not a solution of the
                    // nearly-parallel system
                    let printed = [1.01066, 2.42496, 1.74612, -1.79228];
                    let printed_params = G2Params::new(
                        ex.k, ex.l, printed[0], printed[1], printed[2], printed[3],
                    )
                    .unwrap();
                    let res = np_residual(&printed_params, 1.0)
                        .iter()
                        .fold(0.0f64, |acc, r| acc.max(r.abs()));
                    out.push(VerifyRecord::flagged(
                        &format!("{}.phi_minus.printed_row", ex.name),
                        0.0,
                        res,
                        &format!(
                            "printed phi-minus row (A,B,C,D) = (1.01066, 2.42496, 1.74612, \
                             -1.79228) fails the nearly-parallel equations with residual \
                             {res:.2}; B and C coincide with the phi-plus row and the printed \
                             sigma values were evaluated at that non-solution row. The solved \
                             branch is (A,B,C,D) = ({:.5}, {:.5}, {:.5}, {:.5}) with sigma1 > 0 \
                             only, so the existence verdict (irreducible instantons on P_-3 \
                             alone) is unchanged",
                            got[0], got[1], got[2], got[3]
                        ),
                    ));
                    let (s1, s2, s3) = sigmas(&minus.params);
                    out.push(VerifyRecord::check_note(
                        &format!("{}.phi_minus.sigma1_positive", ex.name),
                        1.0,
                        if s1 > 0.0 && s2 < 0.0 && s3 < 0.0 { 1.0 } else { 0.0 },
                        0.0,
                        "solved branch admits irreducible instantons on the sigma1 bundle only",
                    ));
                }
            }
        }
        // bundle topology of the sigma-positive bundles, and distinctness
        for (tag, (n, w2, p1)) in [
            ("plus", ex.bundle_plus),
            ("minus", ex.bundle_minus),
        ] {
            let c = char_classes(ex.k, ex.l, n).unwrap();
            out.push(VerifyRecord::check(
                &format!("{}.bundle_{}.w2", ex.name, tag),
                w2 as f64,
                c.w2 as f64,
                0.0,
            ));
            out.push(VerifyRecord::check(
                &format!("{}.bundle_{}.p1", ex.name, tag),
                p1 as f64,
                c.p1 as f64,
                0.0,
            ));
        }
        let cp = char_classes(ex.k, ex.l, ex.bundle_plus.0).unwrap();
        let cm = char_classes(ex.k, ex.l, ex.bundle_minus.0).unwrap();
        out.push(VerifyRecord::check_note(
            &format!("{}.bundles_distinct", ex.name),
            1.0,
            if cp != cm { 1.0 } else { 0.0 },
            0.0,
            "the two strictly nearly parallel structures carry their irreducible \
             instantons on topologically different bundles",
        ));
    }

    // example 9 prints the phi-minus D value under the name E
    out.push(VerifyRecord::flagged(
        "example9.phi_minus.D_printed_as_E",
        -1.82250,
        -1.82250,
        "the table labels this value E; it is the D coordinate and is treated as such",
    ));
}

fn example34_records(out: &mut Vec<VerifyRecord>) {
    // example 3: sigma1 = 2(1 - A^2) on X(1,-1), B = C = D = 1
    let base = G2Params::new(1, -1, 1.0, 1.0, 1.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    for i in 0..=20 {
        let a = 0.1 + 1.3 * (i as f64) / 20.0;
        let p = Axis::A.apply(&base, a);
        let (s1, _, _) = sigmas(&p);
        worst = worst.max((s1 - 2.0 * (1.0 - a * a)).abs());
    }
    out.push(VerifyRecord::check("example3.sigma1_closed_form", 0.0, worst, 1e-10));
    let crossing = bisect_sigma_zero(&base, Axis::A, 1, 0.5, 1.4).unwrap();
    out.push(VerifyRecord::check("example3.merge_crossing_A", 1.0, crossing, 1e-6));
    // at the crossing the deformation determinant vanishes: merge point
    let rep = classify_so3(&Axis::A.apply(&base, crossing), 2).unwrap();
    let red = rep.solutions.iter().find(|s| s.reducible).unwrap();
    let det = deformation_det(&Axis::A.apply(&base, crossing), &red.conn).unwrap();
    out.push(VerifyRecord::check("example3.det_zero_at_merge", 0.0, det, 1e-6));

    // example 4: sigma1 = (A^2 - 1)(12 sqrt7 A - 42) on X(1,-5), B = C = D = 1
    let base = G2Params::new(1, -5, 1.0, 1.0, 1.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    for i in 0..=20 {
        let a = 0.3 + 1.4 * (i as f64) / 20.0;
        let p = Axis::A.apply(&base, a);
        let (s1, _, _) = sigmas(&p);
        let want = (a * a - 1.0) * (12.0 * 7f64.sqrt() * a - 42.0);
        worst = worst.max((s1 - want).abs());
    }
    out.push(VerifyRecord::check("example4.sigma1_closed_form", 0.0, worst, 1e-9));
    let c1 = bisect_sigma_zero(&base, Axis::A, 1, 0.5, 1.2).unwrap();
    let c2 = bisect_sigma_zero(&base, Axis::A, 1, 1.2, 1.5).unwrap();
    out.push(VerifyRecord::check("example4.crossing_one", 1.0, c1, 1e-6));
    out.push(VerifyRecord::check(
        "example4.crossing_sqrt7_half",
        7f64.sqrt() / 2.0,
        c2,
        1e-6,
    ));
    out.push(VerifyRecord::flagged(
        "example4.bundle_label",
        3.0,
        6.0,
        "the accompanying text says P_3 while the figure caption says P_6; with \
         n = k - l = 6 the sweep runs on P_6 and the caption label stands",
    ));
}

fn x1m1_records(out: &mut Vec<VerifyRecord>) {
    let p = x1m1_np_params();
    let sq5 = 5f64.sqrt();

    // solver reproduces the radicals to 1e-12 after canonicalization
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
    out.push(VerifyRecord::check("x1m1.np_radicals", 0.0, best, 1e-12));
    out.push(VerifyRecord::check(
        "x1m1.np_lambda_one",
        0.0,
        np_residual(&p, 1.0)
            .iter()
            .fold(0.0f64, |acc, r| acc.max(r.abs())),
        1e-12,
    ));

    // Abelian instanton: canonical-ansatz b = -n sqrt30/36; the published
    // a4 = +n sqrt30/36 belongs to an opposite-sign h parameterization
    let mut worst = 0.0f64;
    let mut worst_res = 0.0f64;
    for n in [-3i64, -1, 1, 2, 5] {
        let rep = classify_abelian(&p, n).unwrap();
        let b = rep.solutions[0].conn.b;
        worst = worst.max((b + (n as f64) * 30f64.sqrt() / 36.0).abs());
        worst_res = worst_res.max(rep.solutions[0].residual);
    }
    out.push(VerifyRecord::check("x1m1.abelian_b_magnitude", 0.0, worst, 1e-12));
    out.push(VerifyRecord::check("x1m1.abelian_residual", 0.0, worst_res, 1e-9));
    out.push(VerifyRecord::flagged(
        "x1m1.abelian_b_sign",
        30f64.sqrt() / 36.0,
        -(30f64.sqrt()) / 36.0,
        "the printed balance uses the ansatz (n/2) h + a4 w4, the opposite sign on the \
         canonical h-part; in the canonical ansatz -(n/2) h/(sqrt6 s) + b w4 the residual \
         oracle fixes b = -n sqrt30/36 (shown for n = 1), matching the printed magnitude",
    ));

    // P2 = bundle of n = k - l: no irreducible instantons; the honest
    // discriminant is -17408/225, not the printed -14336/225
    let (s1, s2, s3) = sigmas(&p);
    out.push(VerifyRecord::check(
        "x1m1.p2.sigma1_direct",
        -17408.0 / 225.0,
        s1,
        1e-9,
    ));
    out.push(VerifyRecord::flagged(
        "x1m1.p2.sigma1_printed",
        -14336.0 / 225.0,
        s1,
        "printed value follows from evaluating the discriminant with D = -(4/15) sqrt30 \
         instead of the solution value -(16/45) sqrt30; the assembled-curvature equations \
         require a1^2 = -17/20 here (the accompanying first-order system's constant \
         term then reads -17/5, printed as -7/5), so sigma1 = -17408/225. Both \
         values are negative and the no-instanton verdict on P_2 is unchanged",
    ));
    out.push(VerifyRecord::check_note(
        "x1m1.p2.no_irreducible",
        0.0,
        classify_so3(&p, 2)
            .unwrap()
            .solutions
            .iter()
            .filter(|s| !s.reducible)
            .count() as f64,
        0.0,
        "sigma1 < 0 on P_2",
    ));
    // the branch b value derived before concluding no solution exists
    let rep2 = classify_so3(&p, 2).unwrap();
    let _ = rep2;
    out.push(VerifyRecord::check(
        "x1m1.p2.branch_b",
        2.0 * (2.0f64 / 15.0).sqrt(),
        branch_b(&p, 1),
        1e-12,
    ));

    // P_-1: sigma2 < 0 < sigma3; irreducible pair with the radical
    // coefficients; one of the two printed a3 radicals is inconsistent
    // with the other and with the residual oracle
    out.push(VerifyRecord::check_note(
        "x1m1.pm1.sigma_signs",
        1.0,
        if s2 < 0.0 && s3 > 0.0 { 1.0 } else { 0.0 },
        0.0,
        "sigma2 < 0 < sigma3 on P_-1",
    ));
    out.push(VerifyRecord::check(
        "x1m1.pm1.sigma3_closed_form",
        512.0 * (13.0 * sq5 - 15.0) / 225.0,
        s3,
        1e-9,
    ));
    let rep = classify_so3(&p, -1).unwrap();
    let irr: Vec<_> = rep.solutions.iter().filter(|s| !s.reducible).collect();
    let a_want = (12.0 * sq5 - 21.0).sqrt() / 6.0;
    let b_want = -(6f64.sqrt() / 36.0) * (45.0 - 7.0 * sq5) / (5.0 + sq5);
    let a_got = irr.iter().map(|s| s.conn.a3.abs()).fold(0.0f64, f64::max);
    let b_got = irr.first().map(|s| s.conn.b).unwrap_or(f64::NAN);
    out.push(VerifyRecord::check("x1m1.pm1.a3_radical", a_want, a_got, 1e-12));
    out.push(VerifyRecord::check("x1m1.pm1.b_radical", b_want, b_got, 1e-12));
    let printed_a3 = (15f64.sqrt() / 60.0) * (5.0 - sq5).sqrt() * (13.0 * sq5 - 25.0).sqrt();
    out.push(VerifyRecord::flagged(
        "x1m1.pm1.a3_printed_radical",
        printed_a3,
        a_got,
        "the classification table prints a3 = (sqrt15/60) sqrt(5-sqrt5) sqrt(13 sqrt5-25) \
         (squared: (9 sqrt5 - 19)/24), which leaves |F ^ psi| = 11.4; the published \
         energy-critical point a = (1/6) sqrt(12 sqrt5 - 21) (squared: (8 sqrt5 - 14)/24) \
         zeroes the residual and is the value classified here",
    ));
    let worst_irr = irr.iter().map(|s| s.residual).fold(0.0f64, f64::max);
    out.push(VerifyRecord::check("x1m1.pm1.residual", 0.0, worst_irr, 1e-9));
}

fn deformation_records(out: &mut Vec<VerifyRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6465_7421);
    let mut worst_irr = 0.0f64;
    let mut worst_red = 0.0f64;
    let mut irr_seen = 0;
    let mut red_seen = 0;
    while irr_seen < 100 || red_seen < 100 {
        let p = random_valid_params(&mut rng, 1, 2);
        let (_, delta) = gamma_delta(&p);
        if delta.abs() < 1e-3 {
            continue;
        }
        let (s1, _, _) = sigmas(&p);
        let n = p.k - p.l;
        if red_seen < 100 {
            red_seen += 1;
            let rep = classify_abelian(&p, n).unwrap();
            let det = deformation_det(&p, &rep.solutions[0].conn).unwrap();
            let want = -4.0 * p.b * p.c * s1 / 3.0;
            worst_red = worst_red.max((det - want).abs() / want.abs().max(1e-12));
        }
        if s1 > 1e-3 && irr_seen < 100 {
            irr_seen += 1;
            let rep = classify_so3(&p, n).unwrap();
            let irr = rep.solutions.iter().find(|s| !s.reducible).unwrap();
            let det = deformation_det(&p, &irr.conn).unwrap();
            let want = 8.0 * p.b * p.c * s1 / 3.0;
            worst_irr = worst_irr.max((det - want).abs() / want.abs().max(1e-12));
        }
    }
    out.push(VerifyRecord::check(
        "merge.det_eq_8bc_sigma1_over_3_at_irreducible",
        0.0,
        worst_irr,
        1e-9,
    ));
    out.push(VerifyRecord::check_note(
        "merge.det_eq_minus_4bc_sigma1_over_3_at_reducible",
        0.0,
        worst_red,
        1e-9,
        "at the reducible instanton the determinant carries the factor -(4BC/3); the \
         printed identity det = 8BC sigma1/3 holds at the irreducible pair, into which \
         the proof substitutes the irreducible coefficient formulas. Both vanish exactly \
         at the merge sigma1 = 0",
    ));
}

fn squash_records(out: &mut Vec<VerifyRecord>) {
    let roots = squash_np();
    let sq5 = 5f64.sqrt();
    out.push(VerifyRecord::check("squash.t_plus", 1.0 / sq5, roots[0].0, 1e-15));
    out.push(VerifyRecord::check("squash.lambda_plus", 12.0 / sq5, roots[0].1, 1e-15));
    out.push(VerifyRecord::check("squash.t_minus", -1.0 / sq5, roots[1].0, 1e-15));
    out.push(VerifyRecord::check("squash.lambda_minus", -12.0 / sq5, roots[1].1, 1e-15));
    let (t, lam) = roots[0];
    out.push(VerifyRecord::check(
        "squash.substitution",
        0.0,
        (t * t + 1.0 - lam * t / 2.0).abs().max((12.0 * t - lam).abs()),
        1e-15,
    ));
    out.push(VerifyRecord::flagged(
        "squash.printed_equation",
        0.0,
        t * t + 1.0 - 2.0 * lam * t,
        "the condition is printed as t^2 + 1 = 2 lambda t, which the printed roots \
         +-(1/sqrt5, 12/sqrt5) fail by 18/5; matching coefficients in d(phi_t) = \
         lambda psi_t gives t^2 + 1 = lambda t / 2, which they satisfy exactly",
    ));
}

fn x11_records(out: &mut Vec<VerifyRecord>) {
    let pts = x11_np_solutions();
    let (ts, snp) = (&pts[0], &pts[1]);
    out.push(VerifyRecord::check("x11.ts.A", 2.0 * SQRT2, ts.a, 1e-15));
    out.push(VerifyRecord::check("x11.ts.B", 2.0, ts.b, 1e-15));
    out.push(VerifyRecord::check(
        "x11.ts.residual",
        0.0,
        np_residual(ts, 1.0).iter().fold(0.0f64, |a, r| a.max(r.abs())),
        1e-10,
    ));
    out.push(VerifyRecord::check(
        "x11.snp.a_sq_ratio",
        2.0 / 5.0,
        snp.a * snp.a / (snp.b * snp.b),
        1e-12,
    ));
    out.push(VerifyRecord::check_note(
        "x11.snp.abcd_negative",
        1.0,
        if snp.a * snp.b * snp.c * snp.d < 0.0 { 1.0 } else { 0.0 },
        0.0,
        "the strictly nearly parallel point has ABCD < 0",
    ));
    out.push(VerifyRecord::check(
        "x11.snp.residual",
        0.0,
        np_residual(snp, 1.0).iter().fold(0.0f64, |a, r| a.max(r.abs())),
        1e-10,
    ));

    // the sigma verdicts separate the two Einstein metrics
    let (s1, s2, s3) = sigmas(ts);
    out.push(VerifyRecord::check("x11.verdict.ts_sigma1", -288.0, s1, 1e-9));
    out.push(VerifyRecord::check("x11.verdict.ts_sigma2", -48.0, s2, 1e-9));
    out.push(VerifyRecord::check("x11.verdict.ts_sigma3", -48.0, s3, 1e-9));
    let (s1, s2, s3) = sigmas(snp);
    let b2 = snp.b * snp.b;
    let a2 = snp.a * snp.a;
    out.push(VerifyRecord::check(
        "x11.verdict.snp_sigma1",
        6.0 * (a2 - b2) * (a2 - b2),
        s1,
        1e-9,
    ));
    out.push(VerifyRecord::check("x11.verdict.snp_sigma2", 9.0 * b2 * (a2 - b2), s2, 1e-9));
    out.push(VerifyRecord::check("x11.verdict.snp_sigma3", 9.0 * b2 * (a2 - b2), s3, 1e-9));
    let irr_ts: usize = [0i64, 3, -3]
        .iter()
        .map(|&n| {
            classify_so3(ts, n)
                .unwrap()
                .solutions
                .iter()
                .filter(|s| !s.reducible)
                .count()
        })
        .sum();
    out.push(VerifyRecord::check_note(
        "x11.verdict.ts_no_irreducible",
        0.0,
        irr_ts as f64,
        0.0,
        "no irreducible invariant SO(3) instanton for the tri-Sasakian structure",
    ));
    let irr_snp = classify_so3(snp, 0)
        .unwrap()
        .solutions
        .iter()
        .filter(|s| !s.reducible)
        .count();
    out.push(VerifyRecord::check_note(
        "x11.verdict.snp_trivial_bundle_pair",
        2.0,
        irr_snp as f64,
        0.0,
        "the strictly nearly parallel structure carries the pair on the trivial bundle",
    ));

    // uniqueness of the Abelian instanton on the C = B, D = A subfamily
    // (b = 0) for A != B, and the 1-parameter family at A = B
    let p = G2Params::new(1, 1, 0.7, 1.3, 1.3, 0.7).unwrap();
    let rep = classify_abelian(&p, 4).unwrap();
    out.push(VerifyRecord::check(
        "x11.abelian_unique_b_zero",
        0.0,
        rep.solutions[0].conn.b.abs() + (rep.solutions.len() as f64 - 1.0)
            + rep.solutions[0].family_dim as f64,
        1e-14,
    ));
    let p_eq = G2Params::new(1, 1, 1.3, 1.3, 1.3, 1.3).unwrap();
    let rep = classify_abelian(&p_eq, 4).unwrap();
    out.push(VerifyRecord::check(
        "x11.abelian_family_at_A_eq_B",
        1.0,
        rep.solutions[0].family_dim as f64,
        0.0,
    ));

    // closed forms of the irreducible pairs and their printed curvature components
    let (a, b) = (0.7f64, 1.3f64);
    let p = G2Params::new(1, 1, a, b, b, a).unwrap();
    let rep = classify_so3(&p, 0).unwrap();
    let irr: Vec<_> = rep.solutions.iter().filter(|s| !s.reducible).collect();
    let a1_want = ((b.powi(4) - a.powi(4)) / (2.0 * b.powi(4))).sqrt();
    out.push(VerifyRecord::check(
        "x11.p0.a1",
        a1_want,
        irr.iter().map(|s| s.conn.a1.abs()).fold(0.0, f64::max),
        1e-12,
    ));
    out.push(VerifyRecord::check(
        "x11.p0.a4",
        -(a * a + b * b) / (SQRT2 * b * b),
        irr[0].conn.b,
        1e-12,
    ));
    // curvature of the positive branch against the printed components
    let pos = irr.iter().find(|s| s.conn.a1 > 0.0).unwrap();
    let f = curvature(&pos.conn, &p).unwrap();
    let x = a * a / (b * b);
    let root = (1.0 - x * x).sqrt();
    let mut worst = 0.0f64;
    for (form, coeffs) in [
        (&f.f1, vec![([1u8, 5], -(x + 1.0) * x), ([2, 6], 0.5 * (x + 1.0)), ([3, 7], 0.5 * (x + 1.0))]),
        (&f.f2, vec![([4, 5], root * x), ([2, 3], -0.5 * root), ([6, 7], 0.5 * root)]),
        (&f.f3, vec![([1, 4], root * x), ([3, 6], -0.5 * root), ([2, 7], 0.5 * root)]),
    ] {
        let mut expect = Form::zero(2);
        for (idx, v) in coeffs {
            expect = expect.add(&Form::monomial(&idx, v).unwrap());
        }
        worst = worst.max(form.sub(&expect).max_abs_coeff());
    }
    out.push(VerifyRecord::check("x11.p0.curvature_components", 0.0, worst, 1e-9));

    let rep = classify_so3(&p, 3).unwrap();
    let irr: Vec<_> = rep.solutions.iter().filter(|s| !s.reducible).collect();
    out.push(VerifyRecord::check(
        "x11.p3.a2",
        0.5 * (b * b / (a * a) - 1.0).sqrt(),
        irr.iter().map(|s| s.conn.a2.abs()).fold(0.0, f64::max),
        1e-12,
    ));
    out.push(VerifyRecord::check(
        "x11.p3.a4",
        -1.0 / (2.0 * SQRT2),
        irr[0].conn.b,
        1e-12,
    ));
    out.push(VerifyRecord::flagged(
        "x11.branch_b_prefactor",
        0.5 * (0.5 - 1.0),
        branch_b(&p, 2),
        "one printed variant has b = (1/2)(1/2 - BD/AC); the residual oracle and the \
         subfamily value a4 = -1/(2 sqrt2) require the prefactor 1/sqrt2, matching the \
         general classification",
    ));
    let pos = irr.iter().find(|s| s.conn.a2 > 0.0).unwrap();
    let f = curvature(&pos.conn, &p).unwrap();
    let root = (b * b / (a * a) - 1.0f64).sqrt();
    let mut worst = 0.0f64;
    for (form, coeffs) in [
        (
            &f.f1,
            vec![
                ([1u8, 5], -0.5),
                ([2, 6], -(1.0 - b * b / (2.0 * a * a))),
                ([3, 7], 1.0),
            ],
        ),
        (
            &f.f2,
            vec![([4, 6], root / SQRT2), ([1, 3], 0.5 * root / SQRT2), ([5, 7], -0.5 * root / SQRT2)],
        ),
        (
            &f.f3,
            vec![([2, 4], root / SQRT2), ([1, 7], -0.5 * root / SQRT2), ([3, 5], 0.5 * root / SQRT2)],
        ),
    ] {
        let mut expect = Form::zero(2);
        for (idx, v) in coeffs {
            expect = expect.add(&Form::monomial(&idx, v).unwrap());
        }
        worst = worst.max(form.sub(&expect).max_abs_coeff());
    }
    out.push(VerifyRecord::check("x11.p3.curvature_components", 0.0, worst, 1e-9));

    // collapsing rates in the fixed A = B = 1 metric
    let unit = G2Params::new(1, 1, 1.0, 1.0, 1.0, 1.0).unwrap();
    let unit_metric = unit.metric();
    let avals = [0.5f64, 0.25, 0.125, 0.0625];
    let mut logs_n0 = Vec::new();
    let mut logs_n3 = Vec::new();
    for &av in &avals {
        let p = G2Params::new(1, 1, av, 1.0, 1.0, av).unwrap();
        // n = 0 family: distance to the collapsed limit connection
        // -(1/sqrt2)(w4 T1 + w1 T2 + w5 T3)
        let rep = classify_so3(&p, 0).unwrap();
        let sol = rep
            .solutions
            .iter()
            .filter(|s| !s.reducible)
            .find(|s| s.conn.a1 < 0.0)
            .unwrap();
        let diff_t1 = Form::basis_one_form(4).scale(sol.conn.b + 1.0 / SQRT2);
        let diff_t2 = Form::basis_one_form(1).scale(sol.conn.a1 + 1.0 / SQRT2);
        let diff_t3 = Form::basis_one_form(5).scale(sol.conn.a1 + 1.0 / SQRT2);
        let dist = (diff_t1.norm_sq(&unit_metric).unwrap()
            + diff_t2.norm_sq(&unit_metric).unwrap()
            + diff_t3.norm_sq(&unit_metric).unwrap())
        .sqrt();
        logs_n0.push((av.ln(), dist.ln()));
        // n = 3 family: the e1-contraction of the curvature blows up
        let rep = classify_so3(&p, 3).unwrap();
        let sol = rep.solutions.iter().find(|s| !s.reducible).unwrap();
        let f = curvature(&sol.conn, &p).unwrap();
        let mut norm = 0.0;
        for fi in f.components() {
            norm += fi.contract(1).norm_sq(&unit_metric).unwrap();
        }
        logs_n3.push((av.ln(), norm.sqrt().ln()));
    }
    let slope = |pts: &[(f64, f64)]| {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    };
    out.push(VerifyRecord::check("x11.collapse.p0_slope", 2.0, slope(&logs_n0), 0.1));
    out.push(VerifyRecord::check(
        "x11.collapse.p3_contraction_slope",
        -1.0,
        slope(&logs_n3),
        0.1,
    ));
}

fn ym_records(out: &mut Vec<VerifyRecord>) {
    // Abelian energy argmin identity on random structures
    let mut rng = ChaCha8Rng::seed_from_u64(0x796d_3921);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let p = random_valid_params(&mut rng, 1, 2);
        let n = rng.gen_range(-5i64..=5);
        if n == 0 {
            continue;
        }
        let want = abelian_ym_critical_b(&p, n);
        let e = |b: f64| {
            crate::ym::ym_energy(
                &p,
                &crate::connections::InvariantConnection::reducible(
                    n,
                    b,
                    crate::connections::AnsatzCase::Reducible,
                ),
            )
            .unwrap()
        };
        let (e0, e1, e2) = (e(-1.0), e(0.0), e(1.0));
        let got = -0.5 * (e2 - e0) / (e2 - 2.0 * e1 + e0);
        worst = worst.max((got - want).abs());
    }
    out.push(VerifyRecord::check("ym.abelian_argmin", 0.0, worst, 1e-8));

    // every instanton on the nearly-parallel structures is Yang-Mills
    let mut worst_grad = 0.0f64;
    let mut worst_eq44 = 0.0f64;
    let mut np_points: Vec<G2Params> = Vec::new();
    for (k, l) in [(1i64, 2i64), (2, 3)] {
        for s in solve_np(k, l, 1.0, 6).unwrap() {
            np_points.push(s.params);
        }
    }
    np_points.push(x1m1_np_params());
    np_points.extend(x11_np_solutions());
    for p in &np_points {
        worst_eq44 = worst_eq44.max(ym_criticality_residual(p).unwrap().abs());
        let spec = p.frame();
        for n in spec.weights() {
            let Ok(rep) = classify_so3(p, n) else { continue };
            for sol in rep.solutions.iter().filter(|s| s.family_dim == 0) {
                let slots: Vec<CoeffSlot> = match active_slot(sol.conn.case) {
                    Some(a) => vec![CoeffSlot::B, a],
                    None => vec![CoeffSlot::B],
                };
                for g in ym_gradient(p, &sol.conn, &slots).unwrap() {
                    worst_grad = worst_grad.max(g.abs());
                }
            }
        }
    }
    out.push(VerifyRecord::check(
        "ym.gradient_at_np_instantons",
        0.0,
        worst_grad,
        1e-6,
    ));
    out.push(VerifyRecord::check(
        "ym.criticality_on_np_solutions",
        0.0,
        worst_eq44,
        1e-6,
    ));

    // saddle structure at the X(1,-1) irreducible instantons
    let p = x1m1_np_params();
    let rep = classify_so3(&p, -1).unwrap();
    let slots = [CoeffSlot::A3, CoeffSlot::B];
    let mut dets = Vec::new();
    let mut traces = Vec::new();
    for sol in rep.solutions.iter().filter(|s| !s.reducible) {
        let h = ym_hessian(&p, &sol.conn, &slots).unwrap();
        dets.push(h[0][0] * h[1][1] - h[0][1] * h[1][0]);
        traces.push(h[0][0] + h[1][1]);
    }
    out.push(VerifyRecord::check_note(
        "x1m1.ym.hessian_det_negative",
        1.0,
        if dets.iter().all(|&d| d < 0.0) { 1.0 } else { 0.0 },
        0.0,
        &format!("det(Hess E) = {:.6} at both irreducible instantons", dets[0]),
    ));
    out.push(VerifyRecord::check_note(
        "x1m1.ym.hessian_trace_positive",
        1.0,
        if traces.iter().all(|&t| t > 0.0) { 1.0 } else { 0.0 },
        0.0,
        &format!("tr(Hess E) = {:.6}", traces[0]),
    ));
    // the printed det/trace differ by one global positive energy scale;
    // fit it from the trace and compare the det under that scale
    let printed_det = (1_265_625.0 / 81_920_000.0) * (250_875.0 - 126_967.0 * 5f64.sqrt())
        / (4_580.0 - 1_364.0 * 5f64.sqrt());
    let printed_trace = (1_874.0 / 512_000.0) * (54_305.0 * 5f64.sqrt() - 28_931.0)
        / (402.0 - 56.0 * 5f64.sqrt());
    let kappa = printed_trace / traces[0];
    out.push(VerifyRecord::check_note(
        "x1m1.ym.hessian_scale_consistency",
        printed_det,
        kappa * kappa * dets[0],
        2.5e-3 * printed_det.abs(),
        &format!(
            "energy normalizations differ by a single positive factor kappa = {kappa:.6} \
             (fitted from the trace; close to 2, i.e. the printed energy omits the 1/2); \
             under kappa^2 the determinants agree to ~1e-3 relative. The printed pair is \
             not exactly consistent with any single scale (kappa from the determinant is \
             {:.6}), so the residual mismatch lies in the printed constants; the binding \
             checks are the signs above",
            (printed_det / dets[0]).sqrt()
        ),
    ));

    // landscape structure on P_-1 with a2 = 0
    let grid = landscape_grid(
        &p,
        -1,
        (CoeffSlot::A3, CoeffSlot::B),
        (-1.2, 1.2),
        (-1.2, 1.2),
        (81, 81),
    )
    .unwrap();
    let minima = grid
        .critical_points
        .iter()
        .filter(|c| c.index == 0)
        .count();
    let saddles = grid
        .critical_points
        .iter()
        .filter(|c| c.index == 1 && c.is_instanton)
        .count();
    out.push(VerifyRecord::check("x1m1.landscape.local_minima", 3.0, minima as f64, 0.0));
    out.push(VerifyRecord::check(
        "x1m1.landscape.instanton_saddles",
        2.0,
        saddles as f64,
        0.0,
    ));
    let global = grid
        .critical_points
        .iter()
        .min_by(|u, v| u.energy.partial_cmp(&v.energy).unwrap())
        .unwrap();
    out.push(VerifyRecord::check_note(
        "x1m1.landscape.global_min_is_reducible",
        1.0,
        if global.is_instanton && global.a.abs() < 1e-6 {
            1.0
        } else {
            0.0
        },
        0.0,
        "the reducible instanton minimizes the invariant energy on the slice",
    ));

    // reducible instanton sits at index 0 in the plane
    let red = rep.solutions.iter().find(|s| s.reducible).unwrap();
    let point = ym_point(&p, &red.conn, &slots).unwrap();
    out.push(VerifyRecord::check("x1m1.ym.reducible_index", 0.0, point.index as f64, 0.0));
}

fn topology_records(out: &mut Vec<VerifyRecord>) {
    let mut mismatches = 0u32;
    for k in -20..=20i64 {
        for l in -20..=20i64 {
            if k == 0 && l == 0 {
                continue;
            }
            if weight_bundle_classes(k, l).unwrap() != weight_bundle_classes_closed_form(k, l).unwrap()
            {
                mismatches += 1;
            }
        }
    }
    out.push(VerifyRecord::check(
        "topology.weight_bundles_closed_form",
        0.0,
        mismatches as f64,
        0.0,
    ));
}

fn instanton_oracle_records(out: &mut Vec<VerifyRecord>) {
    // closed forms pass the curvature oracle on 500 random draws
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f72_6163);
    let mut worst = 0.0f64;
    let mut count = 0usize;
    while count < 500 {
        let (k, l) = [(1i64, 2i64), (2, 3), (1, -1), (3, 5), (1, 1)][rng.gen_range(0..5)];
        let p = random_valid_params(&mut rng, k, l);
        let spec = p.frame();
        let wts = spec.weights();
        let n = wts[rng.gen_range(0..3)];
        let Ok(rep) = classify_so3(&p, n) else { continue };
        for sol in &rep.solutions {
            worst = worst.max(sol.residual);
            count += 1;
        }
    }
    out.push(VerifyRecord::check(
        "oracle.closed_forms_residual_500",
        0.0,
        worst,
        1e-9,
    ));
}

/// Run the reproduction suite, optionally keeping only claim ids with the
/// given prefix. Record order is deterministic.
pub fn run_verify(filter: Option<&str>) -> Vec<VerifyRecord> {
    let mut out = Vec::new();
    structure_records(&mut out);
    example_records(&mut out);
    example34_records(&mut out);
    x1m1_records(&mut out);
    deformation_records(&mut out);
    squash_records(&mut out);
    x11_records(&mut out);
    ym_records(&mut out);
    topology_records(&mut out);
    instanton_oracle_records(&mut out);
    if let Some(prefix) = filter {
        out.retain(|r| r.claim_id.starts_with(prefix));
    }
    out
}

/// True when no record failed (flagged records do not fail the run).
pub fn all_clear(records: &[VerifyRecord]) -> bool {
    records.iter().all(|r| r.status != VerifyStatus::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_keeps_prefix() {
        let recs = run_verify(Some("squash"));
        assert!(!recs.is_empty());
        assert!(recs.iter().all(|r| r.claim_id.starts_with("squash")));
    }

    #[test]
    fn squash_records_pass() {
        let recs = run_verify(Some("squash"));
        assert!(all_clear(&recs));
        assert!(recs
            .iter()
            .any(|r| r.status == VerifyStatus::Flagged && r.claim_id.contains("printed")));
    }
}
