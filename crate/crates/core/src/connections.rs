//! Invariant connections on the homogeneous SO(3)-bundles P_n over X_{k,l}
//! and the classification of G2-instantons among them.
//!
//! An invariant connection is the canonical part -(n/2) h/(sqrt6 s) ox T1
//! plus an equivariant 1-form: a T1-valued piece b w4 (extended by a1_extra,
//! a5 on w1, w5 when k = l) and, for each root plane whose circle weight
//! equals n, a coefficient pairing that plane with <T2, T3>. Instanton
//! existence on the weight bundles is governed by the discriminants
//!
//!   sigma1 = 3 (m/2 - s AD/BC) Delta + (k-l)/2 Gamma
//!   sigma2 = 3 (k/2 - s BD/AC) Delta + (l-m)/2 Gamma
//!   sigma3 = 3 (l/2 - s CD/AB) Delta + (m-k)/2 Gamma
//!
//! with Gamma = A^2B^2(m-k) + A^2C^2(l-m) + B^2C^2(k-l) and
//! Delta = A^2B^2 l + A^2C^2 k + B^2C^2 m. Every closed-form coefficient
//! emitted here is validated against the assembled-curvature residual
//! |F ^ psi|, which is the single source of truth.

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{so3_curvature, Form, So3Form};
use crate::g2::G2Params;
use crate::su3::{frame_data, FrameError, FrameSpec};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error, PartialEq)]
pub enum ConnectionsError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("curvature retains a vertical leg of magnitude {0:.3e}")]
    NonBasicCurvature(f64),
    #[error(
        "X({k},{l}) has a zero-weight root plane outside the modeled ansatz; \
         classify on the Weyl-rotated space X({k2},{l2}) instead"
    )]
    WeylReducible { k: i64, l: i64, k2: i64, l2: i64 },
    #[error("deformation determinant requires a connection in the n = k - l shape")]
    NotCaseOne,
    #[error("sweep requires exactly one varying axis with steps >= 1")]
    BadSweepRange,
}

/// Connection ansatz shapes, split by which root-plane weights match n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnsatzCase {
    /// no weight matches n: every invariant connection is reducible
    Reducible,
    /// n = k - l
    Weight1,
    /// n = l - m
    Weight2,
    /// n = m - k
    Weight3,
    /// n = l - m = m - k (so n = l = -k): a2 and a3 blocks, angle beta
    Angled23,
    /// n = k - l = l - m (so n = k, l = 0): a1 and a2 blocks, angle beta
    Angled12,
    /// n = k - l = m - k (so n = m, k = 0): a1 and a3 blocks, angle alpha
    Angled13,
    /// k = l, n not a weight: T1-valued b, a1_extra, a5 only
    X11Reducible,
    /// k = l, n = 0: a1 block plus the T1 extras
    X11Trivial,
    /// k = l, n = 3k: a2 block plus the T1 extras
    X11WeightPlus,
    /// k = l, n = -3k: a3 block plus the T1 extras
    X11WeightMinus,
}

/// Free-variable mask of an ansatz.
#[derive(Debug, Clone, Serialize)]
pub struct AnsatzTemplate {
    pub case: AnsatzCase,
    pub free: Vec<&'static str>,
    /// shape notes, e.g. the gauge fixing that reduced a full so(3)-valued map
    pub note: Option<&'static str>,
}

/// Coefficients of an invariant connection on P_n.
///
/// Coefficients outside the active case are exactly zero. The connection is
/// irreducible iff one of a1, a2, a3 is nonzero.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InvariantConnection {
    pub n: i64,
    /// w4 ox T1 coefficient
    pub b: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// w1 ox T1 coefficient, k = l only
    pub a1_extra: f64,
    /// w5 ox T1 coefficient, k = l only
    pub a5: f64,
    pub alpha: f64,
    pub beta: f64,
    pub case: AnsatzCase,
}

impl InvariantConnection {
    pub fn reducible(n: i64, b: f64, case: AnsatzCase) -> Self {
        InvariantConnection {
            n,
            b,
            a1: 0.0,
            a2: 0.0,
            a3: 0.0,
            a1_extra: 0.0,
            a5: 0.0,
            alpha: 0.0,
            beta: 0.0,
            case,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.a1 != 0.0 || self.a2 != 0.0 || self.a3 != 0.0
    }

    /// The active weight-plane coefficient (0 when reducible).
    pub fn a_active(&self) -> f64 {
        if self.a1 != 0.0 {
            self.a1
        } else if self.a2 != 0.0 {
            self.a2
        } else {
            self.a3
        }
    }

    /// The so(3)-valued 1-form: canonical part plus the equivariant piece.
    pub fn assemble(&self, spec: &FrameSpec) -> So3Form {
        let mut t1 =
            Form::basis_one_form(8).scale(-(self.n as f64) / (2.0 * 6f64.sqrt() * spec.s));
        if self.b != 0.0 {
            t1 = t1.add(&Form::basis_one_form(4).scale(self.b));
        }
        if self.a1_extra != 0.0 {
            t1 = t1.add(&Form::basis_one_form(1).scale(self.a1_extra));
        }
        if self.a5 != 0.0 {
            t1 = t1.add(&Form::basis_one_form(5).scale(self.a5));
        }
        let mut t2 = Form::zero(1);
        let mut t3 = Form::zero(1);
        // plane pairings w_lo ox T2 + w_hi ox T3, rotated by the case angle
        let mut add_block = |coeff: f64, lo: u8, hi: u8, angle: f64| {
            if coeff == 0.0 {
                return;
            }
            let (ca, sa) = (angle.cos(), angle.sin());
            t2 = t2
                .add(&Form::basis_one_form(lo).scale(coeff * ca))
                .add(&Form::basis_one_form(hi).scale(-coeff * sa));
            t3 = t3
                .add(&Form::basis_one_form(lo).scale(coeff * sa))
                .add(&Form::basis_one_form(hi).scale(coeff * ca));
        };
        match self.case {
            AnsatzCase::Angled23 => {
                add_block(self.a2, 2, 6, 0.0);
                add_block(self.a3, 3, 7, self.beta);
            }
            AnsatzCase::Angled12 => {
                add_block(self.a1, 1, 5, 0.0);
                add_block(self.a2, 2, 6, self.beta);
            }
            AnsatzCase::Angled13 => {
                add_block(self.a1, 1, 5, 0.0);
                add_block(self.a3, 3, 7, self.alpha);
            }
            _ => {
                add_block(self.a1, 1, 5, 0.0);
                add_block(self.a2, 2, 6, 0.0);
                add_block(self.a3, 3, 7, 0.0);
            }
        }
        So3Form::new(t1, t2, t3)
    }
}

/// One classified solution (or family representative).
#[derive(Debug, Clone, Serialize)]
pub struct InstantonSolution {
    pub conn: InvariantConnection,
    /// inf-norm of F ^ psi at the representative
    pub residual: f64,
    pub reducible: bool,
    /// 0 for an isolated solution
    pub family_dim: u8,
    pub free_directions: Vec<&'static str>,
    /// one member of a +-a gauge pair
    pub gauge_pair: bool,
}

/// Classification output for one (structure, bundle) pair.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    #[serde(flatten)]
    pub params: G2Params,
    pub n: i64,
    pub gamma: f64,
    pub delta: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    pub solutions: Vec<InstantonSolution>,
    pub notes: Vec<String>,
}

/// Gamma and Delta, the parameter polynomials behind the Abelian
/// classification.
pub fn gamma_delta(p: &G2Params) -> (f64, f64) {
    let spec = p.frame();
    let (kf, lf, mf) = (spec.k as f64, spec.l as f64, spec.m as f64);
    let (a2, b2, c2) = (p.a * p.a, p.b * p.b, p.c * p.c);
    let gamma = a2 * b2 * (mf - kf) + a2 * c2 * (lf - mf) + b2 * c2 * (kf - lf);
    let delta = a2 * b2 * lf + a2 * c2 * kf + b2 * c2 * mf;
    (gamma, delta)
}

/// Existence discriminants for the three weight bundles. One formula covers
/// every (k, l) including k = l, where sigma1 reduces to -3 Delta (1 + AD/BC).
pub fn sigmas(p: &G2Params) -> (f64, f64, f64) {
    let spec = p.frame();
    let (kf, lf, mf, s) = (spec.k as f64, spec.l as f64, spec.m as f64, spec.s);
    let (gamma, delta) = gamma_delta(p);
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let s1 = 3.0 * (mf / 2.0 - s * a * d / (b * c)) * delta + 0.5 * (kf - lf) * gamma;
    let s2 = 3.0 * (kf / 2.0 - s * b * d / (a * c)) * delta + 0.5 * (lf - mf) * gamma;
    let s3 = 3.0 * (lf / 2.0 - s * c * d / (a * b)) * delta + 0.5 * (mf - kf) * gamma;
    (s1, s2, s3)
}

fn is_x11_ray(spec: &FrameSpec) -> bool {
    spec.k == spec.l
}

fn weyl_reducible(spec: &FrameSpec) -> Option<(i64, i64)> {
    if spec.k != spec.l && (spec.l == spec.m || spec.m == spec.k) {
        // rotate (k,l,m) -> (l,m,k) until the repeated weight lands on V1
        Some((spec.l, spec.m))
    } else {
        None
    }
}

/// Which coefficients are free on P_n over X_{k,l}.
pub fn ansatz(k: i64, l: i64, n: i64) -> Result<AnsatzTemplate, ConnectionsError> {
    let spec = FrameSpec::new(k, l)?;
    if let Some((k2, l2)) = weyl_reducible(&spec) {
        return Err(ConnectionsError::WeylReducible { k, l, k2, l2 });
    }
    let [w1, w2, w3] = spec.weights();
    let x11 = is_x11_ray(&spec);
    let mut free: Vec<&'static str> = vec!["b"];
    if x11 {
        free.push("a1_extra");
        free.push("a5");
    }
    let m1 = n == w1;
    let m2 = n == w2;
    let m3 = n == w3;
    let (case, note) = match (x11, m1, m2, m3) {
        (true, true, false, false) => {
            free.push("a1");
            (
                AnsatzCase::X11Trivial,
                Some("gauge-fixed slice of the full so(3)-valued map on <w1, w4, w5>"),
            )
        }
        (true, false, true, false) => {
            free.push("a2");
            (AnsatzCase::X11WeightPlus, None)
        }
        (true, false, false, true) => {
            free.push("a3");
            (AnsatzCase::X11WeightMinus, None)
        }
        (true, false, false, false) => (AnsatzCase::X11Reducible, None),
        (false, false, false, false) => (AnsatzCase::Reducible, None),
        (false, true, false, false) => {
            free.push("a1");
            (AnsatzCase::Weight1, None)
        }
        (false, false, true, false) => {
            free.push("a2");
            (AnsatzCase::Weight2, None)
        }
        (false, false, false, true) => {
            free.push("a3");
            (AnsatzCase::Weight3, None)
        }
        (false, false, true, true) => {
            free.push("a2");
            free.push("a3");
            free.push("beta");
            (AnsatzCase::Angled23, None)
        }
        (false, true, true, false) => {
            free.push("a1");
            free.push("a2");
            free.push("beta");
            (AnsatzCase::Angled12, None)
        }
        (false, true, false, true) => {
            free.push("a1");
            free.push("a3");
            free.push("alpha");
            (AnsatzCase::Angled13, None)
        }
        _ => unreachable!("three equal weights force k = l = m = 0"),
    };
    Ok(AnsatzTemplate { case, free, note })
}

/// inf-norm of F ^ psi over the three so(3) components; also asserts that
/// the curvature is basic (no h-leg above 1e-12 of its own scale).
pub fn instanton_residual(
    conn: &InvariantConnection,
    p: &G2Params,
) -> Result<f64, ConnectionsError> {
    let f = curvature(conn, p)?;
    let psi = p.psi();
    let mut worst = 0.0f64;
    for fi in f.components() {
        worst = worst.max(fi.wedge(&psi).max_abs_coeff());
    }
    Ok(worst)
}

/// Assembled curvature of a connection (basic part, vertical residue
/// checked and stripped).
pub fn curvature(conn: &InvariantConnection, p: &G2Params) -> Result<So3Form, ConnectionsError> {
    let data = frame_data(p.k, p.l)?;
    let a = conn.assemble(&data.spec);
    let f = so3_curvature(&a, &data.constants);
    let tol = 1e-12 * f.max_abs_coeff().max(1.0);
    if f.max_vertical_coeff() > tol {
        return Err(ConnectionsError::NonBasicCurvature(f.max_vertical_coeff()));
    }
    Ok(So3Form::new(
        f.f1.drop_vertical(tol).expect("checked"),
        f.f2.drop_vertical(tol).expect("checked"),
        f.f3.drop_vertical(tol).expect("checked"),
    ))
}

fn near_zero(value: f64, scale: f64) -> bool {
    value.abs() <= 1e-10 * scale.max(1e-30)
}

/// Classify invariant U(1)-instantons on the degree-n homogeneous line
/// bundle (equivalently, reducible SO(3) ones).
pub fn classify_abelian(p: &G2Params, n: i64) -> Result<ClassificationReport, ConnectionsError> {
    let spec = p.frame();
    if let Some((k2, l2)) = weyl_reducible(&spec) {
        return Err(ConnectionsError::WeylReducible { k: p.k, l: p.l, k2, l2 });
    }
    let (gamma, delta) = gamma_delta(p);
    let (s1, s2, s3) = sigmas(p);
    let (a2, b2, c2) = (p.a * p.a, p.b * p.b, p.c * p.c);
    let (kf, lf, mf) = (spec.k as f64, spec.l as f64, spec.m as f64);
    let scale_delta = a2 * b2 * lf.abs() + a2 * c2 * kf.abs() + b2 * c2 * mf.abs();
    let scale_gamma =
        a2 * b2 * (mf - kf).abs() + a2 * c2 * (lf - mf).abs() + b2 * c2 * (kf - lf).abs();
    let delta_zero = near_zero(delta, scale_delta);
    let gamma_zero = near_zero(gamma, scale_gamma);
    let x11 = is_x11_ray(&spec);
    let ad_bc = p.a * p.d + p.b * p.c;
    let extras_free = x11 && near_zero(ad_bc, (p.a * p.d).abs() + (p.b * p.c).abs());

    let base_case = if x11 {
        match ansatz(p.k, p.l, n)?.case {
            AnsatzCase::X11Trivial => AnsatzCase::X11Trivial,
            AnsatzCase::X11WeightPlus => AnsatzCase::X11WeightPlus,
            AnsatzCase::X11WeightMinus => AnsatzCase::X11WeightMinus,
            _ => AnsatzCase::X11Reducible,
        }
    } else {
        AnsatzCase::Reducible
    };

    let mut notes = Vec::new();
    let mut solutions = Vec::new();
    let push = |conn: InvariantConnection,
                    family_dim: u8,
                    free_directions: Vec<&'static str>,
                    solutions: &mut Vec<InstantonSolution>|
     -> Result<(), ConnectionsError> {
        let residual = instanton_residual(&conn, p)?;
        solutions.push(InstantonSolution {
            conn,
            residual,
            reducible: true,
            family_dim,
            free_directions,
            gauge_pair: false,
        });
        Ok(())
    };

    let extra_dims: u8 = if extras_free { 2 } else { 0 };
    let extra_dirs: Vec<&'static str> = if extras_free {
        vec!["a1_extra", "a5"]
    } else {
        vec![]
    };
    if extras_free {
        notes.push("AD + BC = 0: the T1-valued w1, w5 directions are flat and free".into());
    }

    if !delta_zero {
        let b = -(n as f64) * gamma / (6.0 * SQRT2 * spec.s * delta);
        push(
            InvariantConnection::reducible(n, b, base_case),
            extra_dims,
            extra_dirs,
            &mut solutions,
        )?;
        if extra_dims == 0 {
            notes.push("Delta != 0: unique invariant Abelian instanton".into());
        }
    } else if !gamma_zero {
        if n == 0 {
            let mut dirs = vec!["b"];
            dirs.extend(extra_dirs);
            push(
                InvariantConnection::reducible(0, 0.0, base_case),
                1 + extra_dims,
                dirs,
                &mut solutions,
            )?;
            notes.push("Delta = 0, Gamma != 0: 1-parameter family on the trivial bundle".into());
        } else {
            notes.push(format!(
                "Delta = 0, Gamma != 0: no invariant Abelian instanton on bundle {n}"
            ));
        }
    } else {
        let mut dirs = vec!["b"];
        dirs.extend(extra_dirs);
        push(
            InvariantConnection::reducible(n, 0.0, base_case),
            1 + extra_dims,
            dirs,
            &mut solutions,
        )?;
        notes.push("Delta = Gamma = 0: 1-parameter family on every bundle".into());
    }

    Ok(ClassificationReport {
        params: *p,
        n,
        gamma,
        delta,
        sigma1: s1,
        sigma2: s2,
        sigma3: s3,
        solutions,
        notes,
    })
}

/// b coefficient of the irreducible branch pairing root plane `which`
/// (1, 2 or 3) with <T2, T3>.
pub fn branch_b(p: &G2Params, which: u8) -> f64 {
    let spec = p.frame();
    let (kf, lf, mf, s) = (spec.k as f64, spec.l as f64, spec.m as f64, spec.s);
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    match which {
        1 => (mf / (2.0 * s) - a * d / (b * c)) / SQRT2,
        2 => (kf / (2.0 * s) - b * d / (a * c)) / SQRT2,
        3 => (lf / (2.0 * s) - c * d / (a * b)) / SQRT2,
        _ => unreachable!(),
    }
}

/// Squared irreducible coefficient on root plane `which` (may be negative,
/// in which case no irreducible instanton exists there).
pub fn branch_a_sq(p: &G2Params, which: u8) -> f64 {
    let spec = p.frame();
    let ss = spec.s * spec.s;
    let (a2, b2, c2) = (p.a * p.a, p.b * p.b, p.c * p.c);
    let (s1, s2, s3) = sigmas(p);
    match which {
        1 => s1 / (12.0 * b2 * c2 * ss),
        2 => s2 / (12.0 * a2 * c2 * ss),
        3 => s3 / (12.0 * a2 * b2 * ss),
        _ => unreachable!(),
    }
}

/// Classify invariant SO(3)-instantons on P_n: the reducible ones from the
/// Abelian classification plus, when the matching discriminant is positive,
/// the +-a gauge pair of irreducible ones. Angled cases reduce to their two
/// weight branches with the angle gauged to zero.
pub fn classify_so3(p: &G2Params, n: i64) -> Result<ClassificationReport, ConnectionsError> {
    let spec = p.frame();
    let template = ansatz(p.k, p.l, n)?;
    let mut report = classify_abelian(p, n)?;
    let sigma = [report.sigma1, report.sigma2, report.sigma3];
    let sigma_scale = sigma.iter().fold(0.0f64, |acc, s| acc.max(s.abs()));

    if matches!(
        template.case,
        AnsatzCase::X11Reducible | AnsatzCase::Reducible
    ) {
        report.notes.push(
            "no root-plane weight matches n: every invariant connection is reducible".into(),
        );
        return Ok(report);
    }

    let [w1, w2, w3] = spec.weights();
    for (which, w) in [(1u8, w1), (2, w2), (3, w3)] {
        if n != w {
            continue;
        }
        let sig = sigma[(which - 1) as usize];
        if near_zero(sig, sigma_scale) {
            report.notes.push(format!(
                "sigma{which} = 0: the irreducible pair merges into the reducible instanton \
                 (obstructed boundary)"
            ));
            continue;
        }
        if sig < 0.0 {
            report.notes.push(format!(
                "sigma{which} < 0: no irreducible instanton on this branch"
            ));
            continue;
        }
        let a_val = branch_a_sq(p, which).sqrt();
        let b_val = branch_b(p, which);
        for signed in [a_val, -a_val] {
            let mut conn = InvariantConnection::reducible(n, b_val, template.case);
            match which {
                1 => conn.a1 = signed,
                2 => conn.a2 = signed,
                3 => conn.a3 = signed,
                _ => unreachable!(),
            }
            let residual = instanton_residual(&conn, p)?;
            report.solutions.push(InstantonSolution {
                conn,
                residual,
                reducible: false,
                family_dim: 0,
                free_directions: vec![],
                gauge_pair: true,
            });
        }
    }
    Ok(report)
}

/// Determinant of the 2x2 invariant deformation system at a connection in
/// the n = k - l shape:
///
///   det = 32 B^3 C^3 s^2 a1^2 + (4ADs - 2BCm + 4 sqrt2 BC b s) Delta.
///
/// At the irreducible instanton coefficients this equals (8BC/3) sigma1; at
/// the reducible instanton it equals -(4BC/3) sigma1. Either way it vanishes
/// exactly at the merge point sigma1 = 0, where the limiting reducible
/// instanton is obstructed.
pub fn deformation_det(p: &G2Params, conn: &InvariantConnection) -> Result<f64, ConnectionsError> {
    let spec = p.frame();
    if conn.n != spec.k - spec.l {
        return Err(ConnectionsError::NotCaseOne);
    }
    let (_, delta) = gamma_delta(p);
    let (b3, c3) = (p.b.powi(3), p.c.powi(3));
    let s = spec.s;
    Ok(32.0 * b3 * c3 * s * s * conn.a1 * conn.a1
        + (4.0 * p.a * p.d * s - 2.0 * p.b * p.c * spec.m as f64
            + 4.0 * SQRT2 * p.b * p.c * conn.b * s)
            * delta)
}

/// Which parameter varies in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    A,
    B,
    C,
    D,
}

impl Axis {
    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "A" | "a" => Some(Axis::A),
            "B" | "b" => Some(Axis::B),
            "C" | "c" => Some(Axis::C),
            "D" | "d" => Some(Axis::D),
            _ => None,
        }
    }

    pub fn apply(&self, p: &G2Params, t: f64) -> G2Params {
        let mut q = *p;
        match self {
            Axis::A => q.a = t,
            Axis::B => q.b = t,
            Axis::C => q.c = t,
            Axis::D => q.d = t,
        }
        q
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub param_value: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    /// +sqrt branch of the irreducible coefficient, NaN where sigma <= 0
    pub a_plus: f64,
    pub a_minus: f64,
    /// Abelian instanton coefficient, NaN where none exists on this bundle
    pub b_reducible: f64,
    /// deformation determinant continued through the crossing,
    /// = (8BC/3) sigma1 when n = k - l; NaN otherwise
    pub def_det: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub k: i64,
    pub l: i64,
    pub n: i64,
    pub axis: Axis,
    pub rows: Vec<SweepRow>,
}

/// Sweep one structure parameter, reporting discriminants and instanton
/// branches per row.
pub fn sweep(
    base: &G2Params,
    n: i64,
    axis: Axis,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<SweepTable, ConnectionsError> {
    if steps == 0 {
        return Err(ConnectionsError::BadSweepRange);
    }
    let spec = base.frame();
    if let Some((k2, l2)) = weyl_reducible(&spec) {
        return Err(ConnectionsError::WeylReducible {
            k: base.k,
            l: base.l,
            k2,
            l2,
        });
    }
    let [w1, w2, w3] = spec.weights();
    let which = if n == w1 {
        Some(1u8)
    } else if n == w2 {
        Some(2)
    } else if n == w3 {
        Some(3)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = if steps == 1 {
            from
        } else {
            from + (to - from) * (i as f64) / ((steps - 1) as f64)
        };
        let p = axis.apply(base, t);
        if p.a == 0.0 || p.b == 0.0 || p.c == 0.0 || p.d == 0.0 {
            rows.push(SweepRow {
                param_value: t,
                sigma1: f64::NAN,
                sigma2: f64::NAN,
                sigma3: f64::NAN,
                a_plus: f64::NAN,
                a_minus: f64::NAN,
                b_reducible: f64::NAN,
                def_det: f64::NAN,
            });
            continue;
        }
        let (s1, s2, s3) = sigmas(&p);
        let (gamma, delta) = gamma_delta(&p);
        let (a2, b2, c2) = (p.a * p.a, p.b * p.b, p.c * p.c);
        let (kf, lf, mf) = (spec.k as f64, spec.l as f64, spec.m as f64);
        let scale_delta = a2 * b2 * lf.abs() + a2 * c2 * kf.abs() + b2 * c2 * mf.abs();
        let scale_gamma =
            a2 * b2 * (mf - kf).abs() + a2 * c2 * (lf - mf).abs() + b2 * c2 * (kf - lf).abs();
        let b_reducible = if !near_zero(delta, scale_delta) {
            -(n as f64) * gamma / (6.0 * SQRT2 * spec.s * delta)
        } else if n == 0 || near_zero(gamma, scale_gamma) {
            0.0 // representative of the b-family
        } else {
            f64::NAN
        };
        let (a_plus, a_minus) = match which {
            Some(w) => {
                let asq = branch_a_sq(&p, w);
                if asq > 0.0 {
                    (asq.sqrt(), -asq.sqrt())
                } else {
                    (f64::NAN, f64::NAN)
                }
            }
            None => (f64::NAN, f64::NAN),
        };
        let def_det = if n == spec.k - spec.l {
            // formal continuation through the crossing: the Delta term of
            // the determinant vanishes identically at the irreducible b
            8.0 * p.b * p.c * s1 / 3.0
        } else {
            f64::NAN
        };
        rows.push(SweepRow {
            param_value: t,
            sigma1: s1,
            sigma2: s2,
            sigma3: s3,
            a_plus,
            a_minus,
            b_reducible,
            def_det,
        });
    }
    Ok(SweepTable {
        k: base.k,
        l: base.l,
        n,
        axis,
        rows,
    })
}

/// Bisection on t -> sigma_{which}(p with axis = t); assumes a sign change.
pub fn bisect_sigma_zero(
    base: &G2Params,
    axis: Axis,
    which: u8,
    mut lo: f64,
    mut hi: f64,
) -> Option<f64> {
    let eval = |t: f64| {
        let p = axis.apply(base, t);
        let (s1, s2, s3) = sigmas(&p);
        match which {
            1 => s1,
            2 => s2,
            _ => s3,
        }
    };
    let (mut flo, fhi) = (eval(lo), eval(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = eval(mid);
        if fm == 0.0 || (hi - lo).abs() < 1e-14 {
            return Some(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Some(0.5 * (lo + hi))
}
