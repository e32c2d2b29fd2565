//! The 4-parameter family of coclosed G2-structures on X_{k,l}:
//!
//!   phi = ABC (w123 - w167 + w257 - w356) - D w4 ^ (A^2 w15 + B^2 w26 + C^2 w37)
//!
//! with metric g = A^2(w1^2+w5^2) + B^2(w2^2+w6^2) + C^2(w3^2+w7^2) + D^2 w4^2
//! and psi = *phi. The orientation is sign(D): with that choice *phi equals
//! the closed-form psi below for every sign pattern of (A,B,C,D), and
//! phi ^ psi = 7 vol with vol = A^2 B^2 C^2 D w1..7.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{DiagMetric, ExteriorError, Form};
use crate::su3::{frame_data, FrameError, FrameSpec};

#[derive(Debug, Error, PartialEq)]
pub enum G2Error {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("scale parameter {0} must be nonzero")]
    ZeroScale(char),
}

/// A point (k, l, A, B, C, D) of the structure family. The canonical
/// representative of the Z2 x Z2 sign action has A > 0 and B > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct G2Params {
    pub k: i64,
    pub l: i64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

impl G2Params {
    pub fn new(k: i64, l: i64, a: f64, b: f64, c: f64, d: f64) -> Result<Self, G2Error> {
        FrameSpec::new(k, l)?;
        for (name, v) in [('A', a), ('B', b), ('C', c), ('D', d)] {
            if v == 0.0 || !v.is_finite() {
                return Err(G2Error::ZeroScale(name));
            }
        }
        Ok(G2Params { k, l, a, b, c, d })
    }

    pub fn frame(&self) -> FrameSpec {
        FrameSpec::new(self.k, self.l).expect("validated at construction")
    }

    /// The defining 3-form, stored over canonical ascending monomials:
    /// -D w4 ^ A^2 w15 = +A^2 D w145 and cyclic.
    pub fn phi(&self) -> Form {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let abc = a * b * c;
        let mut f = Form::zero(3);
        for (idx, v) in [
            ([1u8, 2, 3], abc),
            ([1, 6, 7], -abc),
            ([2, 5, 7], abc),
            ([3, 5, 6], -abc),
            ([1, 4, 5], a * a * d),
            ([2, 4, 6], b * b * d),
            ([3, 4, 7], c * c * d),
        ] {
            f = f.add(&Form::monomial(&idx, v).unwrap());
        }
        f
    }

    /// The 4-form psi = *phi in closed form.
    pub fn psi(&self) -> Form {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let abcd = a * b * c * d;
        let mut f = Form::zero(4);
        for (idx, v) in [
            ([4u8, 5, 6, 7], abcd),
            ([2, 3, 4, 5], -abcd),
            ([1, 3, 4, 6], abcd),
            ([1, 2, 4, 7], -abcd),
            ([2, 3, 6, 7], b * b * c * c),
            ([1, 3, 5, 7], a * a * c * c),
            ([1, 2, 5, 6], a * a * b * b),
        ] {
            f = f.add(&Form::monomial(&idx, v).unwrap());
        }
        f
    }

    /// Diagonal metric scales (A^2, B^2, C^2, D^2, A^2, B^2, C^2) with
    /// orientation sign(D).
    pub fn metric(&self) -> DiagMetric {
        let (a2, b2, c2, d2) = (
            self.a * self.a,
            self.b * self.b,
            self.c * self.c,
            self.d * self.d,
        );
        DiagMetric::new([a2, b2, c2, d2, a2, b2, c2], self.d.signum())
            .expect("scales are squares of nonzero parameters")
    }

    /// Riemannian volume form: coefficient A^2 B^2 C^2 D on w1..7 (the sign
    /// carries the orientation). phi ^ psi = 7 * volume.
    pub fn volume(&self) -> Form {
        let coeff = self.a * self.a * self.b * self.b * self.c * self.c * self.d;
        Form::monomial(&[1, 2, 3, 4, 5, 6, 7], coeff).unwrap()
    }

    /// Scalar torsion: closed form and the projection <d(phi), psi>/|psi|^2.
    /// The two routes agree to 1e-9 relative on valid parameters.
    pub fn tau0(&self) -> Result<Tau0, G2Error> {
        let spec = self.frame();
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (kf, lf, mf, s) = (spec.k as f64, spec.l as f64, spec.m as f64, spec.s);
        let closed = (2f64.sqrt() / 7.0)
            * (4.0 * (a / (b * c) + b / (a * c) + c / (a * b))
                - (d / s) * (lf / (c * c) + kf / (b * b) + mf / (a * a)));
        let data = frame_data(self.k, self.l)?;
        let g = self.metric();
        let psi = self.psi();
        // d(phi) is basic; cancellation leaves only sub-1e-12 vertical residue
        let dphi = self.phi().d(&data.constants);
        let tol = 1e-12 * dphi.max_abs_coeff().max(1.0);
        let dphi = dphi.drop_vertical(tol).expect("d(phi) must be basic");
        let projected = dphi
            .inner(&psi, &g)
            .and_then(|num| Ok(num / psi.norm_sq(&g)?))
            .expect("phi and psi are basic");
        Ok(Tau0 { closed, projected })
    }

    /// Residual 3-form *(d(phi) - tau0 psi); vanishes iff the structure is
    /// nearly parallel with lambda = tau0.
    pub fn tau3_residual(&self) -> Result<Form, G2Error> {
        let data = frame_data(self.k, self.l)?;
        let tau0 = self.tau0()?.closed;
        let g = self.metric();
        let rest = self.phi().d(&data.constants).add_scaled(&self.psi(), -tau0);
        let tol = 1e-12 * rest.max_abs_coeff().max(1.0);
        let rest = rest.drop_vertical(tol).expect("d(phi) must be basic");
        Ok(rest.hodge(&g).expect("d(phi) and psi are basic"))
    }

    /// Canonical representative under the sign action generated by
    /// (A,B) -> (-A,-B) and (B,C) -> (-B,-C); phi is unchanged.
    pub fn canonicalize(&self) -> G2Params {
        let mut p = *self;
        if p.a < 0.0 && p.b < 0.0 {
            p.a = -p.a;
            p.b = -p.b;
        } else if p.a < 0.0 {
            // (A,B) -> (-A,-B) then (B,C) -> (-B,-C)
            p.a = -p.a;
            p.c = -p.c;
        } else if p.b < 0.0 {
            p.b = -p.b;
            p.c = -p.c;
        }
        p
    }

    /// The four members of the Z2 x Z2 orbit.
    pub fn sign_orbit(&self) -> [G2Params; 4] {
        let p = *self;
        let flip = |sa: f64, sb: f64, sc: f64| G2Params {
            a: sa * p.a,
            b: sb * p.b,
            c: sc * p.c,
            ..p
        };
        [p, flip(-1.0, -1.0, 1.0), flip(1.0, -1.0, -1.0), flip(-1.0, 1.0, -1.0)]
    }

    /// Max coefficient difference of the two phi's (gauge-invariant distance
    /// in the family).
    pub fn phi_distance(&self, other: &G2Params) -> f64 {
        self.phi().sub(&other.phi()).max_abs_coeff()
    }
}

/// Both routes to the scalar torsion.
#[derive(Debug, Clone, Copy)]
pub struct Tau0 {
    pub closed: f64,
    pub projected: f64,
}

impl Tau0 {
    pub fn value(&self) -> f64 {
        self.closed
    }

    pub fn relative_gap(&self) -> f64 {
        (self.closed - self.projected).abs() / self.closed.abs().max(1.0)
    }
}

/// Result of checking psi against the Hodge dual of phi.
pub fn psi_hodge_gap(p: &G2Params) -> Result<f64, ExteriorError> {
    let star_phi = p.phi().hodge(&p.metric())?;
    Ok(star_phi.sub(&p.psi()).max_abs_coeff())
}
