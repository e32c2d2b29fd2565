//! Homogeneous coclosed G2-structures on the Aloff-Wallach spaces
//! X_{k,l} = SU(3)/U(1)_{k,l}, and the classification of invariant
//! G2-instantons with gauge groups U(1) and SO(3).
//!
//! The crate is organized around a small exterior-calculus kernel over the
//! left-invariant coframe {w1..w7, h} of SU(3):
//!
//! * [`su3`]: the (k,l)-adapted su(3) basis and its structure constants,
//!   obtained by brute-force matrix commutators.
//! * [`exterior`]: sparse forms, wedge, the coframe differential, a
//!   diagonal-metric Hodge star and so(3)-valued curvature.
//! * [`g2`]: the 4-parameter family of coclosed G2-structures phi(A,B,C,D),
//!   its 4-form psi, metric, volume and torsion.
//! * [`np`]: numerical solution of the nearly-parallel system.
//! * [`connections`]: invariant connection ansaetze, instanton
//!   classification, existence discriminants and deformation determinants.
//! * [`topology`]: characteristic classes of the homogeneous SO(3)-bundles.
//! * [`ym`]: the invariant Yang-Mills energy, its gradient/Hessian and
//!   landscape grids.
//! * [`verify`]: the reproduction suite behind `g2aw verify`.

pub mod connections;
pub mod exterior;
pub mod fmt;
pub mod g2;
pub mod np;
pub mod su3;
pub mod topology;
pub mod verify;
pub mod ym;

pub use exterior::{DiagMetric, Form, So3Form};
pub use g2::G2Params;
pub use su3::{FrameSpec, StructureConstants};
