//! Sparse exterior algebra over the fixed 8-element coframe {w1..w7, h}.
//!
//! Basis monomials are encoded as bitmasks: bit i-1 set means the coframe
//! index i is a leg of the monomial, with index 8 reserved for the vertical
//! direction h. Coefficients are stored in canonical (ascending-index) order,
//! so every sign is fixed by transposition parity against that order.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::su3::StructureConstants;

/// Bitmask over coframe indices 1..=8 (bit i-1 = index i; index 8 is h).
pub type Mask = u8;

/// Bit for the vertical direction h.
pub const VERTICAL_BIT: Mask = 1 << 7;

#[derive(Debug, Error, PartialEq)]
pub enum ExteriorError {
    /// Hodge star and norms are only defined on the 7 physical directions.
    #[error("input has a vertical (h) leg of magnitude {0:.3e}")]
    InputHasVerticalLeg(f64),
    #[error("metric scale {0} must be strictly positive, got {1}")]
    NonPositiveScale(usize, f64),
    #[error("multi-index {0:?} is not strictly increasing over 1..=8")]
    BadMultiIndex(Vec<u8>),
}

/// Pack a strictly increasing index tuple over 1..=8 into a mask.
pub fn mask_from_indices(indices: &[u8]) -> Result<Mask, ExteriorError> {
    let mut mask: Mask = 0;
    let mut prev = 0u8;
    for &i in indices {
        if !(1..=8).contains(&i) || i <= prev {
            return Err(ExteriorError::BadMultiIndex(indices.to_vec()));
        }
        mask |= 1 << (i - 1);
        prev = i;
    }
    Ok(mask)
}

/// Unpack a mask into its ascending index tuple.
pub fn indices_from_mask(mask: Mask) -> Vec<u8> {
    (1..=8).filter(|i| mask & (1 << (i - 1)) != 0).collect()
}

/// Sign of the permutation sorting the concatenation of two disjoint
/// ascending tuples, i.e. the sign in w_A ^ w_B = sign * w_{sorted(A,B)}.
pub fn merge_sign(a: Mask, b: Mask) -> f64 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        inversions += ((a as u32) >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A graded exterior form with sparse real coefficients.
///
/// Invariants: every stored key has popcount equal to `degree`, and no
/// stored coefficient is exactly zero. The empty form of any degree is the
/// zero form.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    degree: u8,
    terms: BTreeMap<Mask, f64>,
}

impl Form {
    pub fn zero(degree: u8) -> Self {
        assert!(degree <= 8, "degree {degree} out of range");
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Constant 0-form.
    pub fn scalar(value: f64) -> Self {
        let mut f = Form::zero(0);
        f.insert(0, value);
        f
    }

    /// Basis 1-form w_i (i = 8 is h).
    pub fn basis_one_form(index: u8) -> Self {
        assert!((1..=8).contains(&index), "coframe index {index} out of range");
        let mut f = Form::zero(1);
        f.insert(1 << (index - 1), 1.0);
        f
    }

    /// Monomial `coeff * w_{indices}` for a strictly increasing index tuple.
    pub fn monomial(indices: &[u8], coeff: f64) -> Result<Self, ExteriorError> {
        let mask = mask_from_indices(indices)?;
        let mut f = Form::zero(indices.len() as u8);
        f.insert(mask, coeff);
        Ok(f)
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: Mask) -> f64 {
        self.terms.get(&mask).copied().unwrap_or(0.0)
    }

    /// Coefficient in canonical order by index tuple, e.g. `coeff_of(&[1,4,5])`.
    pub fn coeff_of(&self, indices: &[u8]) -> f64 {
        match mask_from_indices(indices) {
            Ok(m) => self.coeff(m),
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mask, f64)> + '_ {
        self.terms.iter().map(|(&m, &v)| (m, v))
    }

    fn insert(&mut self, mask: Mask, value: f64) {
        debug_assert_eq!(mask.count_ones() as u8, self.degree);
        if value != 0.0 {
            let e = self.terms.entry(mask).or_insert(0.0);
            *e += value;
            if *e == 0.0 {
                self.terms.remove(&mask);
            }
        }
    }

    pub fn scale(&self, factor: f64) -> Form {
        if factor == 0.0 {
            return Form::zero(self.degree);
        }
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(&m, &v)| (m, v * factor)).collect(),
        }
    }

    /// self + factor * other. Degrees must agree unless one side is zero.
    pub fn add_scaled(&self, other: &Form, factor: f64) -> Form {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(factor);
        }
        assert_eq!(
            self.degree, other.degree,
            "cannot add forms of degree {} and {}",
            self.degree, other.degree
        );
        let mut out = self.clone();
        for (&m, &v) in &other.terms {
            out.insert(m, v * factor);
        }
        out
    }

    pub fn add(&self, other: &Form) -> Form {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add_scaled(other, -1.0)
    }

    /// Largest coefficient magnitude (0 for the zero form).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn has_vertical_leg(&self) -> bool {
        self.terms.keys().any(|m| m & VERTICAL_BIT != 0)
    }

    /// Largest coefficient magnitude on terms with an h-leg.
    pub fn max_vertical_coeff(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(m, _)| *m & VERTICAL_BIT != 0)
            .fold(0.0, |acc, (_, v)| acc.max(v.abs()))
    }

    /// Remove h-legged terms, failing if any exceeds `tol` in magnitude.
    /// Cancellations in d and the bracket leave O(1e-16) vertical residue on
    /// forms that are basic by construction; this strips it after checking.
    pub fn drop_vertical(&self, tol: f64) -> Result<Form, ExteriorError> {
        let worst = self.max_vertical_coeff();
        if worst > tol {
            return Err(ExteriorError::InputHasVerticalLeg(worst));
        }
        Ok(Form {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| *m & VERTICAL_BIT == 0)
                .map(|(&m, &v)| (m, v))
                .collect(),
        })
    }

    /// Exterior product. Returns the zero form when the degree overflows.
    pub fn wedge(&self, other: &Form) -> Form {
        let degree = self.degree + other.degree;
        if degree > 8 {
            return Form::zero(8);
        }
        let mut out = Form::zero(degree);
        for (&ma, &va) in &self.terms {
            for (&mb, &vb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                out.insert(ma | mb, merge_sign(ma, mb) * va * vb);
            }
        }
        out
    }

    /// Coframe differential extended from d(w^a) as an antiderivation.
    /// Constant coefficients only, so d is linear over the coefficients.
    pub fn d(&self, sc: &StructureConstants) -> Form {
        if self.degree == 8 {
            return Form::zero(8);
        }
        let mut out = Form::zero(self.degree + 1);
        for (&mask, &v) in &self.terms {
            let mut sign = 1.0;
            let mut bits = mask;
            while bits != 0 {
                let bit = bits.trailing_zeros() as u8;
                bits &= bits - 1;
                let rest = mask & !(1 << bit);
                for &(dm, dv) in sc.d_basis(bit + 1) {
                    if dm & rest != 0 {
                        continue;
                    }
                    out.insert(dm | rest, sign * v * dv * merge_sign(dm, rest));
                }
                sign = -sign;
            }
        }
        out
    }

    /// Hodge star for a diagonal metric on the 7 physical directions, with
    /// the convention w_I ^ *w_I = |w_I|^2 vol.
    pub fn hodge(&self, metric: &DiagMetric) -> Result<Form, ExteriorError> {
        if self.has_vertical_leg() {
            return Err(ExteriorError::InputHasVerticalLeg(self.max_vertical_coeff()));
        }
        const FULL: Mask = 0b0111_1111;
        let mut out = Form::zero(7 - self.degree);
        for (&mask, &v) in &self.terms {
            let comp = FULL & !mask;
            let mut factor = metric.orientation * merge_sign(mask, comp);
            for i in 0..7 {
                let g = metric.scales[i];
                if mask & (1 << i) != 0 {
                    factor /= g.sqrt();
                } else {
                    factor *= g.sqrt();
                }
            }
            out.insert(comp, factor * v);
        }
        Ok(out)
    }

    /// Interior product with the a-th dual frame vector.
    pub fn contract(&self, index: u8) -> Form {
        assert!((1..=8).contains(&index), "coframe index {index} out of range");
        if self.degree == 0 {
            return Form::zero(0);
        }
        let bit = 1 << (index - 1);
        let mut out = Form::zero(self.degree - 1);
        for (&mask, &v) in &self.terms {
            if mask & bit == 0 {
                continue;
            }
            // position of `index` within the ascending tuple
            let pos = (mask & (bit - 1)).count_ones();
            let sign = if pos.is_multiple_of(2) { 1.0 } else { -1.0 };
            out.insert(mask & !bit, sign * v);
        }
        out
    }

    /// Squared norm for an orthogonal coframe: sum of coeff^2 / prod g_i.
    pub fn norm_sq(&self, metric: &DiagMetric) -> Result<f64, ExteriorError> {
        self.inner(self, metric)
    }

    /// Pointwise inner product of two forms of equal degree.
    pub fn inner(&self, other: &Form, metric: &DiagMetric) -> Result<f64, ExteriorError> {
        if self.has_vertical_leg() {
            return Err(ExteriorError::InputHasVerticalLeg(self.max_vertical_coeff()));
        }
        if other.has_vertical_leg() {
            return Err(ExteriorError::InputHasVerticalLeg(other.max_vertical_coeff()));
        }
        let mut total = 0.0;
        for (&mask, &v) in &self.terms {
            let w = other.coeff(mask);
            if w == 0.0 {
                continue;
            }
            let mut term = v * w;
            for i in 0..7 {
                if mask & (1 << i) != 0 {
                    term /= metric.scales[i];
                }
            }
            total += term;
        }
        Ok(total)
    }
}

/// Diagonal metric on the coframe: 7 squared coframe lengths plus an
/// orientation sign. The h-direction carries a plumbing scale of 1 and is
/// rejected by every metric operation on basic forms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagMetric {
    pub scales: [f64; 7],
    pub orientation: f64,
}

impl DiagMetric {
    pub fn new(scales: [f64; 7], orientation: f64) -> Result<Self, ExteriorError> {
        for (i, &g) in scales.iter().enumerate() {
            if !g.is_finite() || g <= 0.0 {
                return Err(ExteriorError::NonPositiveScale(i + 1, g));
            }
        }
        assert!(
            orientation == 1.0 || orientation == -1.0,
            "orientation must be +-1, got {orientation}"
        );
        Ok(DiagMetric { scales, orientation })
    }

    pub fn unit() -> Self {
        DiagMetric {
            scales: [1.0; 7],
            orientation: 1.0,
        }
    }
}

/// An so(3)-valued form with components along the fixed basis T1, T2, T3
/// satisfying [T_i, T_j] = 2 eps_{ijk} T_k.
#[derive(Debug, Clone, PartialEq)]
pub struct So3Form {
    pub f1: Form,
    pub f2: Form,
    pub f3: Form,
}

impl So3Form {
    pub fn new(f1: Form, f2: Form, f3: Form) -> Self {
        assert!(
            same_degree(&f1, &f2) && same_degree(&f2, &f3),
            "so(3)-form components must share one degree"
        );
        So3Form { f1, f2, f3 }
    }

    pub fn zero(degree: u8) -> Self {
        So3Form {
            f1: Form::zero(degree),
            f2: Form::zero(degree),
            f3: Form::zero(degree),
        }
    }

    pub fn components(&self) -> [&Form; 3] {
        [&self.f1, &self.f2, &self.f3]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.f1
            .max_abs_coeff()
            .max(self.f2.max_abs_coeff())
            .max(self.f3.max_abs_coeff())
    }

    pub fn max_vertical_coeff(&self) -> f64 {
        self.f1
            .max_vertical_coeff()
            .max(self.f2.max_vertical_coeff())
            .max(self.f3.max_vertical_coeff())
    }
}

fn same_degree(a: &Form, b: &Form) -> bool {
    a.is_zero() || b.is_zero() || a.degree() == b.degree()
}

/// Curvature F = dA + (1/2)[A ^ A] of an so(3)-valued 1-form, componentwise
/// F_1 = dA_1 + 2 A_2 ^ A_3 and cyclic, from [T_i, T_j] = 2 eps_{ijk} T_k.
pub fn so3_curvature(conn: &So3Form, sc: &StructureConstants) -> So3Form {
    So3Form {
        f1: conn.f1.d(sc).add_scaled(&conn.f2.wedge(&conn.f3), 2.0),
        f2: conn.f2.d(sc).add_scaled(&conn.f3.wedge(&conn.f1), 2.0),
        f3: conn.f3.d(sc).add_scaled(&conn.f1.wedge(&conn.f2), 2.0),
    }
}
