//! Characteristic classes of the homogeneous SO(3)-bundles E_n over X_{k,l}:
//! w2(E_n) = n mod 2 and p1(E_n) = n^2 mod (k^2 + kl + l^2), the latter in
//! H^4(X_{k,l}) = Z_{k^2+kl+l^2}.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("degenerate space: (k, l) = (0, 0)")]
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharClasses {
    /// second Stiefel-Whitney class in Z_2
    pub w2: u8,
    /// first Pontryagin class, normalized to [0, modulus)
    pub p1: i64,
    /// order of H^4 = k^2 + kl + l^2
    pub modulus: i64,
}

pub fn char_classes(k: i64, l: i64, n: i64) -> Result<CharClasses, TopologyError> {
    if k == 0 && l == 0 {
        return Err(TopologyError::Degenerate);
    }
    let modulus = k * k + k * l + l * l;
    debug_assert!(modulus > 0);
    let p1 = ((n as i128 * n as i128).rem_euclid(modulus as i128)) as i64;
    Ok(CharClasses {
        w2: n.rem_euclid(2) as u8,
        p1,
        modulus,
    })
}

/// Classes of the three weight bundles n1 = k-l, n2 = l-m, n3 = m-k. They
/// admit the closed forms w2 = (k-l, k, l) mod 2 and
/// p1 = (-3kl, -3k^2, -3l^2) mod (k^2 + kl + l^2), which agree with
/// [`char_classes`] evaluated at those degrees.
pub fn weight_bundle_classes(k: i64, l: i64) -> Result<[CharClasses; 3], TopologyError> {
    let m = -k - l;
    Ok([
        char_classes(k, l, k - l)?,
        char_classes(k, l, l - m)?,
        char_classes(k, l, m - k)?,
    ])
}

/// The closed forms above, for cross-checking.
pub fn weight_bundle_classes_closed_form(k: i64, l: i64) -> Result<[CharClasses; 3], TopologyError> {
    if k == 0 && l == 0 {
        return Err(TopologyError::Degenerate);
    }
    let modulus = k * k + k * l + l * l;
    let norm = |x: i128| (x.rem_euclid(modulus as i128)) as i64;
    Ok([
        CharClasses {
            w2: (k - l).rem_euclid(2) as u8,
            p1: norm(-3 * k as i128 * l as i128),
            modulus,
        },
        CharClasses {
            w2: k.rem_euclid(2) as u8,
            p1: norm(-3 * k as i128 * k as i128),
            modulus,
        },
        CharClasses {
            w2: l.rem_euclid(2) as u8,
            p1: norm(-3 * l as i128 * l as i128),
            modulus,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        let c = char_classes(1, 2, -4).unwrap();
        assert_eq!((c.w2, c.p1, c.modulus), (0, 2, 7));
        let c = char_classes(1, 3, -5).unwrap();
        assert_eq!((c.w2, c.p1, c.modulus), (1, 12, 13));
        let c = char_classes(2, 3, -7).unwrap();
        assert_eq!((c.w2, c.p1, c.modulus), (1, 11, 19));
        let c = char_classes(2, 11, -15).unwrap();
        assert_eq!((c.w2, c.p1, c.modulus), (1, 78, 147));
        let c = char_classes(2, 11, -9).unwrap();
        assert_eq!((c.w2, c.p1, c.modulus), (1, 81, 147));
    }

    #[test]
    fn trivial_bundle() {
        let c = char_classes(5, -3, 0).unwrap();
        assert_eq!((c.w2, c.p1), (0, 0));
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(char_classes(0, 0, 1).unwrap_err(), TopologyError::Degenerate);
    }

    #[test]
    fn weight_bundles_match_closed_form_up_to_20() {
        for k in -20..=20i64 {
            for l in -20..=20i64 {
                if k == 0 && l == 0 {
                    continue;
                }
                let direct = weight_bundle_classes(k, l).unwrap();
                let closed = weight_bundle_classes_closed_form(k, l).unwrap();
                assert_eq!(direct, closed, "mismatch at (k,l) = ({k},{l})");
            }
        }
    }

    #[test]
    fn weight_bundle_examples() {
        // (1,2): n1 = -1, p1 = -6 mod 7 = 1
        let c = weight_bundle_classes(1, 2).unwrap();
        assert_eq!(c[0].p1, 1);
        // (2,3): n3 = -7, p1 = 49 mod 19 = 11
        let c = weight_bundle_classes(2, 3).unwrap();
        assert_eq!(c[2].p1, 11);
        // (1,1): modulus 3, n2 = 3 -> p1 = 0
        let c = weight_bundle_classes(1, 1).unwrap();
        assert_eq!((c[1].p1, c[1].modulus), (0, 3));
    }
}
