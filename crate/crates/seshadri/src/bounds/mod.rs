//! The numerical core: Seshadri quotients, the exact nef upper bound,
//! self-intersection floors for moving curve families, the purely
//! numerical multi-point inequality with its exhaustive scan, and the
//! enumeration cap that makes lower-bound certification finite.

pub mod casework;
pub mod certify;

use crate::exact::{bigint_json, rational_string, RadicalRational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("multiplicity vector must be non-empty with at least one positive entry")]
    ZeroVector,
    #[error("L² must be a positive integer, got {0}")]
    NonPositiveSelfIntersection(BigInt),
    #[error("the number of points must be at least 1")]
    ZeroPoints,
    #[error("curve degree must be a positive integer, got {0}")]
    NonPositiveDegree(BigInt),
    #[error("inequality hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("target {target} is not strictly below the upper bound {upper}")]
    TargetNotBelowUpperBound { target: String, upper: String },
    #[error("target must be positive, got {0}")]
    NonPositiveTarget(String),
    #[error("enumeration bound {0} exceeds the practical limit of this engine")]
    EnumerationTooLarge(BigInt),
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: u64, found: usize },
    #[error("no analysis case applies: {0}")]
    NoCaseApplies(String),
    #[error("scan needs r_max ≥ 2 and m_max ≥ 2, got r_max={r_max}, m_max={m_max}")]
    ScanRangeTooSmall { r_max: u64, m_max: u64 },
}

/// Non-increasing multiplicities `(m₁, …, m_r)`, not all zero. Zero
/// entries are permitted and mean the curve misses those points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct MultiplicityVector {
    entries: Vec<u64>,
}

impl MultiplicityVector {
    /// Sorts the entries into non-increasing order; rejects empty and
    /// all-zero input.
    pub fn new(mut entries: Vec<u64>) -> Result<Self, BoundsError> {
        if entries.is_empty() || entries.iter().all(|&m| m == 0) {
            return Err(BoundsError::ZeroVector);
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(MultiplicityVector { entries })
    }

    pub fn uniform(mult: u64, points: usize) -> Result<Self, BoundsError> {
        Self::new(vec![mult; points])
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> u64 {
        self.entries[0]
    }

    pub fn min(&self) -> u64 {
        *self.entries.last().unwrap()
    }

    pub fn has_zero(&self) -> bool {
        self.min() == 0
    }

    /// The leading run of strictly positive entries.
    pub fn support(&self) -> &[u64] {
        let end = self
            .entries
            .iter()
            .position(|&m| m == 0)
            .unwrap_or(self.entries.len());
        &self.entries[..end]
    }

    pub fn min_positive(&self) -> u64 {
        *self.support().last().unwrap()
    }

    pub fn sum(&self) -> BigInt {
        self.entries.iter().map(|&m| BigInt::from(m)).sum()
    }

    pub fn sum_of_squares(&self) -> BigInt {
        self.entries
            .iter()
            .map(|&m| BigInt::from(m) * BigInt::from(m))
            .sum()
    }
}

impl TryFrom<Vec<u64>> for MultiplicityVector {
    type Error = BoundsError;
    fn try_from(entries: Vec<u64>) -> Result<Self, Self::Error> {
        MultiplicityVector::new(entries)
    }
}

impl From<MultiplicityVector> for Vec<u64> {
    fn from(m: MultiplicityVector) -> Vec<u64> {
        m.entries
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// A catalog curve witnessing an upper bound for the Seshadri quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientWitness {
    #[serde(rename = "curve_name")]
    pub curve_name: String,
    #[serde(rename = "LC", with = "bigint_json")]
    pub degree: BigInt,
    pub mults: MultiplicityVector,
    #[serde(with = "rational_string")]
    pub quotient: Rational,
    pub provenance: String,
}

/// The exact upper bound `√(L²/r)` forced by non-negativity of nef
/// self-intersections on the blow-up.
pub fn epsilon_upper(l_squared: &BigInt, points: u64) -> Result<RadicalRational, BoundsError> {
    if !l_squared.is_positive() {
        return Err(BoundsError::NonPositiveSelfIntersection(l_squared.clone()));
    }
    if points == 0 {
        return Err(BoundsError::ZeroPoints);
    }
    Ok(RadicalRational::sqrt_of_rational(&Rational::new(
        l_squared.clone(),
        BigInt::from(points),
    )))
}

/// The quotient `L·C / Σmᵢ`, exactly.
pub fn seshadri_quotient(
    degree: &BigInt,
    mults: &MultiplicityVector,
) -> Result<Rational, BoundsError> {
    if !degree.is_positive() {
        return Err(BoundsError::NonPositiveDegree(degree.clone()));
    }
    Ok(Rational::new(degree.clone(), mults.sum()))
}

/// Self-intersection floor for a curve moving in a non-trivial family with
/// the prescribed multiplicities at moving points, computed on the
/// positive support:
///
/// * one point, multiplicity 1 → `0` (a moving curve through a general
///   point has non-negative self-intersection; fibers attain 0);
/// * one point, multiplicity `m ≥ 2` → `m(m−1) + 1`;
/// * two or more points → `Σmᵢ² − min mᵢ` over the support.
pub fn xu_floor(mults: &MultiplicityVector) -> BigInt {
    let support = mults.support();
    if support.len() == 1 {
        let m = BigInt::from(support[0]);
        if m.is_one() {
            BigInt::zero()
        } else {
            &m * (&m - 1) + 1
        }
    } else {
        let sum_sq: BigInt = support
            .iter()
            .map(|&m| BigInt::from(m) * BigInt::from(m))
            .sum();
        sum_sq - BigInt::from(mults.min_positive())
    }
}

/// Evaluates the strict inequality `(r+1)·Σmᵢ² > (Σmᵢ)² + m_r·(r+1)` for
/// non-increasing positive integer vectors with `r ≥ 2` and `m₁ ≥ 2`.
/// Hypothesis violations are reported as errors, never as `false`.
pub fn kuechle_holds(mults: &MultiplicityVector) -> Result<bool, BoundsError> {
    if mults.len() < 2 {
        return Err(BoundsError::HypothesisViolation(format!(
            "need at least two points, got {}",
            mults.len()
        )));
    }
    if mults.has_zero() {
        return Err(BoundsError::HypothesisViolation(
            "all multiplicities must be at least 1".into(),
        ));
    }
    if mults.max() < 2 {
        return Err(BoundsError::HypothesisViolation(
            "the largest multiplicity must be at least 2".into(),
        ));
    }
    let r_plus_one = BigInt::from(mults.len() as u64 + 1);
    let lhs = &r_plus_one * mults.sum_of_squares();
    let sum = mults.sum();
    let rhs = &sum * &sum + BigInt::from(mults.min()) * &r_plus_one;
    Ok(lhs > rhs)
}

/// Result of the exhaustive inequality scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuechleScan {
    pub r_max: u64,
    pub m_max: u64,
    pub cases_checked: u64,
    pub violations: Vec<MultiplicityVector>,
}

/// Checks the inequality on every admissible vector with `2 ≤ r ≤ r_max`
/// and `2 ≤ m₁ ≤ m_max`, returning all violations (expected: none).
pub fn kuechle_scan(r_max: u64, m_max: u64) -> Result<KuechleScan, BoundsError> {
    if r_max < 2 || m_max < 2 {
        return Err(BoundsError::ScanRangeTooSmall { r_max, m_max });
    }
    let mut scan = KuechleScan {
        r_max,
        m_max,
        cases_checked: 0,
        violations: Vec::new(),
    };
    let mut stack: Vec<u64> = Vec::new();
    for r in 2..=r_max {
        descend(&mut stack, r as usize, m_max, &mut scan)?;
    }
    return Ok(scan);

    fn descend(
        prefix: &mut Vec<u64>,
        length: usize,
        m_max: u64,
        scan: &mut KuechleScan,
    ) -> Result<(), BoundsError> {
        if prefix.len() == length {
            // admissible only when the leading entry is at least 2
            if prefix[0] >= 2 {
                scan.cases_checked += 1;
                let m = MultiplicityVector::new(prefix.clone())?;
                if !kuechle_holds(&m)? {
                    scan.violations.push(m);
                }
            }
            return Ok(());
        }
        let upper = prefix.last().copied().unwrap_or(m_max);
        for v in (1..=upper).rev() {
            prefix.push(v);
            descend(prefix, length, m_max, scan)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// A strict cap on `Σmᵢ` for any multiplicity vector that could witness a
/// quotient below `target`: combining the Hodge inequality, the family
/// floor, `Σm² ≥ (Σm)²/r` and `min m ≤ Σm/r` forces
/// `Σm < L²/(L² − r·target²)`. Returns the least integer at least that
/// value, so `Σm < cap` covers every candidate.
pub fn enumeration_bound(
    l_squared: &BigInt,
    points: u64,
    target: &RadicalRational,
) -> Result<BigInt, BoundsError> {
    if !l_squared.is_positive() {
        return Err(BoundsError::NonPositiveSelfIntersection(l_squared.clone()));
    }
    if points == 0 {
        return Err(BoundsError::ZeroPoints);
    }
    if !target.is_positive() {
        return Err(BoundsError::NonPositiveTarget(target.to_string()));
    }
    let l2 = Rational::from(l_squared.clone());
    let scaled = target.square() * Rational::from(BigInt::from(points));
    if scaled >= l2 {
        return Err(BoundsError::TargetNotBelowUpperBound {
            target: target.to_string(),
            upper: epsilon_upper(l_squared, points)?.to_string(),
        });
    }
    let cap = (&l2 / (l2.clone() - scaled)).ceil().to_integer();
    Ok(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn mv(entries: &[u64]) -> MultiplicityVector {
        MultiplicityVector::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn vector_invariants() {
        let m = mv(&[1, 2, 0]);
        assert_eq!(m.entries(), &[2, 1, 0]);
        assert_eq!(m.support(), &[2, 1]);
        assert_eq!(m.min_positive(), 1);
        assert!(m.has_zero());
        assert_eq!(m.to_string(), "(2, 1, 0)");
        assert!(MultiplicityVector::new(vec![]).is_err());
        assert!(MultiplicityVector::new(vec![0, 0]).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(
            epsilon_upper(&BigInt::from(3), 1).unwrap(),
            RadicalRational::sqrt_of_rational(&ratio(3, 1))
        );
        assert_eq!(
            epsilon_upper(&BigInt::from(1), 2).unwrap(),
            RadicalRational::sqrt_of_rational(&ratio(1, 2))
        );
        // √(4/5) = (2/5)·√5
        let v = epsilon_upper(&BigInt::from(4), 5).unwrap();
        assert_eq!(v.coeff(), &ratio(2, 5));
        assert_eq!(v.radicand(), &BigInt::from(5));
        assert!(epsilon_upper(&BigInt::from(0), 1).is_err());
        assert!(epsilon_upper(&BigInt::from(3), 0).is_err());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(
            seshadri_quotient(&BigInt::from(1), &mv(&[1, 1])).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            seshadri_quotient(&BigInt::from(3), &mv(&[2])).unwrap(),
            ratio(3, 2)
        );
        let r = 7u64;
        let ones = MultiplicityVector::uniform(1, r as usize).unwrap();
        assert_eq!(
            seshadri_quotient(&BigInt::from(r - 1), &ones).unwrap(),
            Rational::new(BigInt::from(r - 1), BigInt::from(r))
        );
        assert!(seshadri_quotient(&BigInt::from(0), &mv(&[1])).is_err());
    }

    #[test]
    fn floor_examples() {
        assert_eq!(xu_floor(&mv(&[2])), BigInt::from(3));
        assert_eq!(xu_floor(&mv(&[1])), BigInt::from(0));
        assert_eq!(
            xu_floor(&MultiplicityVector::uniform(1, 5).unwrap()),
            BigInt::from(4)
        );
        assert_eq!(xu_floor(&mv(&[2, 1])), BigInt::from(4));
        // zero entries are ignored: computed on the positive support
        assert_eq!(xu_floor(&mv(&[2, 1, 0])), BigInt::from(4));
        assert_eq!(xu_floor(&mv(&[3, 0])), BigInt::from(7));
    }

    #[test]
    fn strict_inequality_examples() {
        // (2,1): 3·5 = 15 > 9+3 = 12
        assert!(kuechle_holds(&mv(&[2, 1])).unwrap());
        // (2,2,2): 4·12 = 48 > 36+8 = 44
        assert!(kuechle_holds(&mv(&[2, 2, 2])).unwrap());
        assert!(matches!(
            kuechle_holds(&mv(&[1, 1])),
            Err(BoundsError::HypothesisViolation(_))
        ));
        assert!(kuechle_holds(&mv(&[2, 0])).is_err());
        assert!(kuechle_holds(&mv(&[3])).is_err());
    }

    #[test]
    fn scan_small_ranges_are_clean() {
        let scan = kuechle_scan(2, 2).unwrap();
        // only (2,1) and (2,2) are admissible
        assert_eq!(scan.cases_checked, 2);
        assert!(scan.violations.is_empty());

        let scan = kuechle_scan(4, 10).unwrap();
        assert!(scan.violations.is_empty());

        assert!(kuechle_scan(1, 5).is_err());
    }

    #[test]
    fn enumeration_bound_examples() {
        let half = RadicalRational::from_rational(ratio(1, 2));
        assert_eq!(
            enumeration_bound(&BigInt::from(1), 2, &half).unwrap(),
            BigInt::from(2)
        );

        let three_halves = RadicalRational::from_rational(ratio(3, 2));
        assert_eq!(
            enumeration_bound(&BigInt::from(3), 1, &three_halves).unwrap(),
            BigInt::from(4)
        );

        // boundary ratio for r = 3 on a degree-2 class: target (r−1)/r = 2/3
        let target = RadicalRational::from_rational(ratio(2, 3));
        assert_eq!(
            enumeration_bound(&BigInt::from(2), 3, &target).unwrap(),
            BigInt::from(3)
        );

        // at or above the upper bound: rejected
        let one = RadicalRational::one();
        assert!(matches!(
            enumeration_bound(&BigInt::from(1), 1, &one),
            Err(BoundsError::TargetNotBelowUpperBound { .. })
        ));
        let sqrt3 = RadicalRational::sqrt_of_rational(&ratio(3, 1));
        assert!(enumeration_bound(&BigInt::from(3), 1, &sqrt3).is_err());
    }
}
