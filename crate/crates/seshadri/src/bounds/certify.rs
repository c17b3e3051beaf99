//! Exhaustive lower-bound certification.
//!
//! To certify `ε ≥ t` the engine enumerates every multiplicity vector a
//! violating curve could have (a finite set, thanks to the enumeration
//! cap) and, for each, every integer degree `d` with `d/Σm < t`. A case is
//! excluded when the Hodge-index inequality combined with the family
//! self-intersection floor leaves no admissible degree: `L²·xu(m) > d²`
//! for every candidate `d`, or the degree window is empty outright. If
//! every case is excluded the result is a machine-checkable certificate;
//! otherwise the surviving cases are returned as traces, which is a
//! failure to certify, never a disproof.
//!
//! Certificates are scoped to very general point configurations: the
//! self-intersection floor assumes the witnessing curves move in a
//! non-trivial family, which is exactly what fails at special points.
//! The engine does not certify anything outside that scope.

use super::{enumeration_bound, epsilon_upper, xu_floor, BoundsError, MultiplicityVector};
use crate::exact::{bigint_json, RadicalRational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Every certificate is valid only under this scope tag.
pub const SEMANTIC_SCOPE: &str = "VERY_GENERAL_POINTS";

/// Standing assumption recorded in every certificate.
pub const FAMILY_ASSUMPTION: &str = "a curve through a very general point moving in a non-trivial \
     family has non-negative self-intersection; the floor for a single \
     point of multiplicity one is therefore 0";

/// Which exclusion step refuted a case. The Hodge and family-floor
/// inequalities act jointly: the floor supplies the self-intersection
/// that the Hodge inequality turns into a degree bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationFilter {
    /// No positive degree lies below `t·Σm`.
    DegreePositivity,
    /// `L²·xu(m) ≥ (t·Σm)²`: the real degree window is empty.
    HodgeXu,
    /// The real window is non-empty but contains no integer.
    DegreeIntegrality,
}

impl std::fmt::Display for RefutationFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            RefutationFilter::DegreePositivity => "positivity of degree",
            RefutationFilter::HodgeXu => "Hodge index with family floor",
            RefutationFilter::DegreeIntegrality => "integrality of degree",
        };
        f.write_str(name)
    }
}

/// One excluded multiplicity vector, with the numbers that exclude it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutedCase {
    pub m: MultiplicityVector,
    pub filter: RefutationFilter,
    #[serde(with = "bigint_json")]
    pub xu_floor: BigInt,
    /// Largest integer degree strictly below `t·Σm` (0 when none).
    #[serde(with = "bigint_json")]
    pub max_degree_below_target: BigInt,
    /// Smallest positive degree consistent with `L²·xu(m) ≤ d²`.
    #[serde(with = "bigint_json")]
    pub min_consistent_degree: BigInt,
}

/// A surviving case: certification failed because these degrees are
/// consistent with every filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationTrace {
    pub m: MultiplicityVector,
    #[serde(with = "bigint_json")]
    pub degree_min: BigInt,
    #[serde(with = "bigint_json")]
    pub degree_max: BigInt,
    #[serde(with = "bigint_json")]
    pub xu_floor: BigInt,
    /// Filters that failed to exclude the case.
    pub filters_failed: Vec<RefutationFilter>,
}

/// Machine-checkable record of an exhaustive refutation: no multiplicity
/// vector and integer degree consistent with the Hodge inequality and the
/// family floor achieves a quotient strictly below the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "L2", with = "bigint_json")]
    pub l_squared: BigInt,
    #[serde(rename = "r")]
    pub points: u64,
    #[serde(rename = "t")]
    pub target: RadicalRational,
    #[serde(with = "bigint_json")]
    pub enumeration_bound: BigInt,
    pub cases_checked: u64,
    pub refuted_by: Vec<RefutedCase>,
    pub semantic_scope: String,
    pub assumptions: Vec<String>,
}

/// Outcome of a certification attempt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)] // one outcome per call, never stored in bulk
pub enum CertifyOutcome {
    Certified(Certificate),
    NotCertified(Vec<RefutationTrace>),
}

impl CertifyOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::Certified(c) => Some(c),
            CertifyOutcome::NotCertified(_) => None,
        }
    }

    pub fn traces(&self) -> Option<&[RefutationTrace]> {
        match self {
            CertifyOutcome::Certified(_) => None,
            CertifyOutcome::NotCertified(t) => Some(t),
        }
    }
}

#[derive(Error, Debug)]
#[error("certificate failed re-validation:\n  {}", issues.join("\n  "))]
pub struct CertificateDefect {
    pub issues: Vec<String>,
}

/// Smallest non-negative integer `d` with `d² ≥ n` (for `n ≥ 0`).
fn ceil_sqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    let root = n.sqrt();
    if &root * &root == *n {
        root
    } else {
        root + 1
    }
}

/// Largest integer `d ≥ 0` with `d² < a/b` (given `a ≥ 1`, `b ≥ 1`);
/// equivalently the largest integer strictly below `√(a/b)`.
fn largest_degree_below(a: &BigInt, b: &BigInt) -> BigInt {
    ((a - BigInt::one()) / b).sqrt()
}

enum CaseAnalysis {
    Refuted(RefutedCase),
    Surviving(RefutationTrace),
}

fn analyze_vector(
    l_squared: &BigInt,
    target_squared: &Rational,
    m: &MultiplicityVector,
) -> CaseAnalysis {
    let sum = m.sum();
    let xu = xu_floor(m);

    // (t·Σm)² as a reduced fraction
    let window_sq = target_squared * Rational::from(&sum * &sum);
    let degree_max = largest_degree_below(window_sq.numer(), window_sq.denom());
    let hodge_bound = l_squared * &xu;
    let degree_min = if xu.is_zero() {
        BigInt::one()
    } else {
        ceil_sqrt(&hodge_bound).max(BigInt::one())
    };

    if degree_max < BigInt::one() {
        return CaseAnalysis::Refuted(RefutedCase {
            m: m.clone(),
            filter: RefutationFilter::DegreePositivity,
            xu_floor: xu,
            max_degree_below_target: degree_max,
            min_consistent_degree: degree_min,
        });
    }
    if degree_min > degree_max {
        // distinguish an empty real window from a window with no integer
        let filter = if Rational::from(hodge_bound.clone()) >= window_sq {
            RefutationFilter::HodgeXu
        } else {
            RefutationFilter::DegreeIntegrality
        };
        return CaseAnalysis::Refuted(RefutedCase {
            m: m.clone(),
            filter,
            xu_floor: xu,
            max_degree_below_target: degree_max,
            min_consistent_degree: degree_min,
        });
    }
    CaseAnalysis::Surviving(RefutationTrace {
        m: m.clone(),
        degree_min,
        degree_max,
        xu_floor: xu,
        filters_failed: vec![
            RefutationFilter::DegreePositivity,
            RefutationFilter::HodgeXu,
            RefutationFilter::DegreeIntegrality,
        ],
    })
}

/// Hard limit on the number of candidate vectors a single certification
/// may enumerate; beyond this the run would not finish anyway.
const MAX_CASES: usize = 2_000_000;

/// All non-increasing positive vectors of length at most `max_parts` with
/// entry sum strictly below `sum_cap`, in lexicographic order. Vectors
/// with zero entries are represented by their positive support, so each
/// candidate appears exactly once. `None` when the enumeration exceeds
/// `MAX_CASES`.
pub(crate) fn enumerate_supports(max_parts: u64, sum_cap: u64) -> Option<Vec<MultiplicityVector>> {
    let mut out = Vec::new();
    let mut prefix: Vec<u64> = Vec::new();
    if !descend(&mut prefix, max_parts, sum_cap.saturating_sub(1), &mut out) {
        return None;
    }
    out.sort();
    return Some(out);

    fn descend(
        prefix: &mut Vec<u64>,
        parts_left: u64,
        budget: u64,
        out: &mut Vec<MultiplicityVector>,
    ) -> bool {
        if !prefix.is_empty() {
            if out.len() >= MAX_CASES {
                return false;
            }
            out.push(MultiplicityVector::new(prefix.clone()).expect("positive entries"));
        }
        if parts_left == 0 || budget == 0 {
            return true;
        }
        let upper = prefix.last().copied().unwrap_or(u64::MAX).min(budget);
        for v in 1..=upper {
            prefix.push(v);
            let ok = descend(prefix, parts_left - 1, budget - v, out);
            prefix.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn validate_inputs(
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
    let upper = epsilon_upper(l_squared, points)?;
    if *target >= upper {
        return Err(BoundsError::TargetNotBelowUpperBound {
            target: target.to_string(),
            upper: upper.to_string(),
        });
    }
    enumeration_bound(l_squared, points, target)
}

/// Attempts to certify `ε(L; r) ≥ target` at very general points for every
/// surface with the given `L²`, by exhausting all numerically consistent
/// violating cases. `jobs` is the worker count (0 and 1 both mean serial);
/// the outcome is canonical (sorted by multiplicity vector) and
/// bit-identical regardless of the worker count.
pub fn certify_lower_bound(
    l_squared: &BigInt,
    points: u64,
    target: &RadicalRational,
    jobs: usize,
) -> Result<CertifyOutcome, BoundsError> {
    let cap = validate_inputs(l_squared, points, target)?;
    let cap_u64 = cap
        .to_u64()
        .ok_or_else(|| BoundsError::EnumerationTooLarge(cap.clone()))?;
    let vectors = enumerate_supports(points, cap_u64)
        .ok_or_else(|| BoundsError::EnumerationTooLarge(cap.clone()))?;
    let target_squared = target.square();

    let analyses: Vec<CaseAnalysis> = if jobs <= 1 || vectors.len() < 2 {
        vectors
            .iter()
            .map(|m| analyze_vector(l_squared, &target_squared, m))
            .collect()
    } else {
        let workers = jobs.min(vectors.len());
        let chunk_size = vectors.len().div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = vectors
                .chunks(chunk_size)
                .map(|chunk| {
                    let l_squared = &l_squared;
                    let target_squared = &target_squared;
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|m| analyze_vector(l_squared, target_squared, m))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("certifier worker panicked"))
                .collect()
        })
    };

    let mut refuted = Vec::new();
    let mut surviving = Vec::new();
    for analysis in analyses {
        match analysis {
            CaseAnalysis::Refuted(case) => refuted.push(case),
            CaseAnalysis::Surviving(trace) => surviving.push(trace),
        }
    }
    // canonical order regardless of partitioning
    refuted.sort_by(|a, b| a.m.cmp(&b.m));
    surviving.sort_by(|a, b| (&a.m, &a.degree_min).cmp(&(&b.m, &b.degree_min)));

    if surviving.is_empty() {
        Ok(CertifyOutcome::Certified(Certificate {
            l_squared: l_squared.clone(),
            points,
            target: target.clone(),
            enumeration_bound: cap,
            cases_checked: refuted.len() as u64,
            refuted_by: refuted,
            semantic_scope: SEMANTIC_SCOPE.to_string(),
            assumptions: vec![FAMILY_ASSUMPTION.to_string()],
        }))
    } else {
        Ok(CertifyOutcome::NotCertified(surviving))
    }
}

impl Certificate {
    /// Re-runs the exhaustive analysis and checks this certificate against
    /// it case by case: same enumeration bound, same case list, same
    /// excluding filter and bounds for every case. Returns the number of
    /// re-validated cases.
    pub fn revalidate(&self) -> Result<u64, CertificateDefect> {
        let mut issues = Vec::new();
        if self.semantic_scope != SEMANTIC_SCOPE {
            issues.push(format!(
                "semantic scope is {:?}, expected {SEMANTIC_SCOPE:?}",
                self.semantic_scope
            ));
        }
        let cap = match validate_inputs(&self.l_squared, self.points, &self.target) {
            Ok(cap) => cap,
            Err(e) => {
                issues.push(format!("invalid parameters: {e}"));
                return Err(CertificateDefect { issues });
            }
        };
        if cap != self.enumeration_bound {
            issues.push(format!(
                "enumeration bound mismatch: recorded {}, recomputed {cap}",
                self.enumeration_bound
            ));
        }
        let vectors = match cap
            .to_u64()
            .and_then(|c| enumerate_supports(self.points, c))
        {
            Some(vectors) => vectors,
            None => {
                issues.push(format!("enumeration bound {cap} is impractically large"));
                return Err(CertificateDefect { issues });
            }
        };
        if vectors.len() as u64 != self.cases_checked {
            issues.push(format!(
                "cases_checked is {}, but the enumeration has {} vectors",
                self.cases_checked,
                vectors.len()
            ));
        }
        if vectors.len() != self.refuted_by.len() {
            issues.push(format!(
                "certificate records {} cases, enumeration has {}",
                self.refuted_by.len(),
                vectors.len()
            ));
        }
        let target_squared = self.target.square();
        for (expected, recorded) in vectors.iter().zip(&self.refuted_by) {
            if expected != &recorded.m {
                issues.push(format!(
                    "case order mismatch: expected {expected}, found {}",
                    recorded.m
                ));
                continue;
            }
            match analyze_vector(&self.l_squared, &target_squared, expected) {
                CaseAnalysis::Refuted(fresh) => {
                    if fresh != *recorded {
                        issues.push(format!(
                            "case {} re-validates as {:?} with floor {}, window [{}, {}], \
                             but the certificate records {:?} with floor {}, window [{}, {}]",
                            expected,
                            fresh.filter,
                            fresh.xu_floor,
                            fresh.min_consistent_degree,
                            fresh.max_degree_below_target,
                            recorded.filter,
                            recorded.xu_floor,
                            recorded.min_consistent_degree,
                            recorded.max_degree_below_target,
                        ));
                    }
                }
                CaseAnalysis::Surviving(trace) => {
                    issues.push(format!(
                        "case {} is NOT refuted: degrees {}..{} survive",
                        expected, trace.degree_min, trace.degree_max
                    ));
                }
            }
        }
        if issues.is_empty() {
            Ok(vectors.len() as u64)
        } else {
            Err(CertificateDefect { issues })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn rat(p: i64, q: i64) -> RadicalRational {
        RadicalRational::from_rational(ratio(p, q))
    }

    fn mv(entries: &[u64]) -> MultiplicityVector {
        MultiplicityVector::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn plane_two_point_boundary_certifies() {
        let outcome = certify_lower_bound(&BigInt::from(1), 2, &rat(1, 2), 1).unwrap();
        let cert = outcome.certificate().expect("should certify at 1/2");
        assert_eq!(cert.enumeration_bound, BigInt::from(2));
        assert_eq!(cert.cases_checked, 1);
        assert_eq!(cert.refuted_by[0].m, mv(&[1]));
        assert_eq!(
            cert.refuted_by[0].filter,
            RefutationFilter::DegreePositivity
        );
        assert_eq!(cert.semantic_scope, SEMANTIC_SCOPE);
    }

    #[test]
    fn plane_two_point_fails_above_boundary() {
        let outcome = certify_lower_bound(&BigInt::from(1), 2, &rat(501, 1000), 1).unwrap();
        let traces = outcome.traces().expect("must not certify above 1/2");
        assert!(traces.iter().any(|t| t.m == mv(&[1, 1])
            && t.degree_min == BigInt::one()
            && t.degree_max == BigInt::one()));
    }

    #[test]
    fn single_point_traces_name_the_surviving_degrees() {
        // L² = 3, target 13/8: the nodal-degree case (m=2, d=3) survives
        let outcome = certify_lower_bound(&BigInt::from(3), 1, &rat(13, 8), 1).unwrap();
        let traces = outcome.traces().expect("13/8 exceeds what numerics allow");
        assert!(traces.iter().any(|t| t.m == mv(&[2])
            && t.degree_min <= BigInt::from(3)
            && t.degree_max == BigInt::from(3)));
        // the fiber-type case (m=1, d=1) also survives once the target exceeds 1
        assert!(traces
            .iter()
            .any(|t| t.m == mv(&[1]) && t.degree_min == BigInt::one()));
    }

    #[test]
    fn single_point_certifies_up_to_the_fiber_quotient() {
        // for L² = 3 the honest numerical boundary at one point is 1:
        // a fibration with L·F = 1 cannot be excluded by lattice data
        let at_boundary = certify_lower_bound(&BigInt::from(3), 1, &rat(1, 1), 1).unwrap();
        assert!(at_boundary.is_certified());
        let above = certify_lower_bound(&BigInt::from(3), 1, &rat(1001, 1000), 1).unwrap();
        assert!(!above.is_certified());
        let three_halves = certify_lower_bound(&BigInt::from(3), 1, &rat(3, 2), 1).unwrap();
        let traces = three_halves
            .traces()
            .expect("3/2 is not numerically certifiable");
        assert!(traces.iter().any(|t| t.m == mv(&[1])));
    }

    #[test]
    fn boundary_case_at_target_is_not_a_violation() {
        // L² = 3, target 3/2: degree 3 at multiplicity 2 gives exactly 3/2,
        // which is not a strict violation, so the m = (2) case is refuted
        let outcome = certify_lower_bound(&BigInt::from(3), 1, &rat(3, 2), 1).unwrap();
        let traces = outcome.traces().unwrap();
        assert!(!traces.iter().any(|t| t.m == mv(&[2])));
    }

    #[test]
    fn target_at_or_above_upper_bound_is_an_error() {
        let sqrt3 = RadicalRational::sqrt_of_rational(&ratio(3, 1));
        assert!(matches!(
            certify_lower_bound(&BigInt::from(3), 1, &sqrt3, 1),
            Err(BoundsError::TargetNotBelowUpperBound { .. })
        ));
        assert!(certify_lower_bound(&BigInt::from(3), 1, &rat(7, 4), 1).is_err());
        assert!(certify_lower_bound(&BigInt::from(0), 1, &rat(1, 2), 1).is_err());
    }

    #[test]
    fn outcome_is_identical_across_worker_counts() {
        for (l2, r, t) in [
            (1i64, 2u64, rat(1, 2)),
            (4, 3, rat(9, 10)),
            (3, 2, rat(4, 5)),
        ] {
            let serial = certify_lower_bound(&BigInt::from(l2), r, &t, 1).unwrap();
            for jobs in [2, 4, 7] {
                let parallel = certify_lower_bound(&BigInt::from(l2), r, &t, jobs).unwrap();
                assert_eq!(serial, parallel);
                assert_eq!(
                    serde_json::to_string(&serial).unwrap(),
                    serde_json::to_string(&parallel).unwrap()
                );
            }
        }
    }

    #[test]
    fn certificates_revalidate_and_detect_tampering() {
        let outcome = certify_lower_bound(&BigInt::from(2), 2, &rat(3, 5), 1).unwrap();
        let cert = outcome.certificate().unwrap().clone();
        let cases = cert.revalidate().unwrap();
        assert_eq!(cases, cert.cases_checked);

        let mut tampered = cert.clone();
        tampered.refuted_by[0].filter = RefutationFilter::DegreeIntegrality;
        assert!(tampered.revalidate().is_err());

        let mut wrong_scope = cert.clone();
        wrong_scope.semantic_scope = "ALL_POINTS".into();
        assert!(wrong_scope.revalidate().is_err());

        let mut wrong_cap = cert;
        wrong_cap.enumeration_bound = BigInt::from(100);
        assert!(wrong_cap.revalidate().is_err());
    }

    #[test]
    fn json_roundtrip_preserves_certificates() {
        let outcome = certify_lower_bound(&BigInt::from(1), 2, &rat(1, 2), 1).unwrap();
        let cert = outcome.certificate().unwrap();
        let json = serde_json::to_string_pretty(cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, cert);
        assert_eq!(back.revalidate().unwrap(), cert.cases_checked);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let vectors = enumerate_supports(3, 4).unwrap();
        let rendered: Vec<String> = vectors.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            rendered,
            vec!["(1)", "(1, 1)", "(1, 1, 1)", "(2)", "(2, 1)", "(3)",]
        );
        // sums all strictly below the cap, lengths bounded by the part limit
        for m in &vectors {
            assert!(m.sum() < BigInt::from(4));
            assert!(m.len() <= 3);
        }
    }
}
