//! Mechanized case analysis behind the multi-point fibration bound.
//!
//! Given a multiplicity vector assumed to witness a quotient strictly
//! below `√((r−1)/r)·√(L²/r)`, exactly one of four arguments applies, and
//! each is reproduced here as an explicit inequality chain with exact
//! numbers. The chains are verified from first principles as they are
//! emitted, independently of the prose that motivates them.

use super::{kuechle_holds, xu_floor, BoundsError, MultiplicityVector};
use crate::exact::Rational;
use num_bigint::BigInt;
use serde::Serialize;
use std::fmt;

/// Which argument covers the vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofCase {
    /// Two points, both multiplicities positive: a closed-form integer
    /// identity is violated.
    TwoPointBase,
    /// Three or more points, all multiplicities ≥ 1, largest ≥ 2: the
    /// purely numerical inequality contradicts the Hodge bound.
    KuechleContradiction,
    /// All multiplicities equal 1: the family floor alone pins the
    /// quotient at the threshold, so no strict violation exists.
    UniformUnit,
    /// Trailing zero multiplicities: the same curve violates the strictly
    /// smaller threshold for its positive support, reducing the point
    /// count.
    SupportReduction,
}

impl fmt::Display for ProofCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ProofCase::TwoPointBase => "two-point base identity",
            ProofCase::KuechleContradiction => "numerical-lemma contradiction",
            ProofCase::UniformUnit => "uniform unit multiplicities",
            ProofCase::SupportReduction => "reduction to the positive support",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CaseOutcome {
    /// The assumed strict violation is impossible.
    ContradictionConfirmed,
    /// The quotient is pinned at or above the threshold; equality may be
    /// attained, so there is no strict violation but also no contradiction
    /// with equality.
    NoStrictViolationPossible,
    /// The hypothesis transfers to fewer points with a strictly smaller
    /// threshold.
    ReducesTo { points: u64 },
}

/// The identified case together with its exact inequality chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionReport {
    pub points: u64,
    pub m: MultiplicityVector,
    pub case: ProofCase,
    pub outcome: CaseOutcome,
    pub steps: Vec<String>,
}

/// Identifies which argument covers `m` (interpreted at `points` points)
/// and emits the exact inequality chain showing that a quotient strictly
/// below `√((r−1)/r)·√(L²/r)` is impossible, or that the problem reduces
/// to fewer points. Each chain is re-verified numerically as it is built.
pub fn reproduce_case_analysis(
    points: u64,
    m: &MultiplicityVector,
) -> Result<ContradictionReport, BoundsError> {
    if points < 2 {
        return Err(BoundsError::NoCaseApplies(
            "the case analysis covers two or more points".into(),
        ));
    }
    if m.len() as u64 != points {
        return Err(BoundsError::LengthMismatch {
            expected: points,
            found: m.len(),
        });
    }

    if m.has_zero() {
        return Ok(reduce_to_support(points, m));
    }
    if points == 2 {
        return Ok(two_point_base(m));
    }
    if m.max() == 1 {
        return Ok(uniform_unit(points, m));
    }
    kuechle_case(points, m)
}

fn threshold_ratio(points: u64) -> Rational {
    // (r−1)/r², the square of the threshold divided by L²
    Rational::new(
        BigInt::from(points - 1),
        BigInt::from(points) * BigInt::from(points),
    )
}

fn reduce_to_support(points: u64, m: &MultiplicityVector) -> ContradictionReport {
    let support = m.support().len() as u64;
    let from = threshold_ratio(points);
    // at a single point the applicable threshold ratio is 3/4
    let to = if support == 1 {
        Rational::new(BigInt::from(3), BigInt::from(4))
    } else {
        threshold_ratio(support)
    };
    assert!(
        from < to,
        "threshold must shrink when dropping zero entries"
    );
    let mut steps = vec![
        format!(
            "the quotient over the {support} positive entries equals the quotient over all {points} points"
        ),
        format!(
            "assumed violation: quotient² < ({}/{})·L² = ({from})·L²",
            points - 1,
            BigInt::from(points) * BigInt::from(points),
        ),
        format!("threshold ratio shrinks: {from} < {to}, so the violation persists at {support} point(s)"),
    ];
    if support == 1 {
        steps.push("at one point the single-point threshold ratio 3/4 applies".into());
    }
    ContradictionReport {
        points,
        m: m.clone(),
        case: ProofCase::SupportReduction,
        outcome: CaseOutcome::ReducesTo { points: support },
        steps,
    }
}

fn two_point_base(m: &MultiplicityVector) -> ContradictionReport {
    let (m1, m2) = (BigInt::from(m.max()), BigInt::from(m.min()));
    let xu = xu_floor(m);
    let sum = m.sum();
    // assumed violation combined with the Hodge inequality:
    //   m₁² + m₂² − m₂ < (m₁+m₂)²/4,
    // in integer form 2(m₁²+m₂²) + (m₁−m₂)² < 4m₂.
    let lhs = BigInt::from(2) * (&m1 * &m1 + &m2 * &m2) + (&m1 - &m2) * (&m1 - &m2);
    let rhs = BigInt::from(4) * &m2;
    assert!(lhs >= rhs, "two-point identity must refute the violation");
    // first-principles check of the equivalence with the quarter bound
    let quarter = Rational::new(&sum * &sum, BigInt::from(4));
    assert_eq!(
        Rational::from(xu.clone()) >= quarter,
        lhs >= rhs,
        "integer form must match the fractional form"
    );
    ContradictionReport {
        points: 2,
        m: m.clone(),
        case: ProofCase::TwoPointBase,
        outcome: CaseOutcome::ContradictionConfirmed,
        steps: vec![
            format!("family floor: C² ≥ m₁² + m₂² − m₂ = {xu}"),
            format!(
                "assumed violation with Hodge: {xu} < (m₁+m₂)²/4 = {}/4",
                &sum * &sum
            ),
            format!("integer form: 2(m₁²+m₂²) + (m₁−m₂)² < 4m₂, i.e. {lhs} < {rhs}"),
            format!("false for m₁ ≥ m₂ ≥ 1: {lhs} ≥ {rhs} — contradiction"),
        ],
    }
}

fn uniform_unit(points: u64, m: &MultiplicityVector) -> ContradictionReport {
    let xu = xu_floor(m);
    assert_eq!(xu, BigInt::from(points - 1));
    let ratio = threshold_ratio(points);
    let sum = m.sum();
    let quotient_ratio = Rational::new(xu.clone(), &sum * &sum);
    assert_eq!(
        quotient_ratio, ratio,
        "floor must pin the quotient at the threshold"
    );
    ContradictionReport {
        points,
        m: m.clone(),
        case: ProofCase::UniformUnit,
        outcome: CaseOutcome::NoStrictViolationPossible,
        steps: vec![
            format!("family floor: C² ≥ r − 1 = {xu}"),
            format!("Hodge: (L·C)² ≥ L²·C² ≥ {xu}·L²"),
            format!(
                "quotient² = (L·C)²/r² ≥ ({xu}/{})·L², exactly the threshold ratio {ratio}",
                &sum * &sum
            ),
            "a strict violation is impossible; equality can be attained".into(),
        ],
    }
}

fn kuechle_case(points: u64, m: &MultiplicityVector) -> Result<ContradictionReport, BoundsError> {
    let holds = kuechle_holds(m)?;
    assert!(
        holds,
        "the numerical lemma holds on every admissible vector"
    );
    let xu = xu_floor(m);
    let sum = m.sum();
    let sum_sq = &sum * &sum;
    let ratio = threshold_ratio(points);
    let r_plus_one = BigInt::from(points + 1);
    // the lemma in the form (Σm)² < (r+1)(Σm² − m_r)
    let lemma_rhs = &r_plus_one * &xu;
    assert!(sum_sq < lemma_rhs);
    // combined: xu < (r−1)/r²·(Σm)² < (r−1)(r+1)/r²·xu < xu, impossible;
    // equivalently the assumed bound xu < (r−1)/r²·(Σm)² is simply false
    let bound = &ratio * Rational::from(sum_sq.clone());
    assert!(
        Rational::from(xu.clone()) > bound,
        "floor must exceed the threshold bound"
    );
    Ok(ContradictionReport {
        points,
        m: m.clone(),
        case: ProofCase::KuechleContradiction,
        outcome: CaseOutcome::ContradictionConfirmed,
        steps: vec![
            format!("family floor: C² ≥ Σmᵢ² − min mᵢ = {xu}"),
            format!("assumed violation with Hodge: {xu} < ({ratio})·(Σmᵢ)² = ({ratio})·{sum_sq}"),
            format!("numerical lemma: (Σmᵢ)² < (r+1)·(Σmᵢ² − min mᵢ), i.e. {sum_sq} < {lemma_rhs}"),
            format!(
                "chain: {xu} < ({ratio})·{sum_sq} < ((r−1)(r+1)/r²)·{xu} < {xu} — contradiction"
            ),
        ],
    })
}
