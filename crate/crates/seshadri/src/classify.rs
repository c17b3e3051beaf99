//! Threshold classification of Seshadri estimates.
//!
//! Verdicts state what the fibration theorems force, given an estimate
//! and how that estimate was obtained. Establishing that the constant is
//! strictly below a threshold needs an upper estimate; a certified lower
//! bound can never force a fibration, and the classifier says so rather
//! than overclaim. All comparisons are exact.

use crate::bounds::{epsilon_upper, BoundsError};
use crate::exact::{rational_string, RadicalRational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("L² must be a positive integer, got {0}")]
    NonPositiveSelfIntersection(BigInt),
    #[error("the estimate must be positive, got {0}")]
    EpsilonNotPositive(String),
    #[error("estimate {epsilon} exceeds the upper bound {upper}")]
    EpsilonAboveUpperBound { epsilon: String, upper: String },
    #[error("multi-point classification needs r ≥ 2, got {0}")]
    TooFewPoints(u64),
    #[error("invalid point range {from}..{to}")]
    BadRange { from: u64, to: u64 },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    FibrationForced,
    FibrationOrCubic,
    BoundaryInconclusive,
    Inconclusive,
    Maximal,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            VerdictKind::FibrationForced => "FIBRATION_FORCED",
            VerdictKind::FibrationOrCubic => "FIBRATION_OR_CUBIC",
            VerdictKind::BoundaryInconclusive => "BOUNDARY_INCONCLUSIVE",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
            VerdictKind::Maximal => "MAXIMAL",
        };
        f.write_str(name)
    }
}

/// How the estimate fed to the classifier was obtained. Only an upper
/// estimate (or a claimed exact value) can witness `ε < threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonKind {
    CertifiedLowerBound,
    WitnessedUpperBound,
    ClaimedExact,
}

impl std::fmt::Display for EpsilonKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            EpsilonKind::CertifiedLowerBound => "certified lower bound",
            EpsilonKind::WitnessedUpperBound => "witnessed upper bound",
            EpsilonKind::ClaimedExact => "claimed exact value",
        };
        f.write_str(name)
    }
}

/// One exact comparison performed while classifying.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    #[serde(with = "rational_string")]
    pub lhs: Rational,
    pub relation: String,
    #[serde(with = "rational_string")]
    pub rhs: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

impl Comparison {
    fn new(label: &str, lhs: Rational, rhs: Rational, citation: Option<&str>) -> Self {
        let relation = match lhs.cmp(&rhs) {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        }
        .to_string();
        Comparison {
            label: label.to_string(),
            lhs,
            relation,
            rhs,
            citation: citation.map(str::to_string),
        }
    }

    /// Re-evaluates the stored comparison.
    pub fn recheck(&self) -> bool {
        let relation = match self.lhs.cmp(&self.rhs) {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        };
        relation == self.relation
    }
}

/// A threshold verdict with its full exact comparison trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(rename = "r")]
    pub points: u64,
    /// `ε²·r/L²`, always in `(0, 1]`.
    #[serde(with = "rational_string")]
    pub ratio_squared: Rational,
    #[serde(rename = "threshold", with = "rational_string")]
    pub threshold: Rational,
    #[serde(rename = "source")]
    pub threshold_source: String,
    pub epsilon: RadicalRational,
    pub epsilon_kind: EpsilonKind,
    pub trace: Vec<Comparison>,
}

impl Verdict {
    /// Re-derives the verdict kind from the stored exact data; a verdict
    /// is self-consistent when this returns its own kind and every trace
    /// comparison rechecks.
    pub fn replay(&self) -> VerdictKind {
        if self.points == 1 {
            decide_single(&self.ratio_squared, self.epsilon_kind).0
        } else {
            decide_multi(&self.ratio_squared, self.points, self.epsilon_kind).0
        }
    }

    pub fn trace_rechecks(&self) -> bool {
        self.trace.iter().all(Comparison::recheck)
    }
}

fn ratio_of(one: u64, other: u64) -> Rational {
    Rational::new(BigInt::from(one), BigInt::from(other))
}

fn decide_single(rho: &Rational, epsilon_kind: EpsilonKind) -> (VerdictKind, Rational, String) {
    let three_quarters = ratio_of(3, 4);
    let seven_ninths = ratio_of(7, 9);
    if rho == &Rational::one() {
        return (
            VerdictKind::Maximal,
            Rational::one(),
            "estimate at the nef upper bound".into(),
        );
    }
    if epsilon_kind == EpsilonKind::CertifiedLowerBound {
        return (
            VerdictKind::Inconclusive,
            three_quarters,
            "a lower bound cannot witness a sub-threshold constant".into(),
        );
    }
    match rho.cmp(&three_quarters) {
        Ordering::Less => (
            VerdictKind::FibrationForced,
            three_quarters,
            "single-point fibration theorem".into(),
        ),
        Ordering::Equal => (
            VerdictKind::FibrationOrCubic,
            three_quarters,
            "single-point equality case: the cubic surface with its hyperplane bundle".into(),
        ),
        Ordering::Greater => match rho.cmp(&seven_ninths) {
            Ordering::Less => (
                VerdictKind::FibrationForced,
                seven_ninths,
                "improved single-point bound, equality case already excluded".into(),
            ),
            _ => (
                VerdictKind::Inconclusive,
                seven_ninths,
                "estimate at or above every single-point threshold".into(),
            ),
        },
    }
}

fn decide_multi(
    rho: &Rational,
    points: u64,
    epsilon_kind: EpsilonKind,
) -> (VerdictKind, Rational, String) {
    let threshold = ratio_of(points - 1, points);
    if rho == &Rational::one() {
        return (
            VerdictKind::Maximal,
            Rational::one(),
            "estimate at the nef upper bound".into(),
        );
    }
    if epsilon_kind == EpsilonKind::CertifiedLowerBound {
        return (
            VerdictKind::Inconclusive,
            threshold,
            "a lower bound cannot witness a sub-threshold constant".into(),
        );
    }
    match rho.cmp(&threshold) {
        Ordering::Less => (
            VerdictKind::FibrationForced,
            threshold,
            "multi-point fibration theorem: the fibers compute the constant at very general points".into(),
        ),
        Ordering::Equal => (
            VerdictKind::BoundaryInconclusive,
            threshold,
            "optimal boundary: the plane and the scrolls attain this ratio unfibered by Seshadri curves".into(),
        ),
        Ordering::Greater => (
            VerdictKind::Inconclusive,
            threshold,
            "estimate above the multi-point threshold".into(),
        ),
    }
}

fn ratio_squared(
    epsilon: &RadicalRational,
    l_squared: &BigInt,
    points: u64,
) -> Result<Rational, ClassifyError> {
    if !l_squared.is_positive() {
        return Err(ClassifyError::NonPositiveSelfIntersection(
            l_squared.clone(),
        ));
    }
    if !epsilon.is_positive() {
        return Err(ClassifyError::EpsilonNotPositive(epsilon.to_string()));
    }
    let rho = epsilon.square() * Rational::new(BigInt::from(points), l_squared.clone());
    if rho > Rational::one() {
        return Err(ClassifyError::EpsilonAboveUpperBound {
            epsilon: epsilon.to_string(),
            upper: epsilon_upper(l_squared, points)?.to_string(),
        });
    }
    Ok(rho)
}

/// Classifies a single-point estimate: `ρ = ε²/L²` against 3/4 (strict →
/// fibration forced; equality → fibration or the cubic) and 7/9 (the
/// improved bound once the equality case is excluded).
pub fn classify_single(
    epsilon: &RadicalRational,
    l_squared: &BigInt,
    epsilon_kind: EpsilonKind,
) -> Result<Verdict, ClassifyError> {
    let rho = ratio_squared(epsilon, l_squared, 1)?;
    let (kind, threshold, source) = decide_single(&rho, epsilon_kind);
    let mut trace = vec![Comparison::new(
        "ratio² against the maximal value",
        rho.clone(),
        Rational::one(),
        Some("nef upper bound"),
    )];
    trace.push(Comparison::new(
        "ratio² against 3/4",
        rho.clone(),
        ratio_of(3, 4),
        Some("single-point fibration theorem"),
    ));
    if rho > ratio_of(3, 4) {
        trace.push(Comparison::new(
            "ratio² against 7/9",
            rho.clone(),
            ratio_of(7, 9),
            Some("improved single-point bound"),
        ));
    }
    Ok(Verdict {
        kind,
        points: 1,
        ratio_squared: rho,
        threshold,
        threshold_source: source,
        epsilon: epsilon.clone(),
        epsilon_kind,
        trace,
    })
}

/// Classifies a multi-point estimate: `ρ = ε²·r/L²` against `(r−1)/r`.
/// The boundary is genuinely ambiguous (the optimality examples attain
/// it without being fibered by Seshadri curves), so equality never forces
/// anything.
pub fn classify_multi(
    epsilon: &RadicalRational,
    l_squared: &BigInt,
    points: u64,
    epsilon_kind: EpsilonKind,
) -> Result<Verdict, ClassifyError> {
    if points < 2 {
        return Err(ClassifyError::TooFewPoints(points));
    }
    let rho = ratio_squared(epsilon, l_squared, points)?;
    let (kind, threshold, source) = decide_multi(&rho, points, epsilon_kind);
    let trace = vec![
        Comparison::new(
            "ratio² against the maximal value",
            rho.clone(),
            Rational::one(),
            Some("nef upper bound"),
        ),
        Comparison::new(
            &format!("ratio² against ({}-1)/{}", points, points),
            rho.clone(),
            ratio_of(points - 1, points),
            Some("multi-point fibration theorem"),
        ),
    ];
    Ok(Verdict {
        kind,
        points,
        ratio_squared: rho,
        threshold,
        threshold_source: source,
        epsilon: epsilon.clone(),
        epsilon_kind,
        trace,
    })
}

/// One row of the asymptotic lower-bound table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NagataRow {
    #[serde(rename = "r")]
    pub points: u64,
    pub ratio: RadicalRational,
    #[serde(with = "rational_string")]
    pub ratio_squared: Rational,
    pub lower_bound: RadicalRational,
    pub ratio_decimal: String,
    pub lower_bound_decimal: String,
}

/// Lower bounds `√((r−1)/r)·√(L²/r)` valid for every fibration-free
/// surface, tabulated over a range of point counts. The squared ratios
/// `(r−1)/r` increase strictly to 1, which is the asymptotic form of the
/// maximality conjecture for such surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NagataTable {
    #[serde(rename = "L2", with = "crate::exact::bigint_json")]
    pub l_squared: BigInt,
    pub rows: Vec<NagataRow>,
}

pub fn nagata_biran_table(
    l_squared: &BigInt,
    r_from: u64,
    r_to: u64,
) -> Result<NagataTable, ClassifyError> {
    if r_from < 2 {
        return Err(ClassifyError::TooFewPoints(r_from));
    }
    if r_from > r_to {
        return Err(ClassifyError::BadRange {
            from: r_from,
            to: r_to,
        });
    }
    if !l_squared.is_positive() {
        return Err(ClassifyError::NonPositiveSelfIntersection(
            l_squared.clone(),
        ));
    }
    let mut rows = Vec::with_capacity((r_to - r_from + 1) as usize);
    for r in r_from..=r_to {
        let ratio_sq = ratio_of(r - 1, r);
        let ratio = RadicalRational::sqrt_of_rational(&ratio_sq);
        let lower_bound = &ratio * &epsilon_upper(l_squared, r)?;
        rows.push(NagataRow {
            points: r,
            ratio_decimal: ratio.to_decimal(6),
            lower_bound_decimal: lower_bound.to_decimal(6),
            ratio,
            ratio_squared: ratio_sq,
            lower_bound,
        });
    }
    Ok(NagataTable {
        l_squared: l_squared.clone(),
        rows,
    })
}

impl NagataTable {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("r,ratio_squared,ratio,ratio_decimal,lower_bound,lower_bound_decimal\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.points,
                row.ratio_squared,
                row.ratio,
                row.ratio_decimal,
                row.lower_bound,
                row.lower_bound_decimal
            ));
        }
        out
    }
}
