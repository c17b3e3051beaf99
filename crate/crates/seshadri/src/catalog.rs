//! Built-in surface models and ingestion of user-supplied ones.
//!
//! A model is an intersection lattice, an ample class, an optional
//! canonical class, and a catalog of curve classes with asserted
//! multiplicity capabilities at general points. Those capabilities are
//! model data with a provenance string, never derived: whether a linear
//! system really carries members with prescribed singularities at general
//! points is not visible from the lattice, so the library treats the
//! assertions as axioms of the model and surfaces them in every witness.
//!
//! Built-ins are selected by name at runtime (`P2`, `cubic`, `scroll(r)`).
//! A profile with `max_points = 0` marks a rigid class that passes through
//! no very general point; it is carried for diagnostics and nef tests but
//! contributes no quotient.

use crate::bounds::{epsilon_upper, seshadri_quotient, MultiplicityVector, QuotientWitness};
use crate::exact::{RadicalRational, Rational};
use crate::lattice::{arithmetic_genus, hodge_filter, DivisorClass, IntersectionLattice};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CatalogError {
    #[error("unknown built-in surface {0:?}; available: P2, cubic, scroll(r) with r ≥ 3")]
    UnknownBuiltin(String),
    #[error("scroll models need r ≥ 3, got {0}")]
    ScrollTooSmall(u64),
    #[error("failed to parse surface document: {0}")]
    Parse(String),
    #[error("invalid surface document:\n  {}", issues.join("\n  "))]
    InvalidDocument { issues: Vec<String> },
    #[error("the surface has an empty catalog")]
    EmptyCatalog,
    #[error("the number of points must be at least 1")]
    ZeroPoints,
}

/// Rule assigning multiplicities to general points: the curve can be
/// placed with multiplicity `mult` at up to `max_points` points in
/// general position. `max_points = 0` means the class is rigid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub max_points: u64,
    pub mult: u64,
}

impl MultiplicityProfile {
    /// The multiplicity vector this rule assigns to `r` general points,
    /// or `None` when the class passes through none of them.
    pub fn place(&self, points: u64) -> Option<MultiplicityVector> {
        let placed = points.min(self.max_points);
        if placed == 0 {
            return None;
        }
        Some(
            MultiplicityVector::uniform(self.mult, placed as usize)
                .expect("mult ≥ 1 checked at load"),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEntry {
    pub name: String,
    pub class: DivisorClass,
    pub profile: MultiplicityProfile,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    name: String,
    lattice: IntersectionLattice,
    ample: DivisorClass,
    canonical: Option<DivisorClass>,
    catalog: Vec<CurveEntry>,
}

impl SurfaceModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn ample(&self) -> &DivisorClass {
        &self.ample
    }

    pub fn canonical(&self) -> Option<&DivisorClass> {
        self.canonical.as_ref()
    }

    pub fn catalog(&self) -> &[CurveEntry] {
        &self.catalog
    }

    pub fn l_squared(&self) -> BigInt {
        self.lattice
            .self_intersection(&self.ample)
            .expect("ample class validated against the lattice")
    }

    /// `L·C` for a catalog entry.
    pub fn degree(&self, entry: &CurveEntry) -> BigInt {
        self.lattice
            .intersect(&self.ample, &entry.class)
            .expect("catalog classes validated against the lattice")
    }

    pub fn to_document(&self) -> SurfaceDocument {
        let to_i64 =
            |v: &BigInt| -> i64 { v.to_i64().expect("model coordinates fit document integers") };
        SurfaceDocument {
            name: self.name.clone(),
            rank: self.lattice.rank(),
            gram: self
                .lattice
                .gram()
                .iter()
                .map(|row| row.iter().map(to_i64).collect())
                .collect(),
            ample: self.ample.coords().iter().map(to_i64).collect(),
            canonical: self
                .canonical
                .as_ref()
                .map(|k| k.coords().iter().map(to_i64).collect()),
            catalog: self
                .catalog
                .iter()
                .map(|entry| CurveEntryDocument {
                    name: entry.name.clone(),
                    class: entry.class.coords().iter().map(to_i64).collect(),
                    profile: entry.profile,
                    provenance: entry.provenance.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serialization")
    }
}

/// The on-disk surface description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDocument {
    pub name: String,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    #[serde(rename = "L")]
    pub ample: Vec<i64>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<i64>>,
    pub catalog: Vec<CurveEntryDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEntryDocument {
    pub name: String,
    pub class: Vec<i64>,
    pub profile: MultiplicityProfile,
    pub provenance: String,
}

/// Parses and fully validates a surface description; either a usable
/// model or the complete list of problems found.
pub fn load_surface(text: &str) -> Result<SurfaceModel, CatalogError> {
    let document: SurfaceDocument =
        serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
    model_from_document(document)
}

pub fn model_from_document(document: SurfaceDocument) -> Result<SurfaceModel, CatalogError> {
    let mut issues: Vec<String> = Vec::new();

    if document.rank == 0 {
        issues.push("rank must be at least 1".into());
    }
    if document.gram.len() != document.rank {
        issues.push(format!(
            "gram has {} rows, declared rank is {}",
            document.gram.len(),
            document.rank
        ));
    }
    let lattice = match IntersectionLattice::new(
        document
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    ) {
        Ok(lattice) => {
            if let Err(e) = lattice.check_signature() {
                issues.push(e.to_string());
            }
            Some(lattice)
        }
        Err(e) => {
            issues.push(e.to_string());
            None
        }
    };

    if document.ample.len() != document.rank {
        issues.push(format!(
            "L has {} coordinates, rank is {}",
            document.ample.len(),
            document.rank
        ));
    }
    if let Some(k) = &document.canonical {
        if k.len() != document.rank {
            issues.push(format!(
                "K has {} coordinates, rank is {}",
                k.len(),
                document.rank
            ));
        }
    }

    let ample = DivisorClass::from_ints(&document.ample);
    if let Some(lattice) = &lattice {
        if let Ok(l2) = lattice.self_intersection(&ample) {
            if !l2.is_positive() {
                issues.push(format!("L² must be at least 1, got {l2}"));
            }
        }
    }

    for entry in &document.catalog {
        if entry.class.len() != document.rank {
            issues.push(format!(
                "catalog entry {:?}: class has {} coordinates, rank is {}",
                entry.name,
                entry.class.len(),
                document.rank
            ));
            continue;
        }
        if entry.profile.mult == 0 {
            issues.push(format!(
                "catalog entry {:?}: malformed profile, mult must be at least 1",
                entry.name
            ));
        }
        if let Some(lattice) = &lattice {
            let class = DivisorClass::from_ints(&entry.class);
            if let Ok(degree) = lattice.intersect(&ample, &class) {
                if !degree.is_positive() {
                    issues.push(format!(
                        "catalog entry {:?}: L·C must be at least 1, got {degree}",
                        entry.name
                    ));
                }
            }
        }
    }

    if !issues.is_empty() {
        return Err(CatalogError::InvalidDocument { issues });
    }
    Ok(SurfaceModel {
        name: document.name,
        lattice: lattice.expect("validated above"),
        ample,
        canonical: document.canonical.map(|k| DivisorClass::from_ints(&k)),
        catalog: document
            .catalog
            .into_iter()
            .map(|entry| CurveEntry {
                name: entry.name,
                class: DivisorClass::from_ints(&entry.class),
                profile: entry.profile,
                provenance: entry.provenance,
            })
            .collect(),
    })
}

/// Built-in models, selected by name: `P2`, `cubic`, or `scroll(r)` with
/// `r ≥ 3`. Names are case-insensitive.
pub fn builtin(name: &str) -> Result<SurfaceModel, CatalogError> {
    let normalized = name.trim().to_ascii_lowercase();
    match normalized.as_str() {
        "p2" => Ok(projective_plane()),
        "cubic" => Ok(cubic_surface()),
        _ => {
            if let Some(inner) = normalized
                .strip_prefix("scroll(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let r: u64 = inner
                    .trim()
                    .parse()
                    .map_err(|_| CatalogError::UnknownBuiltin(name.to_string()))?;
                return scroll(r);
            }
            Err(CatalogError::UnknownBuiltin(name.to_string()))
        }
    }
}

fn projective_plane() -> SurfaceModel {
    SurfaceModel {
        name: "P2".into(),
        lattice: IntersectionLattice::diagonal(&[1]),
        ample: DivisorClass::from_ints(&[1]),
        canonical: Some(DivisorClass::from_ints(&[-3])),
        catalog: vec![
            CurveEntry {
                name: "line".into(),
                class: DivisorClass::from_ints(&[1]),
                profile: MultiplicityProfile {
                    max_points: 2,
                    mult: 1,
                },
                provenance: "a line passes through any two points".into(),
            },
            CurveEntry {
                name: "conic".into(),
                class: DivisorClass::from_ints(&[2]),
                profile: MultiplicityProfile {
                    max_points: 5,
                    mult: 1,
                },
                provenance: "a smooth conic passes through any five points in general position"
                    .into(),
            },
        ],
    }
}

fn cubic_surface() -> SurfaceModel {
    let lattice = IntersectionLattice::diagonal(&[1, -1, -1, -1, -1, -1, -1]);
    let hyperplane = DivisorClass::from_ints(&[3, -1, -1, -1, -1, -1, -1]);
    let mut catalog = vec![CurveEntry {
        name: "nodal hyperplane section".into(),
        class: hyperplane.clone(),
        profile: MultiplicityProfile {
            max_points: 1,
            mult: 2,
        },
        provenance: "tangent hyperplane section: the section through any point by its \
                     tangent plane acquires a node there"
            .into(),
    }];
    // the 27 lines, generated from the three orbit shapes
    for i in 1..=6usize {
        let mut coords = [0i64; 7];
        coords[i] = 1;
        catalog.push(CurveEntry {
            name: format!("E{i}"),
            class: DivisorClass::from_ints(&coords),
            profile: MultiplicityProfile { max_points: 0, mult: 1 },
            provenance: format!(
                "line: exceptional class over base point {i}; rigid, passes through no very general point"
            ),
        });
    }
    for i in 1..=6usize {
        for j in (i + 1)..=6usize {
            let mut coords = [0i64; 7];
            coords[0] = 1;
            coords[i] = -1;
            coords[j] = -1;
            catalog.push(CurveEntry {
                name: format!("F{i}{j}"),
                class: DivisorClass::from_ints(&coords),
                profile: MultiplicityProfile {
                    max_points: 0,
                    mult: 1,
                },
                provenance: format!(
                    "line: strict transform of the join of base points {i} and {j}; rigid"
                ),
            });
        }
    }
    for k in 1..=6usize {
        let mut coords = [-1i64; 7];
        coords[0] = 2;
        coords[k] = 0;
        catalog.push(CurveEntry {
            name: format!("G{k}"),
            class: DivisorClass::from_ints(&coords),
            profile: MultiplicityProfile { max_points: 0, mult: 1 },
            provenance: format!(
                "line: strict transform of the conic through the five base points other than {k}; rigid"
            ),
        });
    }
    SurfaceModel {
        name: "cubic".into(),
        lattice,
        ample: hyperplane.clone(),
        canonical: Some(hyperplane.scale(-1)),
        catalog,
    }
}

fn scroll(r: u64) -> Result<SurfaceModel, CatalogError> {
    if r < 3 {
        return Err(CatalogError::ScrollTooSmall(r));
    }
    let degree = (r - 1) as i64;
    let lattice = IntersectionLattice::new(vec![
        vec![BigInt::from(degree), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::from(0)],
    ])
    .expect("fixed 2×2 symmetric gram");
    Ok(SurfaceModel {
        name: format!("scroll({r})"),
        lattice,
        ample: DivisorClass::from_ints(&[1, 0]),
        canonical: Some(DivisorClass::from_ints(&[-2, (r as i64) - 3])),
        catalog: vec![
            CurveEntry {
                name: "fiber".into(),
                class: DivisorClass::from_ints(&[0, 1]),
                profile: MultiplicityProfile {
                    max_points: 1,
                    mult: 1,
                },
                provenance: "a ruling fiber passes through every single point".into(),
            },
            CurveEntry {
                name: "hyperplane section".into(),
                class: DivisorClass::from_ints(&[1, 0]),
                profile: MultiplicityProfile {
                    max_points: r,
                    mult: 1,
                },
                provenance: format!(
                    "{r} points in general position span a hyperplane, so a hyperplane \
                     section passes through all of them; for any other irreducible curve D \
                     through one of the points, L·D = C·D ≥ Σᵢ mult_{{Pᵢ}}(D)·mult_{{Pᵢ}}(C) \
                     ≥ Σᵢ mult_{{Pᵢ}}(D), so the hyperplane section is the only curve that \
                     can compute the constant"
                ),
            },
        ],
    })
}

/// Severity of a validation finding. `Fail` marks data no actual surface
/// can carry; `Warn` marks assertions the lattice cannot corroborate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagnosticLevel {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub check: String,
    pub subject: String,
    pub level: DiagnosticLevel,
    pub detail: String,
}

fn diag(check: &str, subject: &str, level: DiagnosticLevel, detail: String) -> Diagnostic {
    Diagnostic {
        check: check.into(),
        subject: subject.into(),
        level,
        detail,
    }
}

/// Runs every lattice-visible sanity check over a model: signature, `L²`,
/// per-entry degrees, Hodge consistency, adjunction parity and the
/// genus-versus-multiplicity budget (the latter two only when `K` is
/// present). Diagnostics, not failures: the caller decides what to do.
pub fn validate(model: &SurfaceModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    match model.lattice().check_signature() {
        Ok(()) => out.push(diag(
            "signature",
            model.name(),
            DiagnosticLevel::Pass,
            format!("(1,{},0)", model.lattice().rank() - 1),
        )),
        Err(e) => out.push(diag(
            "signature",
            model.name(),
            DiagnosticLevel::Fail,
            e.to_string(),
        )),
    }

    let l2 = model.l_squared();
    out.push(diag(
        "ample self-intersection",
        model.name(),
        if l2.is_positive() {
            DiagnosticLevel::Pass
        } else {
            DiagnosticLevel::Fail
        },
        format!("L² = {l2}"),
    ));

    if model.canonical().is_none() {
        out.push(diag(
            "canonical class",
            model.name(),
            DiagnosticLevel::Warn,
            "K not supplied; genus and parity diagnostics disabled".into(),
        ));
    }

    for entry in model.catalog() {
        let degree = model.degree(entry);
        out.push(diag(
            "degree",
            &entry.name,
            if degree.is_positive() {
                DiagnosticLevel::Pass
            } else {
                DiagnosticLevel::Fail
            },
            format!("L·C = {degree}"),
        ));

        let c2 = model
            .lattice()
            .self_intersection(&entry.class)
            .expect("validated class");
        let hodge_ok = l2.is_positive() && hodge_filter(&l2, &degree, &c2);
        out.push(diag(
            "hodge consistency",
            &entry.name,
            if hodge_ok {
                DiagnosticLevel::Pass
            } else {
                DiagnosticLevel::Fail
            },
            format!("L²·C² = {} vs (L·C)² = {}", &l2 * &c2, &degree * &degree),
        ));

        if let Some(k) = model.canonical() {
            let ck = model
                .lattice()
                .intersect(&entry.class, k)
                .expect("validated class");
            let parity_ok = ((&c2 + &ck) % BigInt::from(2)).is_zero();
            out.push(diag(
                "adjunction parity",
                &entry.name,
                if parity_ok {
                    DiagnosticLevel::Pass
                } else {
                    DiagnosticLevel::Fail
                },
                format!("C² + C·K = {}", &c2 + &ck),
            ));
            if parity_ok {
                let genus =
                    arithmetic_genus(model.lattice(), &entry.class, k).expect("validated class");
                if genus < Rational::zero() {
                    out.push(diag(
                        "genus",
                        &entry.name,
                        DiagnosticLevel::Warn,
                        format!("arithmetic genus {genus} is negative; no reduced irreducible curve has this class"),
                    ));
                } else if entry.profile.mult >= 2 && entry.profile.max_points >= 1 {
                    // a member with max_points ordinary points of multiplicity
                    // mult spends mult(mult−1)/2 of the genus at each
                    let mult = BigInt::from(entry.profile.mult);
                    let delta: BigInt =
                        BigInt::from(entry.profile.max_points) * &mult * (&mult - BigInt::from(1))
                            / BigInt::from(2);
                    let fits = Rational::from(delta.clone()) <= genus;
                    out.push(diag(
                        "genus budget",
                        &entry.name,
                        if fits {
                            DiagnosticLevel::Pass
                        } else {
                            DiagnosticLevel::Warn
                        },
                        format!("Σ m(m−1)/2 = {delta} against genus {genus}"),
                    ));
                }
            }
        }
    }
    out
}

/// The catalog minimum: either a witnessing curve or the report that the
/// catalog exhibits no sub-maximal quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogMinimum {
    Witness(QuotientWitness),
    Maximal { epsilon_upper: RadicalRational },
}

/// Minimizes the quotient over all catalog entries, placing each entry at
/// `r` general points according to its profile (truncated to the profile's
/// capability). Ties keep the earliest catalog entry.
pub fn min_quotient_over_catalog(
    model: &SurfaceModel,
    points: u64,
) -> Result<CatalogMinimum, CatalogError> {
    if points == 0 {
        return Err(CatalogError::ZeroPoints);
    }
    if model.catalog().is_empty() {
        return Err(CatalogError::EmptyCatalog);
    }
    let mut best: Option<QuotientWitness> = None;
    for entry in model.catalog() {
        let Some(mults) = entry.profile.place(points) else {
            continue;
        };
        let degree = model.degree(entry);
        let quotient = seshadri_quotient(&degree, &mults).expect("catalog degrees are positive");
        if best.as_ref().is_none_or(|b| quotient < b.quotient) {
            best = Some(QuotientWitness {
                curve_name: entry.name.clone(),
                degree,
                mults,
                quotient,
                provenance: entry.provenance.clone(),
            });
        }
    }
    let upper = epsilon_upper(&model.l_squared(), points).expect("validated model");
    match best {
        Some(witness) if RadicalRational::from_rational(witness.quotient.clone()) < upper => {
            Ok(CatalogMinimum::Witness(witness))
        }
        _ => Ok(CatalogMinimum::Maximal {
            epsilon_upper: upper,
        }),
    }
}
