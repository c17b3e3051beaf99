//! Intersection lattices of algebraic surfaces.
//!
//! A surface is presented by the Gram matrix of its divisor-class lattice,
//! which must have signature `(1, rank−1)`: one positive direction. On
//! such a lattice the Hodge-index inequality `L²·C² ≤ (L·C)²` holds for
//! every class `C` whenever `L² > 0`, and this module provides that filter
//! together with intersection products, exact signature verification by
//! congruence diagonalization, blow-up extensions and the adjunction
//! genus used for catalog diagnostics.

use crate::exact::{ratio, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is empty")]
    EmptyGram,
    #[error("gram matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("gram matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("class has {found} coordinates, lattice rank is {rank}")]
    DimensionMismatch { found: usize, rank: usize },
    #[error("signature is {found}, expected (1,{expected_negative},0)")]
    BadSignature {
        found: Signature,
        expected_negative: usize,
    },
    #[error("blow-up needs at least one point")]
    NoPoints,
}

/// Inertia of a symmetric form: counts of positive, negative and zero
/// diagonal entries after exact congruence diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Integer coordinates of a divisor class in a fixed lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coords: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![BigInt::zero(); rank],
        }
    }

    /// Basis vector `e_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        assert!(i < rank, "basis index {i} out of range for rank {rank}");
        let mut coords = vec![BigInt::zero(); rank];
        coords[i] = BigInt::one();
        DivisorClass { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        DivisorClass {
            coords: self.coords.iter().map(|c| c * &k).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "class length mismatch");
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "class length mismatch");
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A symmetric integer bilinear form hosting divisor classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    gram: Vec<Vec<BigInt>>,
}

impl IntersectionLattice {
    #[allow(clippy::needless_range_loop)] // the symmetry check is an index statement
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 {
            return Err(LatticeError::EmptyGram);
        }
        for (row, entries) in gram.iter().enumerate() {
            if entries.len() != rank {
                return Err(LatticeError::NotSquare {
                    row,
                    found: entries.len(),
                    expected: rank,
                });
            }
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric { i, j });
                }
            }
        }
        Ok(IntersectionLattice { gram })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Diagonal lattice; convenient for `diag(1, −1, …, −1)` bases.
    pub fn diagonal(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "diagonal lattice needs rank ≥ 1");
        let rank = entries.len();
        let mut gram = vec![vec![BigInt::zero(); rank]; rank];
        for (i, &v) in entries.iter().enumerate() {
            gram[i][i] = BigInt::from(v);
        }
        IntersectionLattice { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    fn check_dims(&self, a: &DivisorClass) -> Result<(), LatticeError> {
        if a.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                found: a.len(),
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Intersection product `aᵀ·G·b`, exactly.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<BigInt, LatticeError> {
        self.check_dims(a)?;
        self.check_dims(b)?;
        let mut total = BigInt::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, bj) in b.coords().iter().enumerate() {
                if !bj.is_zero() {
                    row += &self.gram[i][j] * bj;
                }
            }
            total += ai * row;
        }
        Ok(total)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<BigInt, LatticeError> {
        self.intersect(a, a)
    }

    /// Exact inertia by symmetric congruence (row/column) elimination over
    /// the rationals. Congruence preserves the signature, so the diagonal
    /// sign counts are the eigenvalue sign counts.
    #[allow(clippy::needless_range_loop)] // paired row/column updates read clearest with indices
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut m: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|v| Rational::from(v.clone())).collect())
            .collect();
        let mut sig = Signature {
            positive: 0,
            negative: 0,
            zero: 0,
        };

        let swap = |m: &mut Vec<Vec<Rational>>, a: usize, b: usize| {
            m.swap(a, b);
            for row in m.iter_mut() {
                row.swap(a, b);
            }
        };

        for k in 0..n {
            if m[k][k].is_zero() {
                if let Some(j) = ((k + 1)..n).find(|&j| !m[j][j].is_zero()) {
                    swap(&mut m, k, j);
                } else {
                    // all remaining diagonal entries vanish; look for an
                    // off-diagonal pivot and symmetrize it onto the diagonal
                    let mut found = None;
                    'search: for i in k..n {
                        for j in (i + 1)..n {
                            if !m[i][j].is_zero() {
                                found = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    match found {
                        Some((i, j)) => {
                            // row i += row j, col i += col j gives m[i][i] = 2·m[i][j]
                            for c in 0..n {
                                let v = m[j][c].clone();
                                m[i][c] += v;
                            }
                            for r in 0..n {
                                let v = m[r][j].clone();
                                m[r][i] += v;
                            }
                            if i != k {
                                swap(&mut m, k, i);
                            }
                        }
                        None => {
                            sig.zero += n - k;
                            break;
                        }
                    }
                }
            }
            let pivot = m[k][k].clone();
            if pivot.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for i in (k + 1)..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = &m[i][k] / &pivot;
                for c in 0..n {
                    let v = &factor * &m[k][c];
                    m[i][c] -= v;
                }
                for r in 0..n {
                    let v = &factor * &m[r][k];
                    m[r][i] -= v;
                }
            }
        }
        sig
    }

    /// Ok exactly when the signature is `(1, rank−1)` with no zero
    /// eigenvalues. Degenerate forms are rejected rather than quotiented.
    pub fn check_signature(&self) -> Result<(), LatticeError> {
        let sig = self.signature();
        let expected_negative = self.rank() - 1;
        if sig.positive == 1 && sig.negative == expected_negative && sig.zero == 0 {
            Ok(())
        } else {
            Err(LatticeError::BadSignature {
                found: sig,
                expected_negative,
            })
        }
    }

    /// Extends the lattice by `points` pairwise-orthogonal `(−1)`-classes,
    /// modelling the blow-up of that many distinct points. Requires a
    /// valid `(1, rank−1)` signature; the extension then has signature
    /// `(1, rank+points−1)` by construction.
    #[allow(clippy::needless_range_loop)]
    pub fn blow_up(
        &self,
        points: usize,
        canonical: Option<&DivisorClass>,
    ) -> Result<BlowupExtension, LatticeError> {
        if points == 0 {
            return Err(LatticeError::NoPoints);
        }
        self.check_signature()?;
        if let Some(k) = canonical {
            self.check_dims(k)?;
        }
        let base_rank = self.rank();
        let rank = base_rank + points;
        let mut gram = vec![vec![BigInt::zero(); rank]; rank];
        for i in 0..base_rank {
            for j in 0..base_rank {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in base_rank..rank {
            gram[i][i] = -BigInt::one();
        }
        let extended = IntersectionLattice { gram };
        let canonical_class = canonical.map(|k| {
            let mut coords = k.coords().to_vec();
            coords.extend(std::iter::repeat_n(BigInt::one(), points));
            DivisorClass::new(coords)
        });
        Ok(BlowupExtension {
            base: self.clone(),
            extended,
            points,
            canonical: canonical_class,
        })
    }
}

/// The lattice of a blow-up at `points` distinct points: the base lattice,
/// orthogonally extended by exceptional `(−1)`-classes, with the canonical
/// class transported by `K' = lift(K) + ΣEᵢ` when the base supplies `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupExtension {
    base: IntersectionLattice,
    extended: IntersectionLattice,
    points: usize,
    canonical: Option<DivisorClass>,
}

impl BlowupExtension {
    pub fn base(&self) -> &IntersectionLattice {
        &self.base
    }

    pub fn extended(&self) -> &IntersectionLattice {
        &self.extended
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Total-transform lift of a base class; preserves all products.
    pub fn lift(&self, v: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        if v.len() != self.base.rank() {
            return Err(LatticeError::DimensionMismatch {
                found: v.len(),
                rank: self.base.rank(),
            });
        }
        let mut coords = v.coords().to_vec();
        coords.extend(std::iter::repeat_n(BigInt::zero(), self.points));
        Ok(DivisorClass::new(coords))
    }

    /// The `i`-th exceptional class (0-based), with `Eᵢ·Eⱼ = −δᵢⱼ` and
    /// `Eᵢ·lift(v) = 0`.
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        assert!(i < self.points, "exceptional index {i} out of range");
        DivisorClass::basis(self.extended.rank(), self.base.rank() + i)
    }

    pub fn canonical(&self) -> Option<&DivisorClass> {
        self.canonical.as_ref()
    }
}

/// Hodge-index consistency filter: on a lattice of signature `(1, n−1)`
/// with `L² > 0`, every class satisfies `L²·C² ≤ (L·C)²`. Returns whether
/// the triple is consistent with that inequality; `false` means no such
/// curve class can exist on any surface.
pub fn hodge_filter(l_squared: &BigInt, degree: &BigInt, c_squared: &BigInt) -> bool {
    assert!(l_squared.is_positive(), "hodge_filter needs L² > 0");
    l_squared * c_squared <= degree * degree
}

/// Adjunction genus `(C² + C·K)/2 + 1`, exactly.
pub fn arithmetic_genus(
    lattice: &IntersectionLattice,
    curve: &DivisorClass,
    canonical: &DivisorClass,
) -> Result<Rational, LatticeError> {
    let c2 = lattice.self_intersection(curve)?;
    let ck = lattice.intersect(curve, canonical)?;
    Ok(Rational::new(c2 + ck, BigInt::from(2)) + ratio(1, 1))
}

/// Verdict of the partial nef test. `PartialNef` is necessary evidence
/// only: non-negativity against a finite list of classes does not prove
/// nefness, and every consumer of this verdict must treat it as partial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartialNefVerdict {
    PartialNef,
    Violator {
        class: DivisorClass,
        product: BigInt,
    },
}

/// Checks `D·C ≥ 0` against every listed class and `D² ≥ 0`, reporting the
/// first violating class found (the candidate itself when `D² < 0`).
pub fn is_nef_against(
    lattice: &IntersectionLattice,
    candidates: &[DivisorClass],
    d: &DivisorClass,
) -> Result<PartialNefVerdict, LatticeError> {
    for class in candidates {
        let product = lattice.intersect(d, class)?;
        if product.is_negative() {
            return Ok(PartialNefVerdict::Violator {
                class: class.clone(),
                product,
            });
        }
    }
    let self_product = lattice.self_intersection(d)?;
    if self_product.is_negative() {
        return Ok(PartialNefVerdict::Violator {
            class: d.clone(),
            product: self_product,
        });
    }
    Ok(PartialNefVerdict::PartialNef)
}
