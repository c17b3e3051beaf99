//! Exact arithmetic for rationals and rational multiples of square roots.
//!
//! Every quantity this crate manipulates is either a rational number or a
//! value of the form `q·√s` with `q` rational and `s` a square-free
//! non-negative integer. That class is closed under the operations needed
//! here (products, squares, order comparisons), so every threshold test,
//! including equality against irrational bounds like `√(3/4)·√L²`, is
//! decided exactly. There is no floating point anywhere in this crate;
//! decimal renderings are produced by integer square-root bracketing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use thiserror::Error;

pub use num_rational::BigRational as Rational;

/// Convenience constructor for a rational from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseValueError {
    #[error("empty value")]
    Empty,
    #[error("could not parse {0:?} as `p/q` or `p/q*sqrt(s)`")]
    Malformed(String),
    #[error("radicand must be non-negative, got {0}")]
    NegativeRadicand(BigInt),
}

/// Splits `n ≥ 0` into `(root, squarefree)` with `n = root²·squarefree`.
///
/// Trial division; adequate for the magnitudes that occur as radicands
/// (products of self-intersection numbers and point counts).
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!n.is_negative());
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut remaining = n.clone();
    let mut root = BigInt::one();
    let mut squarefree = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= remaining {
        if remaining.is_multiple_of(&d) {
            let mut exponent = 0u32;
            while remaining.is_multiple_of(&d) {
                remaining /= &d;
                exponent += 1;
            }
            if exponent >= 2 {
                root *= d.pow(exponent / 2);
            }
            if exponent % 2 == 1 {
                squarefree *= &d;
            }
        }
        d += if d == BigInt::from(2) {
            BigInt::one()
        } else {
            BigInt::from(2)
        };
    }
    // whatever is left has no divisor up to its square root, hence is prime
    if remaining > BigInt::one() {
        squarefree *= remaining;
    }
    (root, squarefree)
}

/// An exact value `coeff·√radicand`.
///
/// Normal form: the radicand is square-free and at least 1, and a zero
/// value is stored as `(0, 1)`. A radicand of 1 represents a plain
/// rational. The normal form is unique, so derived structural equality
/// coincides with equality of the represented real numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalRational {
    coeff: Rational,
    radicand: BigInt,
}

impl RadicalRational {
    /// Builds `coeff·√radicand` in normal form, extracting the largest
    /// square factor of the radicand into the coefficient.
    ///
    /// The radicand must be non-negative.
    pub fn new(coeff: Rational, radicand: impl Into<BigInt>) -> Self {
        let radicand = radicand.into();
        assert!(
            !radicand.is_negative(),
            "radicand must be non-negative, got {radicand}"
        );
        if coeff.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let (root, squarefree) = extract_square(&radicand);
        RadicalRational {
            coeff: coeff * Rational::from(root),
            radicand: squarefree,
        }
    }

    pub fn zero() -> Self {
        RadicalRational {
            coeff: Rational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, BigInt::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from(n.into()))
    }

    /// Exact square root of a non-negative rational: `√(p/q) = (1/q)·√(pq)`.
    pub fn sqrt_of_rational(value: &Rational) -> Self {
        assert!(
            !value.is_negative(),
            "cannot take the square root of {value}"
        );
        let denom = value.denom().clone();
        Self::new(
            Rational::new(BigInt::one(), denom.clone()),
            value.numer() * &denom,
        )
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// `coeff²·radicand`, exactly.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from(self.radicand.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }

    /// The exact rational value, when the radicand is 1.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.radicand.is_one() {
            Some(&self.coeff)
        } else {
            None
        }
    }

    /// Decimal rendering to `places` fractional digits, rounded half-up,
    /// computed by exact integer square-root bracketing.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        if self.is_zero() {
            return format!("0.{}", "0".repeat(places));
        }
        // |v|² = a/b; bracket floor(|v|·10^(places+1)) then round the last digit.
        let sq = self.square();
        let a = sq.numer().abs() * BigInt::from(100u32) * (&scale * &scale);
        let b = sq.denom().clone();
        let mut k = (&a / &b).sqrt();
        while (&k + 1u32) * (&k + 1u32) * &b <= a {
            k += 1u32;
        }
        let rounded = (k + 5u32) / BigInt::from(10u32);
        let int_part = &rounded / &scale;
        let frac_part = &rounded % &scale;
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac_part:0>width$}", width = places)
    }
}

impl PartialOrd for RadicalRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RadicalRational {
    /// Exact order of the represented real numbers: compare signs, then
    /// compare `coeff²·radicand` (reversed on the negative side).
    fn cmp(&self, other: &Self) -> Ordering {
        let sign = |v: &RadicalRational| -> i8 {
            if v.coeff.is_zero() {
                0
            } else if v.coeff.is_positive() {
                1
            } else {
                -1
            }
        };
        let (sa, sb) = (sign(self), sign(other));
        match sa.cmp(&sb) {
            Ordering::Equal => match sa {
                0 => Ordering::Equal,
                1 => self.square().cmp(&other.square()),
                _ => other.square().cmp(&self.square()),
            },
            unequal => unequal,
        }
    }
}

impl Mul for &RadicalRational {
    type Output = RadicalRational;

    /// Exact product: `√s₁·√s₂ = g·√((s₁/g)(s₂/g))` with `g = gcd(s₁,s₂)`,
    /// which keeps the radicand square-free without re-factoring.
    fn mul(self, rhs: &RadicalRational) -> RadicalRational {
        if self.is_zero() || rhs.is_zero() {
            return RadicalRational::zero();
        }
        let g = self.radicand.gcd(&rhs.radicand);
        let radicand = (&self.radicand / &g) * (&rhs.radicand / &g);
        RadicalRational {
            coeff: &self.coeff * &rhs.coeff * Rational::from(g),
            radicand,
        }
    }
}

impl Mul for RadicalRational {
    type Output = RadicalRational;
    fn mul(self, rhs: RadicalRational) -> RadicalRational {
        (&self).mul(&rhs)
    }
}

impl Mul<&Rational> for &RadicalRational {
    type Output = RadicalRational;
    fn mul(self, rhs: &Rational) -> RadicalRational {
        if rhs.is_zero() || self.is_zero() {
            return RadicalRational::zero();
        }
        RadicalRational {
            coeff: &self.coeff * rhs,
            radicand: self.radicand.clone(),
        }
    }
}

impl From<Rational> for RadicalRational {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for RadicalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "√{}", self.radicand)
        } else if self.coeff == -Rational::one() {
            write!(f, "-√{}", self.radicand)
        } else if self.coeff.is_integer() {
            write!(f, "{}·√{}", self.coeff, self.radicand)
        } else {
            write!(f, "({})·√{}", self.coeff, self.radicand)
        }
    }
}

impl FromStr for RadicalRational {
    type Err = ParseValueError;

    /// Accepts `p`, `p/q`, `sqrt(s)`, `p*sqrt(s)` and `p/q*sqrt(s)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseValueError::Empty);
        }
        let malformed = || ParseValueError::Malformed(s.to_string());
        let (coeff_part, sqrt_part) = match s.split_once('*') {
            Some((c, r)) => (Some(c.trim()), Some(r.trim())),
            None if s.starts_with("sqrt") => (None, Some(s)),
            None => (Some(s), None),
        };
        let coeff = match coeff_part {
            Some(c) => Rational::from_str(c).map_err(|_| malformed())?,
            None => Rational::one(),
        };
        let radicand = match sqrt_part {
            Some(r) => {
                let inner = r
                    .strip_prefix("sqrt(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(malformed)?;
                let value = BigInt::from_str(inner.trim()).map_err(|_| malformed())?;
                if value.is_negative() {
                    return Err(ParseValueError::NegativeRadicand(value));
                }
                value
            }
            None => BigInt::one(),
        };
        Ok(RadicalRational::new(coeff, radicand))
    }
}

#[derive(Serialize, Deserialize)]
struct RadicalDoc {
    coeff: String,
    radicand: RadicandRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadicandRepr {
    Small(u64),
    Big(String),
}

impl Serialize for RadicalRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let radicand = match self.radicand.to_u64() {
            Some(small) => RadicandRepr::Small(small),
            None => RadicandRepr::Big(self.radicand.to_string()),
        };
        RadicalDoc {
            coeff: self.coeff.to_string(),
            radicand,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RadicalRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = RadicalDoc::deserialize(deserializer)?;
        let coeff = Rational::from_str(&doc.coeff)
            .map_err(|e| D::Error::custom(format!("bad coeff {:?}: {e}", doc.coeff)))?;
        let radicand = match doc.radicand {
            RadicandRepr::Small(small) => BigInt::from(small),
            RadicandRepr::Big(text) => BigInt::from_str(&text)
                .map_err(|e| D::Error::custom(format!("bad radicand {text:?}: {e}")))?,
        };
        if radicand.is_negative() {
            return Err(D::Error::custom(format!("negative radicand {radicand}")));
        }
        Ok(RadicalRational::new(coeff, radicand))
    }
}

/// Serde adapter serializing a `Rational` as the string `p/q`.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        Rational::from_str(&text)
            .map_err(|e| D::Error::custom(format!("bad rational {text:?}: {e}")))
    }
}

/// Serde adapter for `BigInt`: a JSON number when it fits in `i64`/`u64`,
/// a decimal string otherwise.
pub mod bigint_json {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        if let Some(small) = value.to_i64() {
            serializer.serialize_i64(small)
        } else if let Some(small) = value.to_u64() {
            serializer.serialize_u64(small)
        } else {
            serializer.serialize_str(&value.to_string())
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Signed(i64),
        Unsigned(u64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(deserializer)? {
            Repr::Signed(v) => Ok(BigInt::from(v)),
            Repr::Unsigned(v) => Ok(BigInt::from(v)),
            Repr::Text(text) => BigInt::from_str(&text)
                .map_err(|e| D::Error::custom(format!("bad integer {text:?}: {e}"))),
        }
    }
}
