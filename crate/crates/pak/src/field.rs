//! Ground fields and exact scalar arithmetic.
//!
//! Two backends are supported: the rationals ℚ (arbitrary precision, always
//! reduced to lowest terms with a positive denominator) and prime fields 𝔽_p
//! with `p < 2^16`. There is deliberately no floating point anywhere in this
//! crate: every scalar is exact, so enumeration and classification results
//! are decidable facts rather than numerical approximations.
//!
//! Mixing scalars from different fields is a hard error, never a coercion.
//! The arithmetic methods on [`FieldElement`] panic on a field mismatch;
//! every public deserialization and construction boundary validates fields
//! up front so that such a panic indicates a caller-side programming error,
//! not bad user input.
//!
//! ```
//! use pak::field::{Field, FieldElement};
//!
//! let f5 = Field::fp(5).unwrap();
//! let a = FieldElement::parse(f5, "3").unwrap();
//! let b = FieldElement::parse(f5, "4").unwrap();
//! assert_eq!(a.mul(&b).to_string(), "2"); // 12 ≡ 2 (mod 5)
//!
//! let q = Field::Q;
//! let half = FieldElement::parse(q, "1/2").unwrap();
//! assert_eq!(half.add(&half), FieldElement::one(q));
//! ```

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

// =======================================================================
// Field descriptors
// =======================================================================

/// Descriptor of a supported ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    /// The field ℚ of rational numbers.
    Q,
    /// The prime field 𝔽_p.
    Fp {
        /// The prime modulus.
        p: u16,
    },
}

impl Field {
    /// Constructs the prime-field descriptor 𝔽_p, verifying primality.
    ///
    /// # Errors
    ///
    /// Returns [`Error::NotPrime`] when `p` is composite, one, or zero.
    pub fn fp(p: u16) -> Result<Self> {
        if is_prime_u16(p) {
            Ok(Field::Fp { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Re-checks the invariants of a descriptor that arrived from outside
    /// (for example, from a parsed JSON document).
    ///
    /// # Errors
    ///
    /// Returns [`Error::NotPrime`] for an 𝔽_p descriptor whose modulus is
    /// not prime.
    pub fn validate(self) -> Result<Self> {
        match self {
            Field::Q => Ok(self),
            Field::Fp { p } => Field::fp(p),
        }
    }

    /// True for the finite fields 𝔽_p.
    #[must_use]
    pub fn is_finite(self) -> bool {
        matches!(self, Field::Fp { .. })
    }

    /// Number of elements, when finite.
    #[must_use]
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Q => None,
            Field::Fp { p } => Some(u64::from(p)),
        }
    }

    /// All field elements in ascending representative order, for finite
    /// fields.
    ///
    /// # Errors
    ///
    /// Returns [`Error::NotEnumerable`] over ℚ.
    pub fn elements(self) -> Result<Vec<FieldElement>> {
        match self {
            Field::Q => Err(Error::NotEnumerable(self)),
            Field::Fp { p } => Ok((0..p).map(|value| FieldElement::Fp { value, p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp { p } => write!(f, "F_{p}"),
        }
    }
}

/// Helper: deterministic trial-division primality for 16-bit moduli.
fn is_prime_u16(p: u16) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    let p32 = u32::from(p);
    while d * d <= p32 {
        if p32 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// =======================================================================
// Field elements
// =======================================================================

/// An exact scalar in one of the supported fields.
///
/// Rationals are kept in lowest terms with a positive denominator (an
/// invariant maintained by the underlying [`BigRational`] type); prime-field
/// values are canonical representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    /// A rational number.
    Q(BigRational),
    /// A residue in 𝔽_p.
    Fp {
        /// Canonical representative in `[0, p)`.
        value: u16,
        /// The prime modulus.
        p: u16,
    },
}

impl FieldElement {
    /// The field this scalar belongs to.
    #[must_use]
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Q(_) => Field::Q,
            FieldElement::Fp { p, .. } => Field::Fp { p: *p },
        }
    }

    /// The additive identity of `field`.
    #[must_use]
    pub fn zero(field: Field) -> Self {
        Self::from_integer(field, 0)
    }

    /// The multiplicative identity of `field`.
    #[must_use]
    pub fn one(field: Field) -> Self {
        Self::from_integer(field, 1)
    }

    /// The canonical image of the integer `k` in `field`.
    #[must_use]
    pub fn from_integer(field: Field, k: i64) -> Self {
        match field {
            Field::Q => FieldElement::Q(BigRational::from_integer(BigInt::from(k))),
            Field::Fp { p } => {
                let value = k.rem_euclid(i64::from(p)) as u16;
                FieldElement::Fp { value, p }
            }
        }
    }

    /// The canonical image of an arbitrary-precision integer in `field`.
    #[must_use]
    pub fn from_bigint(field: Field, k: &BigInt) -> Self {
        match field {
            Field::Q => FieldElement::Q(BigRational::from_integer(k.clone())),
            Field::Fp { p } => {
                let value = k
                    .mod_floor(&BigInt::from(p))
                    .to_u16()
                    .expect("mod_floor result fits in u16");
                FieldElement::Fp { value, p }
            }
        }
    }

    /// True for the additive identity.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_zero(),
            FieldElement::Fp { value, .. } => *value == 0,
        }
    }

    /// True for the multiplicative identity.
    #[must_use]
    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_one(),
            FieldElement::Fp { value, .. } => *value == 1,
        }
    }

    /// Helper: panics unless `self` and `other` share a field.
    ///
    /// Cross-field arithmetic is a programming error; public boundaries
    /// validate fields before any arithmetic can run.
    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.field(),
            other.field(),
            "cross-field arithmetic: {} vs {}",
            self.field(),
            other.field()
        );
    }

    /// Sum. Panics on a field mismatch (see module docs).
    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a + b),
            (FieldElement::Fp { value: a, p }, FieldElement::Fp { value: b, .. }) => {
                FieldElement::Fp {
                    value: ((u32::from(*a) + u32::from(*b)) % u32::from(*p)) as u16,
                    p: *p,
                }
            }
            _ => unreachable!("assert_same_field rules out mixed variants"),
        }
    }

    /// Difference. Panics on a field mismatch (see module docs).
    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product. Panics on a field mismatch (see module docs).
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a * b),
            (FieldElement::Fp { value: a, p }, FieldElement::Fp { value: b, .. }) => {
                FieldElement::Fp {
                    value: ((u32::from(*a) * u32::from(*b)) % u32::from(*p)) as u16,
                    p: *p,
                }
            }
            _ => unreachable!("assert_same_field rules out mixed variants"),
        }
    }

    /// Additive inverse.
    #[must_use]
    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Q(r) => FieldElement::Q(-r),
            FieldElement::Fp { value, p } => FieldElement::Fp {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Errors
    ///
    /// Returns [`Error::DivisionByZero`] for the zero scalar.
    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Q(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Q(r.recip()))
                }
            }
            FieldElement::Fp { value, p } => {
                if *value == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    // Fermat: a^(p-2) ≡ a^(-1) (mod p) for prime p.
                    Ok(FieldElement::Fp {
                        value: fp_pow(u64::from(*value), u64::from(*p) - 2, u64::from(*p)) as u16,
                        p: *p,
                    })
                }
            }
        }
    }

    /// Quotient. Panics on a field mismatch.
    ///
    /// # Errors
    ///
    /// Returns [`Error::DivisionByZero`] when `other` is zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Parses a scalar literal in `field`.
    ///
    /// Over ℚ the accepted forms are an optional sign, an integer, and an
    /// optional `/denominator` part (`"2"`, `"-3/7"`). Over 𝔽_p any integer
    /// literal is accepted and reduced mod p (`"-1"` parses to `p - 1`).
    ///
    /// # Errors
    ///
    /// Returns [`Error::ParseScalar`] for malformed input, including a zero
    /// denominator.
    pub fn parse(field: Field, input: &str) -> Result<Self> {
        let bad = || Error::ParseScalar {
            input: input.to_string(),
            field,
        };
        let text = input.trim();
        match field {
            Field::Q => {
                let (numer_text, denom_text) = match text.split_once('/') {
                    None => (text, None),
                    Some((n, d)) => (n, Some(d)),
                };
                let numer: BigInt = numer_text.trim().parse().map_err(|_| bad())?;
                let denom: BigInt = match denom_text {
                    None => BigInt::one(),
                    Some(d) => d.trim().parse().map_err(|_| bad())?,
                };
                if denom.is_zero() {
                    return Err(bad());
                }
                Ok(FieldElement::Q(BigRational::new(numer, denom)))
            }
            Field::Fp { .. } => {
                let k: BigInt = text.parse().map_err(|_| bad())?;
                Ok(Self::from_bigint(field, &k))
            }
        }
    }

    /// Small integer value of the scalar, when it is one.
    ///
    /// Over ℚ this succeeds exactly for integers that fit in `i64`; over
    /// 𝔽_p it returns the canonical representative.
    #[must_use]
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_i64()
                } else {
                    None
                }
            }
            FieldElement::Fp { value, .. } => Some(i64::from(*value)),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // BigRational prints `n` or `n/d`, lowest terms, positive denominator.
            FieldElement::Q(r) => write!(f, "{r}"),
            FieldElement::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Scalars serialize as their canonical string form (`"-3/7"`, `"2"`), the
/// representation used in every JSON document this crate reads and writes.
/// Deserialization requires field context, so it lives at the document
/// boundaries instead of on this type.
impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Helper: modular exponentiation on `u64` (modulus below 2^16, so the
/// intermediate products stay far from overflow).
fn fp_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

// =======================================================================
// Tests
// =======================================================================
