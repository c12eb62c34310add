//! Seeded random sampling of scalars, matrices, and elements for
//! randomized verification.
//!
//! All randomized checks in the crate and the command-line tool draw from a
//! [`ChaCha8Rng`] seeded explicitly, so every reported result names the seed
//! that reproduces it.
//!
//! ```
//! use pak::sample::{random_matrix, rng_from_seed, DEFAULT_SEED};
//! use pak::Field;
//!
//! let mut rng = rng_from_seed(DEFAULT_SEED);
//! let matrix = random_matrix(&mut rng, Field::fp(5).unwrap(), 3);
//! assert_eq!(matrix.n(), 3);
//! ```

use crate::algebra::{Element, StructureMatrix};
use crate::field::{Field, FieldElement};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed for randomized checks when none is requested.
pub const DEFAULT_SEED: u64 = 0x0070_616b;

/// A deterministic generator for the given seed.
#[must_use]
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform scalar over a prime field, or a small rational (numerator in
/// `-3..=3`, denominator in `1..=3`) over ℚ.
pub fn random_field_element<R: Rng>(rng: &mut R, field: Field) -> FieldElement {
    match field {
        Field::Fp { p } => FieldElement::from_integer(field, rng.gen_range(0..i64::from(p))),
        Field::Q => {
            let numerator = FieldElement::from_integer(field, rng.gen_range(-3..=3));
            let denominator = FieldElement::from_integer(field, rng.gen_range(1..=3));
            numerator
                .div(&denominator)
                .expect("denominator is at least 1")
        }
    }
}

/// Like [`random_field_element`], but rerolls until the value is nonzero.
pub fn random_nonzero_field_element<R: Rng>(rng: &mut R, field: Field) -> FieldElement {
    loop {
        let value = random_field_element(rng, field);
        if !value.is_zero() {
            return value;
        }
    }
}

/// A uniformly random basis index in `-window..=window`.
pub fn random_index<R: Rng>(rng: &mut R, window: i64) -> BigInt {
    BigInt::from(rng.gen_range(-window..=window))
}

/// An `n × n` structure matrix with independently sampled entries.
pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, n: usize) -> StructureMatrix {
    let entries = (0..n * n)
        .map(|_| random_field_element(rng, field))
        .collect();
    StructureMatrix::new(field, n, entries).expect("entry count matches the period")
}

/// An element with up to `max_terms` random terms supported on basis
/// indices in `-window..=window`. Coefficient collisions merge, so the
/// result may carry fewer terms, including none.
pub fn random_element<R: Rng>(
    rng: &mut R,
    field: Field,
    window: i64,
    max_terms: usize,
) -> Element {
    let mut element = Element::zero();
    let terms = rng.gen_range(0..=max_terms);
    for _ in 0..terms {
        element.add_term(random_index(rng, window), random_field_element(rng, field));
    }
    element
}

// =======================================================================
// Tests
// =======================================================================
