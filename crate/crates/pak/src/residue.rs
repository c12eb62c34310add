//! Basis indices and residue classes modulo the period.
//!
//! Basis vectors are indexed by arbitrary integers `a ∈ ℤ`, held as
//! [`BigInt`] so that no index window is ever silently truncated. All
//! structure-constant lookups reduce indices to a residue in `[0, n)` using
//! floored division, which is the mathematically correct reduction for
//! negative numbers (`residue_of(-1, 3) == 2`, never `-1`).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// A basis index `a ∈ ℤ` (arbitrary precision).
pub type BasisIndex = BigInt;

/// A residue class index in `[0, n)`.
pub type Residue = usize;

/// Computes the residue of `a` modulo the period `n`.
///
/// # Errors
///
/// Returns [`Error::InvalidPeriod`] when `n` is zero.
///
/// ```
/// use num_bigint::BigInt;
/// use pak::residue::residue_of;
///
/// assert_eq!(residue_of(&BigInt::from(-1), 3).unwrap(), 2);
/// assert_eq!(residue_of(&BigInt::from(7), 3).unwrap(), 1);
/// ```
pub fn residue_of(a: &BigInt, n: usize) -> Result<Residue> {
    if n == 0 {
        return Err(Error::InvalidPeriod(0));
    }
    Ok(reduce(a, n))
}

/// Helper: infallible reduction for callers holding an already-validated
/// period (every constructed algebra has `n >= 1`).
pub(crate) fn reduce(a: &BigInt, n: usize) -> Residue {
    debug_assert!(n >= 1);
    a.mod_floor(&BigInt::from(n))
        .to_usize()
        .expect("floored remainder lies in [0, n)")
}

/// Helper: floored reduction for machine-sized arithmetic on residues and
/// offsets.
pub(crate) fn reduce_i64(a: i64, n: usize) -> Residue {
    debug_assert!(n >= 1);
    a.rem_euclid(n as i64) as usize
}
