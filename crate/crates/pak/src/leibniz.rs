//! The Leibniz functional equation: residue-level verification,
//! element-level cross-checks, and exhaustive enumeration over prime fields.
//!
//! A periodic algebra satisfies the Leibniz identity
//! `x(yz) = (xy)z − (xz)y` for all elements if and only if its structure
//! constants satisfy, for `s = t̄` and every residue triple `(i, j, k)`,
//!
//! ```text
//! α_{jk} · α_{i,(j+k+s)}  =  α_{ij} · α_{(i+j+s),k}  −  α_{ik} · α_{(i+k+s),j}
//! ```
//!
//! (all second-level indices mod `n`). The identity is checked uniformly
//! over all `n³` triples; no case split on which residues coincide is
//! needed, because the single formula subsumes every special case.

use crate::algebra::{Element, PeriodicAlgebra, StructureMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::residue::Residue;
use rayon::prelude::*;
use serde::Serialize;

/// Default ceiling on the number of candidate matrices an enumeration may
/// scan (`p^(n²)` for period `n` over 𝔽_p). Overridable per call and, in
/// the command-line tool, through the `PAK_BUDGET` environment variable.
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

/// One failed instance of the residue-level Leibniz identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizViolation {
    /// Row residue of the outer factor.
    pub i: Residue,
    /// First inner residue.
    pub j: Residue,
    /// Second inner residue.
    pub k: Residue,
    /// Value of `α_{jk} · α_{i,(j+k+s)}`.
    pub lhs: FieldElement,
    /// Value of `α_{ij} · α_{(i+j+s),k} − α_{ik} · α_{(i+k+s),j}`.
    pub rhs: FieldElement,
}

/// Helper: both sides of the residue identity at one triple.
fn identity_sides(
    m: &StructureMatrix,
    s: Residue,
    i: Residue,
    j: Residue,
    k: Residue,
) -> (FieldElement, FieldElement) {
    let n = m.n();
    let lhs = m.entry(j, k).mul(m.entry(i, (j + k + s) % n));
    let rhs = m
        .entry(i, j)
        .mul(m.entry((i + j + s) % n, k))
        .sub(&m.entry(i, k).mul(m.entry((i + k + s) % n, j)));
    (lhs, rhs)
}

/// Checks the residue-level Leibniz identity at every triple, returning all
/// violations (empty means the algebra is Leibniz).
#[must_use]
pub fn leibniz_residue_check(alg: &PeriodicAlgebra) -> Vec<LeibnizViolation> {
    let m = alg.matrix();
    let s = alg.t_residue();
    let n = m.n();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (lhs, rhs) = identity_sides(m, s, i, j, k);
                if lhs != rhs {
                    violations.push(LeibnizViolation { i, j, k, lhs, rhs });
                }
            }
        }
    }
    violations
}

/// True iff the algebra satisfies the Leibniz identity (no violations).
#[must_use]
pub fn is_leibniz(alg: &PeriodicAlgebra) -> bool {
    residue_system_holds(alg.matrix(), alg.t_residue())
}

/// Helper: short-circuiting form of the residue check, shared by
/// [`is_leibniz`] and the enumeration inner loop.
pub(crate) fn residue_system_holds(m: &StructureMatrix, s: Residue) -> bool {
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (lhs, rhs) = identity_sides(m, s, i, j, k);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Element-level Leibniz check: evaluates `x(yz)` and `(xy)z − (xz)y`
/// through actual element multiplication and returns their difference
/// (right side minus left side) when it is nonzero.
///
/// `None` means the identity holds on this triple. The element route exists
/// as an independent oracle for [`leibniz_residue_check`]: the two must
/// agree on all basis triples in any window of width `2n`.
#[must_use]
pub fn leibniz_element_check(
    alg: &PeriodicAlgebra,
    x: &Element,
    y: &Element,
    z: &Element,
) -> Option<Element> {
    let left = alg.mul_elem(x, &alg.mul_elem(y, z));
    let right = alg
        .mul_elem(&alg.mul_elem(x, y), z)
        .sub(&alg.mul_elem(&alg.mul_elem(x, z), y));
    let difference = right.sub(&left);
    if difference.is_zero() {
        None
    } else {
        Some(difference)
    }
}

/// Number of candidate matrices an exhaustive scan must visit: `p^(n²)`.
///
/// # Errors
///
/// Rejects a zero period and non-finite fields.
pub fn candidate_count(n: usize, field: Field) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidPeriod(0));
    }
    let p = field.order().ok_or(Error::NotEnumerable(field))?;
    let mut total: u128 = 1;
    for _ in 0..n * n {
        total = total
            .checked_mul(u128::from(p))
            .ok_or(Error::BudgetExceeded {
                required: u128::MAX,
                budget: 0,
            })?;
    }
    Ok(total)
}

/// Exhaustively enumerates all structure matrices over a prime field that
/// satisfy the Leibniz residue identity for translation residue `t_res`.
///
/// Results come back in lexicographic order of the flattened row-major
/// matrix with entries ordered `0, 1, …, p−1`, so golden-file tests are
/// stable. The scan is partitioned across worker threads and re-sorted
/// deterministically.
///
/// # Errors
///
/// Rejects a zero period, an out-of-range `t_res`, a non-finite field, and
/// scans whose candidate count `p^(n²)` exceeds `budget` (the refusal names
/// the required budget).
pub fn enumerate_leibniz(
    n: usize,
    t_res: Residue,
    field: Field,
    budget: u64,
) -> Result<Vec<StructureMatrix>> {
    if n == 0 {
        return Err(Error::InvalidPeriod(0));
    }
    if t_res >= n {
        return Err(Error::ResidueOutOfRange { residue: t_res, n });
    }
    let total = candidate_count(n, field)?;
    if total > u128::from(budget) {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let p = field.order().expect("candidate_count verified finiteness") as u16;
    let total = total as u64;

    let mut hits: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let matrix = decode_candidate(code, n, p, field);
            residue_system_holds(&matrix, t_res)
        })
        .collect();
    hits.sort_unstable();
    Ok(hits
        .into_iter()
        .map(|code| decode_candidate(code, n, p, field))
        .collect())
}

/// Helper: decodes a candidate counter into a matrix, treating the counter
/// as a base-`p` numeral whose most significant digit is entry (0,0). That
/// makes ascending counters coincide with lexicographic matrix order.
fn decode_candidate(code: u64, n: usize, p: u16, field: Field) -> StructureMatrix {
    let cells = n * n;
    let mut digits = vec![0u16; cells];
    let mut rest = code;
    for cell in (0..cells).rev() {
        digits[cell] = (rest % u64::from(p)) as u16;
        rest /= u64::from(p);
    }
    let entries = digits
        .into_iter()
        .map(|value| FieldElement::Fp { value, p })
        .collect();
    StructureMatrix::new(field, n, entries).expect("decoded entries are well-formed")
}

// =======================================================================
// Tests
// =======================================================================
