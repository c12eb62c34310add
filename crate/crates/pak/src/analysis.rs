//! Structural invariants of a periodic algebra: central series, nilpotency
//! and solvability certificates, annihilators, center, perfectness, the Lie
//! test, generation, element-wise nilpotency, and a combined fingerprint.
//!
//! All computations run on residue subsets. This is exact, not an
//! approximation: every product of basis vectors is a scalar multiple of a
//! basis vector, and products ranging over full residue cosets cover full
//! residue cosets, so a subspace spanned by the basis vectors of a residue
//! set is completely described by that set.
//!
//! ```
//! use pak::{Field, PeriodicAlgebra, StructureMatrix};
//! use pak::analysis::{derived_series, lower_central_series};
//!
//! // Only α_{21} ≠ 0: nilpotent in three stages.
//! let matrix = StructureMatrix::from_integer_rows(
//!     Field::Q,
//!     &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]],
//! ).unwrap();
//! let alg = PeriodicAlgebra::new(matrix, 0);
//! assert_eq!(lower_central_series(&alg).index, Some(3));
//! assert_eq!(derived_series(&alg).index, Some(2));
//! ```

use crate::algebra::{PeriodicAlgebra, StructureMatrix};
use crate::error::{Error, Result};
use crate::residue::Residue;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeSet;

/// Default ceiling on the number of residue tuples a solvability scan may
/// visit (`n^(2^m)` tuples for index `m` at period `n`).
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;

// =======================================================================
// Series
// =======================================================================

/// A descending chain of residue subsets produced by one of the series
/// recursions.
///
/// `stages[k]` is the residue set of the `(first_index + k)`-th term. The
/// computation stops at the first empty stage (`terminated`, with `index`
/// the stage number of that empty set) or at the first repeated stage
/// (`!terminated`, `index == None`; the repeat is kept as the last stage so
/// the stabilization is visible in reports).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSeries {
    /// Residue sets, outermost term first.
    pub stages: Vec<BTreeSet<Residue>>,
    /// Term number of `stages[0]` (1 for the lower central series, 0 for
    /// the derived series).
    pub first_index: usize,
    /// True iff the chain reached the empty set.
    pub terminated: bool,
    /// Smallest term number whose residue set is empty, when one exists.
    pub index: Option<usize>,
}

/// Helper: iterates a monotone step map from the full residue set until the
/// chain dies or repeats. Both series maps are monotone, so the chain
/// descends and a repeat is always `next == last`.
fn run_series(
    n: usize,
    first_index: usize,
    step: impl Fn(&BTreeSet<Residue>) -> BTreeSet<Residue>,
) -> ResidueSeries {
    let mut stages: Vec<BTreeSet<Residue>> = vec![(0..n).collect()];
    loop {
        let last = stages.last().expect("stages never empty");
        if last.is_empty() {
            let index = first_index + stages.len() - 1;
            return ResidueSeries {
                stages,
                first_index,
                terminated: true,
                index: Some(index),
            };
        }
        let next = step(last);
        let repeated = stages.iter().any(|stage| *stage == next);
        stages.push(next);
        if repeated {
            return ResidueSeries {
                stages,
                first_index,
                terminated: false,
                index: None,
            };
        }
    }
}

/// Lower central series at the residue level: `S_1` is every residue and
/// `S_{k+1} = {(i+j+t̄) mod n : i ∈ S_k, j ∈ [0,n), α_ij ≠ 0}`.
///
/// The algebra is right nilpotent iff the chain terminates; this form works
/// for every translation `t`.
#[must_use]
pub fn lower_central_series(alg: &PeriodicAlgebra) -> ResidueSeries {
    let n = alg.period();
    let s = alg.t_residue();
    run_series(n, 1, |current| {
        let mut next = BTreeSet::new();
        for &i in current {
            for j in 0..n {
                if !alg.alpha(i, j).is_zero() {
                    next.insert((i + j + s) % n);
                }
            }
        }
        next
    })
}

/// Derived series at the residue level: `S_0` is every residue and
/// `S_{k+1} = {(i+j+t̄) mod n : i, j ∈ S_k, α_ij ≠ 0}`.
///
/// The algebra is solvable iff the chain terminates; `index` is then the
/// solvability index.
#[must_use]
pub fn derived_series(alg: &PeriodicAlgebra) -> ResidueSeries {
    let n = alg.period();
    let s = alg.t_residue();
    run_series(n, 0, |current| {
        let mut next = BTreeSet::new();
        for &i in current {
            for &j in current {
                if !alg.alpha(i, j).is_zero() {
                    next.insert((i + j + s) % n);
                }
            }
        }
        next
    })
}

// =======================================================================
// Nilpotency and solvability certificates
// =======================================================================

/// Right nilpotency via chained structure-constant products (translation
/// residue zero only).
///
/// The algebra fails to be right nilpotent exactly when some chained
/// product `α_{i₁,i₂}·α_{(i₁+i₂),i₃}·…` with at most `n` factors is nonzero
/// while the appended residues sum to `0 mod n`. Such a chain is a closed
/// walk in the digraph on residues with an edge `u → (u+j) mod n` for every
/// nonzero `α_{u,j}`, and a closed walk exists iff a directed cycle does —
/// so the scan reduces to cycle detection.
///
/// # Errors
///
/// Translation residue `t̄ ≠ 0` is unsupported in this form; use
/// [`lower_central_series`], which handles every translation.
pub fn right_nilpotency_check(alg: &PeriodicAlgebra) -> Result<bool> {
    if alg.t_residue() != 0 {
        return Err(Error::UnsupportedCase(format!(
            "right_nilpotency_check requires translation residue 0, got {}; \
             use lower_central_series for general translations",
            alg.t_residue()
        )));
    }
    let n = alg.period();
    let mut successors: Vec<BTreeSet<Residue>> = vec![BTreeSet::new(); n];
    for (i, j) in alg.matrix().nonzero_entries() {
        successors[i].insert((i + j) % n);
    }

    // Three-color depth-first search for a directed cycle.
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; n];
    for start in 0..n {
        if color[start] != Color::White {
            continue;
        }
        // Iterative DFS carrying an explicit stack of (vertex, iterator position).
        let mut stack: Vec<(Residue, Vec<Residue>)> =
            vec![(start, successors[start].iter().copied().collect())];
        color[start] = Color::Gray;
        while let Some((vertex, pending)) = stack.last_mut() {
            if let Some(next) = pending.pop() {
                match color[next] {
                    Color::Gray => return Ok(false), // cycle: a nonzero chain closes up
                    Color::White => {
                        color[next] = Color::Gray;
                        stack.push((next, successors[next].iter().copied().collect()));
                    }
                    Color::Black => {}
                }
            } else {
                color[*vertex] = Color::Black;
                stack.pop();
            }
        }
    }
    Ok(true)
}

/// Evaluates the period-3 right-nilpotency conditions on a raw structure
/// matrix: `α_{i0} = 0` for all `i`, the column products
/// `α_{01}α_{11}α_{21}` and `α_{02}α_{12}α_{22}` vanish, and the pair
/// products `α_{01}α_{12}`, `α_{11}α_{22}`, `α_{21}α_{02}` vanish.
///
/// # Errors
///
/// Defined only for 3×3 matrices.
pub fn cor_c1_check(matrix: &StructureMatrix) -> Result<bool> {
    let n = matrix.n();
    if n != 3 {
        return Err(Error::UnsupportedCase(format!(
            "cor_c1_check is defined for 3×3 structure matrices, got {n}×{n}"
        )));
    }
    let a = |i: Residue, j: Residue| matrix.entry(i, j);
    let column_zero = (0..3).all(|i| a(i, 0).is_zero());
    let triples = a(0, 1).mul(a(1, 1)).mul(a(2, 1)).is_zero()
        && a(0, 2).mul(a(1, 2)).mul(a(2, 2)).is_zero();
    let pairs = a(0, 1).mul(a(1, 2)).is_zero()
        && a(1, 1).mul(a(2, 2)).is_zero()
        && a(2, 1).mul(a(0, 2)).is_zero();
    Ok(column_zero && triples && pairs)
}

/// Solvability test through the closed form for fully balanced products:
/// true iff every balanced product of `2^m` basis vectors vanishes, scanned
/// over all `n^(2^m)` residue tuples (periodicity makes residue tuples
/// sufficient). Equivalent to the derived series reaching `∅` by term `m`.
///
/// The coefficient of each candidate product comes from
/// [`PeriodicAlgebra::closed_form_balanced`], which never touches the
/// recursive multiplication path, so this is an independent route to
/// solvability.
///
/// # Errors
///
/// Refuses scans where the tuple count `n^(2^m)` (or the tuple length
/// `2^m` itself) exceeds `budget`; the refusal names the required budget.
pub fn solvability_via_f1(alg: &PeriodicAlgebra, m: usize, budget: u64) -> Result<bool> {
    let n = alg.period();
    if m >= 24 {
        return Err(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        });
    }
    let len = 1usize << m;
    if len as u128 > u128::from(budget) {
        return Err(Error::BudgetExceeded {
            required: len as u128,
            budget,
        });
    }
    let mut required: u128 = 1;
    for _ in 0..len {
        required = required.saturating_mul(n as u128);
    }
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut tuple = vec![0usize; len];
    loop {
        let indices: Vec<BigInt> = tuple.iter().map(|&r| BigInt::from(r)).collect();
        let product = alg
            .closed_form_balanced(&indices)
            .expect("length 2^m is a power of two");
        if !product.is_zero() {
            return Ok(false);
        }
        // Odometer increment over [0, n)^len.
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

// =======================================================================
// Pointwise structure: annihilators, center, squares, perfectness
// =======================================================================

/// Which annihilator to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Elements `c` with `c · x = 0` for all `x` (zero rows).
    Left,
    /// Elements `c` with `x · c = 0` for all `x` (zero columns).
    Right,
}

/// Residues whose basis vectors annihilate the algebra from the given side:
/// `e_c` is a right annihilator iff column `c̄` of the structure matrix is
/// zero, and a left annihilator iff row `c̄` is zero.
#[must_use]
pub fn annihilator_residues(alg: &PeriodicAlgebra, side: Side) -> BTreeSet<Residue> {
    let matrix = alg.matrix();
    let n = matrix.n();
    (0..n)
        .filter(|&c| {
            (0..n).all(|other| {
                match side {
                    Side::Right => matrix.entry(other, c),
                    Side::Left => matrix.entry(c, other),
                }
                .is_zero()
            })
        })
        .collect()
}

/// Residues whose basis vectors are central: both the row and the column of
/// the residue are zero (the intersection of the two annihilators).
#[must_use]
pub fn center_residues(alg: &PeriodicAlgebra) -> BTreeSet<Residue> {
    let left = annihilator_residues(alg, Side::Left);
    let right = annihilator_residues(alg, Side::Right);
    left.intersection(&right).copied().collect()
}

/// Residues spanning the square of the algebra:
/// `{(i+j+t̄) mod n : α_ij ≠ 0}`.
#[must_use]
pub fn square_residues(alg: &PeriodicAlgebra) -> BTreeSet<Residue> {
    let n = alg.period();
    let s = alg.t_residue();
    alg.matrix()
        .nonzero_entries()
        .map(|(i, j)| (i + j + s) % n)
        .collect()
}

/// True iff the algebra equals its own square: for every residue `p` there
/// is some `i` with `α_{i,(p−i−t̄) mod n} ≠ 0`.
#[must_use]
pub fn is_perfect(alg: &PeriodicAlgebra) -> bool {
    let n = alg.period();
    let s = alg.t_residue();
    (0..n).all(|p| {
        (0..n).any(|i| {
            let j = (p + 2 * n - i - s) % n;
            !alg.alpha(i, j).is_zero()
        })
    })
}

/// True iff the structure matrix is alternating: `α_ij = −α_ji` for all
/// `i, j` and `α_ii = 0` for all `i`. The diagonal condition is explicit so
/// the test stays correct in characteristic 2.
#[must_use]
pub fn is_lie(alg: &PeriodicAlgebra) -> bool {
    let matrix = alg.matrix();
    let n = matrix.n();
    (0..n).all(|i| matrix.entry(i, i).is_zero())
        && (0..n).all(|i| (0..n).all(|j| *matrix.entry(i, j) == matrix.entry(j, i).neg()))
}

// =======================================================================
// Element nilpotency and generation
// =======================================================================

/// Right nilpotency of a single basis-vector class `e_i` (translation zero,
/// `i ≠ 0`): the right powers pick up one structure constant per step,
/// `x^[k+1] = α_{(k·i) mod n, i} · x^[k] · …`, and the row indices cycle
/// through the additive orbit of `i`, so the power sequence dies iff the
/// orbit product `α_{i,i}·α_{2i,i}·…·α_{ni,i}` (row indices mod `n`)
/// vanishes.
///
/// When `gcd(i, n) = 1` the orbit covers every row and this is the full
/// column product `α_{0,i}·…·α_{n−1,i}`; for `gcd(i, n) > 1` only the rows
/// in the orbit of `i` are sampled, which is exactly what right-power
/// iteration sees.
///
/// # Errors
///
/// `i ≥ n` is out of range; `i = 0` and nonzero translation residue are
/// unsupported cases.
pub fn element_right_nilpotent(alg: &PeriodicAlgebra, i: Residue) -> Result<bool> {
    let n = alg.period();
    if i >= n {
        return Err(Error::ResidueOutOfRange { residue: i, n });
    }
    if i == 0 {
        return Err(Error::UnsupportedCase(
            "element_right_nilpotent requires a nonzero residue".to_string(),
        ));
    }
    if alg.t_residue() != 0 {
        return Err(Error::UnsupportedCase(format!(
            "element_right_nilpotent requires translation residue 0, got {}",
            alg.t_residue()
        )));
    }
    Ok((1..=n).any(|k| alg.alpha((k * i) % n, i).is_zero()))
}

/// Reachability report for the subalgebra generated by a full residue coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    /// Residues reachable from the generator by repeated products.
    pub residues: BTreeSet<Residue>,
    /// True iff every basis vector `e_a`, `a ∈ ℤ`, lies in the generated
    /// subalgebra.
    pub full_index_coverage: bool,
}

/// Subalgebra generated by the coset `{e_a : a ≡ s (mod n)}` for `t = 0`:
/// the closure of `{s}` under "`i, j` reachable and `α_ij ≠ 0` implies
/// `(i+j) mod n` reachable".
///
/// Index coverage within each reached class is automatic: the generators
/// form a full coset, and a product of two full cosets with a nonzero
/// structure constant spans the full target coset (for a target index `c`
/// pick factors `i` and `c − i`). So every integer index is attained iff
/// the residue closure is all of `[0, n)`, which is what
/// `full_index_coverage` reports.
///
/// # Errors
///
/// `s ≥ n` is out of range; a nonzero translation (as an integer, not just
/// its residue) is an unsupported case.
pub fn generated_subalgebra(alg: &PeriodicAlgebra, s: Residue) -> Result<GenerationReport> {
    let n = alg.period();
    if s >= n {
        return Err(Error::ResidueOutOfRange { residue: s, n });
    }
    if !alg.t().is_zero() {
        return Err(Error::UnsupportedCase(format!(
            "generated_subalgebra requires translation 0, got {}",
            alg.t()
        )));
    }
    let mut reached: BTreeSet<Residue> = BTreeSet::new();
    reached.insert(s);
    loop {
        let mut next = reached.clone();
        for &i in &reached {
            for &j in &reached {
                if !alg.alpha(i, j).is_zero() {
                    next.insert((i + j) % n);
                }
            }
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    let full_index_coverage = reached.len() == n;
    Ok(GenerationReport {
        residues: reached,
        full_index_coverage,
    })
}

// =======================================================================
// Fingerprint
// =======================================================================

/// Structural invariants of one algebra, bundled. Every field is computed
/// from the algebra alone, so equal algebras always get equal fingerprints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    /// Residue-level Leibniz identity holds.
    pub is_leibniz: bool,
    /// Structure matrix is alternating.
    pub is_lie: bool,
    /// Lower central series terminates.
    pub is_right_nilpotent: bool,
    /// Derived series terminates.
    pub solvable: bool,
    /// Solvability index when solvable.
    pub solvability_index: Option<usize>,
    /// The algebra equals its square.
    pub perfect: bool,
    /// Zero columns of the structure matrix.
    pub right_annihilator_residues: BTreeSet<Residue>,
    /// Zero rows of the structure matrix.
    pub left_annihilator_residues: BTreeSet<Residue>,
    /// Residues central on both sides.
    pub center_residues: BTreeSet<Residue>,
    /// Residues spanning the square.
    pub square_residues: BTreeSet<Residue>,
}

/// Projection of a [`Fingerprint`] onto data preserved by every graded
/// isomorphism: the scalar flags survive unchanged, and the residue sets
/// survive up to relabeling, so only their cardinalities are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantProfile {
    /// Residue-level Leibniz identity holds.
    pub is_leibniz: bool,
    /// Structure matrix is alternating.
    pub is_lie: bool,
    /// Lower central series terminates.
    pub is_right_nilpotent: bool,
    /// Derived series terminates.
    pub solvable: bool,
    /// Solvability index when solvable.
    pub solvability_index: Option<usize>,
    /// The algebra equals its square.
    pub perfect: bool,
    /// Cardinality of the right annihilator residue set.
    pub right_annihilator_count: usize,
    /// Cardinality of the left annihilator residue set.
    pub left_annihilator_count: usize,
    /// Cardinality of the center residue set.
    pub center_count: usize,
    /// Cardinality of the square residue set.
    pub square_count: usize,
}

impl Fingerprint {
    /// Relabeling-invariant projection used to prove two algebras distinct
    /// before any isomorphism search runs.
    #[must_use]
    pub fn invariant_profile(&self) -> InvariantProfile {
        InvariantProfile {
            is_leibniz: self.is_leibniz,
            is_lie: self.is_lie,
            is_right_nilpotent: self.is_right_nilpotent,
            solvable: self.solvable,
            solvability_index: self.solvability_index,
            perfect: self.perfect,
            right_annihilator_count: self.right_annihilator_residues.len(),
            left_annihilator_count: self.left_annihilator_residues.len(),
            center_count: self.center_residues.len(),
            square_count: self.square_residues.len(),
        }
    }
}

/// Computes every structural invariant of the algebra in one pass.
#[must_use]
pub fn fingerprint(alg: &PeriodicAlgebra) -> Fingerprint {
    let lower = lower_central_series(alg);
    let derived = derived_series(alg);
    Fingerprint {
        is_leibniz: crate::leibniz::is_leibniz(alg),
        is_lie: is_lie(alg),
        is_right_nilpotent: lower.terminated,
        solvable: derived.terminated,
        solvability_index: derived.index,
        perfect: is_perfect(alg),
        right_annihilator_residues: annihilator_residues(alg, Side::Right),
        left_annihilator_residues: annihilator_residues(alg, Side::Left),
        center_residues: center_residues(alg),
        square_residues: square_residues(alg),
    }
}

// =======================================================================
// Tests
// =======================================================================
