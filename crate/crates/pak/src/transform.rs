//! Basis transformations of periodic algebras — index shifts, per-residue
//! index shifts, residue scalings, and matrix inflation — plus a bounded
//! isomorphism search inside the group those transformations generate.
//!
//! Every transformation here produces a new [`PeriodicAlgebra`] together
//! with an explicit change of basis: a [`BasisTransform`] maps elements of
//! the *transformed* algebra back into the original one, so found
//! isomorphisms can always be verified at the element level.
//!
//! ```
//! use pak::{Field, PeriodicAlgebra, StructureMatrix};
//! use pak::transform::{inflate, is_inflation_of};
//!
//! let matrix = StructureMatrix::from_integer_rows(Field::Q, &[&[0, 1], &[-1, 0]]).unwrap();
//! let alg = PeriodicAlgebra::new(matrix, 0);
//! let doubled = inflate(&alg, 2).unwrap();
//! assert_eq!(doubled.period(), 4);
//! assert!(is_inflation_of(&doubled, 2).unwrap());
//! ```

use crate::algebra::{Element, JsonInt, PeriodicAlgebra, StructureMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::residue::{reduce_i64, residue_of, BasisIndex, Residue};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

// =======================================================================
// Transform ops and composition
// =======================================================================

/// One generator of the transform group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformOp {
    /// Uniform index shift: the new algebra has translation `t + c` and
    /// matrix `α_{(i+c, j+c) mod n}`; elements map by `e_a ↦ e_{a+c}`.
    Shift {
        /// The shift amount.
        c: BigInt,
    },
    /// Per-residue index shift `e_a ↦ e_{a + d_ā}`; requires
    /// `i ↦ (i + d_i) mod n` to permute the residues.
    ResidueShift {
        /// One integer offset per residue class.
        d: Vec<i64>,
    },
    /// Per-residue rescaling `e_a ↦ λ_ā e_a` with every `λ_i ≠ 0`.
    Scaling {
        /// One nonzero factor per residue class.
        lambda: Vec<FieldElement>,
    },
}

/// An explicit composition of transform ops.
///
/// `ops` act on algebras left to right: `apply` computes
/// `ops[k-1](…(ops[0](alg)))`. The induced element map runs the other way —
/// it takes elements of the *final* algebra back to the *original* one —
/// because each op's basis map points from its output algebra to its input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisTransform {
    /// The composition, first-applied op first.
    pub ops: Vec<TransformOp>,
}

impl BasisTransform {
    /// The identity transform (no ops).
    #[must_use]
    pub fn identity() -> Self {
        Self::default()
    }

    /// True iff no ops are recorded.
    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    /// Applies the composition to an algebra, first op first.
    ///
    /// # Errors
    ///
    /// Propagates the constituent transform errors (bad vector lengths,
    /// non-permutation offsets, broken index bookkeeping, zero factors).
    pub fn apply(&self, alg: &PeriodicAlgebra) -> Result<PeriodicAlgebra> {
        let mut current = alg.clone();
        for op in &self.ops {
            current = match op {
                TransformOp::Shift { c } => shift(&current, c.clone()),
                TransformOp::ResidueShift { d } => apply_residue_shift(&current, d)?,
                TransformOp::Scaling { lambda } => scale(&current, lambda)?,
            };
        }
        Ok(current)
    }

    /// Image of the basis vector `e_index` of the transformed algebra
    /// inside the original algebra, as a `(index, coefficient)` pair.
    ///
    /// Ops fold in reverse order: the op applied last to the algebra acts
    /// first on the element.
    ///
    /// # Errors
    ///
    /// Rejects op vectors whose length differs from `n`.
    pub fn basis_image(
        &self,
        index: &BasisIndex,
        n: usize,
        field: Field,
    ) -> Result<(BasisIndex, FieldElement)> {
        let mut idx = index.clone();
        let mut coeff = FieldElement::one(field);
        for op in self.ops.iter().rev() {
            match op {
                TransformOp::Shift { c } => idx += c,
                TransformOp::ResidueShift { d } => {
                    if d.len() != n {
                        return Err(Error::WrongVectorLength {
                            what: "residue shift offsets",
                            n,
                            got: d.len(),
                        });
                    }
                    let r = residue_of(&idx, n)?;
                    idx += d[r];
                }
                TransformOp::Scaling { lambda } => {
                    if lambda.len() != n {
                        return Err(Error::WrongVectorLength {
                            what: "scaling factors",
                            n,
                            got: lambda.len(),
                        });
                    }
                    let r = residue_of(&idx, n)?;
                    coeff = coeff.mul(&lambda[r]);
                }
            }
        }
        Ok((idx, coeff))
    }

    /// Linear extension of [`BasisTransform::basis_image`] to whole
    /// elements.
    ///
    /// # Errors
    ///
    /// Same conditions as `basis_image`.
    pub fn map_element(&self, x: &Element, n: usize, field: Field) -> Result<Element> {
        let mut image = Element::zero();
        for (index, coefficient) in x.iter() {
            let (idx, factor) = self.basis_image(index, n, field)?;
            image.add_term(idx, coefficient.mul(&factor));
        }
        Ok(image)
    }

    /// Canonical JSON value: `{"ops": [{"kind": "shift", "c": 1}, …]}`.
    #[must_use]
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = TransformDoc {
            ops: self.ops.iter().map(OpDoc::from_op).collect(),
        };
        serde_json::to_value(doc).expect("transform serialization is infallible")
    }

    /// Canonical JSON text form (streamed, so `kind` tags come first).
    #[must_use]
    pub fn to_json_string(&self) -> String {
        let doc = TransformDoc {
            ops: self.ops.iter().map(OpDoc::from_op).collect(),
        };
        serde_json::to_string(&doc).expect("transform serialization is infallible")
    }

    /// Parses the JSON form; scaling factors are read in the given field.
    ///
    /// # Errors
    ///
    /// Malformed JSON, unparseable scalars, and zero scaling factors are
    /// rejected.
    pub fn from_json_str(text: &str, field: Field) -> Result<Self> {
        let doc: TransformDoc = serde_json::from_str(text)?;
        let mut ops = Vec::with_capacity(doc.ops.len());
        for op in doc.ops {
            ops.push(op.into_op(field)?);
        }
        Ok(Self { ops })
    }
}

/// Helper: serialization mirror of [`BasisTransform`].
#[derive(Serialize, Deserialize)]
struct TransformDoc {
    ops: Vec<OpDoc>,
}

/// Helper: serialization mirror of [`TransformOp`] with scalars as strings.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OpDoc {
    Shift { c: JsonInt },
    ResidueShift { d: Vec<i64> },
    Scaling { lambda: Vec<String> },
}

impl OpDoc {
    fn from_op(op: &TransformOp) -> Self {
        match op {
            TransformOp::Shift { c } => OpDoc::Shift {
                c: JsonInt::from_bigint(c),
            },
            TransformOp::ResidueShift { d } => OpDoc::ResidueShift { d: d.clone() },
            TransformOp::Scaling { lambda } => OpDoc::Scaling {
                lambda: lambda.iter().map(|v| v.to_string()).collect(),
            },
        }
    }

    fn into_op(self, field: Field) -> Result<TransformOp> {
        Ok(match self {
            OpDoc::Shift { c } => TransformOp::Shift { c: c.to_bigint()? },
            OpDoc::ResidueShift { d } => TransformOp::ResidueShift { d },
            OpDoc::Scaling { lambda } => {
                let mut factors = Vec::with_capacity(lambda.len());
                for (i, text) in lambda.iter().enumerate() {
                    let value = FieldElement::parse(field, text)?;
                    if value.is_zero() {
                        return Err(Error::ZeroScalingFactor(i));
                    }
                    factors.push(value);
                }
                TransformOp::Scaling { lambda: factors }
            }
        })
    }
}

// =======================================================================
// The individual transformations
// =======================================================================

/// Uniform index shift: returns the algebra with translation `t + c` and
/// matrix `α'_{ij} = α_{(i+c) mod n, (j+c) mod n}`. The map `e_a ↦ e_{a+c}`
/// is an isomorphism from the new algebra to the old one.
#[must_use]
pub fn shift(alg: &PeriodicAlgebra, c: impl Into<BigInt>) -> PeriodicAlgebra {
    let c = c.into();
    let n = alg.period();
    let matrix = alg.matrix();
    let offset = residue_of(&c, n).expect("period is positive");
    let entries = (0..n * n)
        .map(|cell| {
            let (i, j) = (cell / n, cell % n);
            matrix.entry((i + offset) % n, (j + offset) % n).clone()
        })
        .collect();
    let shifted =
        StructureMatrix::new(alg.field(), n, entries).expect("shifted entries stay well-formed");
    PeriodicAlgebra::new(shifted, alg.t() + c)
}

/// Per-residue index shift `e_a ↦ e_{a + d_ā}`: returns the algebra with
/// matrix `α'_{ij} = α_{(i+d_i) mod n, (j+d_j) mod n}` and the translation
/// unchanged.
///
/// Validity needs two things. First, `i ↦ (i + d_i) mod n` must permute
/// the residues. Second, wherever the transformed matrix has a nonzero
/// entry `(i, j)`, the offsets must respect the index bookkeeping as
/// integers: `d_i + d_j = d_{(i+j+t̄) mod n}`. The constraint is checked
/// only at nonzero entries — the classical explicit isomorphisms between
/// the reference algebras violate it at entries whose structure constants
/// vanish, and are still perfectly valid maps.
///
/// # Errors
///
/// Wrong offset count, non-permutation offsets, or a bookkeeping violation
/// at a nonzero entry (named in the error).
pub fn apply_residue_shift(alg: &PeriodicAlgebra, d: &[i64]) -> Result<PeriodicAlgebra> {
    let n = alg.period();
    if d.len() != n {
        return Err(Error::WrongVectorLength {
            what: "residue shift offsets",
            n,
            got: d.len(),
        });
    }
    let image: Vec<Residue> = (0..n)
        .map(|i| reduce_i64(i as i64 + d[i], n))
        .collect();
    let distinct: BTreeSet<Residue> = image.iter().copied().collect();
    if distinct.len() != n {
        return Err(Error::NotAPermutation(format!(
            "offsets {d:?} send residues to {image:?}"
        )));
    }
    let matrix = alg.matrix();
    let s = alg.t_residue();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let value = matrix.entry(image[i], image[j]).clone();
            if !value.is_zero() && d[i] + d[j] != d[(i + j + s) % n] {
                return Err(Error::ShiftConstraint { i, j });
            }
            entries.push(value);
        }
    }
    let transformed =
        StructureMatrix::new(alg.field(), n, entries).expect("permuted entries stay well-formed");
    Ok(PeriodicAlgebra::new(transformed, alg.t().clone()))
}

/// Per-residue rescaling `e_a ↦ λ_ā e_a`: returns the algebra with matrix
/// `α'_{ij} = λ_i · λ_j · λ_{(i+j+t̄) mod n}⁻¹ · α_ij`. Zero patterns are
/// never changed.
///
/// # Errors
///
/// Wrong factor count or a zero factor.
pub fn scale(alg: &PeriodicAlgebra, lambda: &[FieldElement]) -> Result<PeriodicAlgebra> {
    let n = alg.period();
    if lambda.len() != n {
        return Err(Error::WrongVectorLength {
            what: "scaling factors",
            n,
            got: lambda.len(),
        });
    }
    if let Some(i) = lambda.iter().position(FieldElement::is_zero) {
        return Err(Error::ZeroScalingFactor(i));
    }
    let matrix = alg.matrix();
    let s = alg.t_residue();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let inverse = lambda[(i + j + s) % n]
                .inv()
                .expect("factors checked nonzero");
            entries.push(lambda[i].mul(&lambda[j]).mul(&inverse).mul(matrix.entry(i, j)));
        }
    }
    let scaled =
        StructureMatrix::new(alg.field(), n, entries).expect("scaled entries stay well-formed");
    Ok(PeriodicAlgebra::new(scaled, alg.t().clone()))
}

/// Inflation to period `n·m`: the block-constant matrix
/// `β_{r,c} = α_{r mod n, c mod n}`, translation unchanged. Every
/// `n`-periodic algebra is also `nm`-periodic; inflation makes that
/// explicit.
///
/// # Errors
///
/// `m = 0` would produce an empty period and is rejected.
pub fn inflate(alg: &PeriodicAlgebra, m: usize) -> Result<PeriodicAlgebra> {
    if m == 0 {
        return Err(Error::InvalidPeriod(0));
    }
    let n = alg.period();
    let nm = n * m;
    let matrix = alg.matrix();
    let entries = (0..nm * nm)
        .map(|cell| {
            let (r, c) = (cell / nm, cell % nm);
            matrix.entry(r % n, c % n).clone()
        })
        .collect();
    let inflated =
        StructureMatrix::new(alg.field(), nm, entries).expect("inflated entries stay well-formed");
    Ok(PeriodicAlgebra::new(inflated, alg.t().clone()))
}

/// True iff the algebra's matrix is block-constant with `n × n` blocks,
/// i.e. it arises by inflation from some period-`n` matrix.
///
/// # Errors
///
/// `n` must be a positive divisor of the algebra's period.
pub fn is_inflation_of(alg: &PeriodicAlgebra, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidPeriod(0));
    }
    let period = alg.period();
    if period % n != 0 {
        return Err(Error::PeriodNotDivisible { n, period });
    }
    let matrix = alg.matrix();
    Ok((0..period).all(|r| {
        (0..period).all(|c| matrix.entry(r, c) == matrix.entry(r % n, c % n))
    }))
}

/// Finds a cyclic shift making the top-left structure constant zero.
///
/// Diagonal entries are scanned in ascending order: the first `c` with
/// `α_cc = 0` yields the shifted algebra (with `α'_{00} = α_cc = 0`) and
/// the witnessing transform; `c = 0` returns the input unchanged with the
/// identity transform. Intended for algebras passing the Leibniz residue
/// check, where such a `c` always exists; the precondition is documented,
/// not enforced.
///
/// # Errors
///
/// Fails when every diagonal entry is nonzero.
pub fn normalize_alpha00(alg: &PeriodicAlgebra) -> Result<(PeriodicAlgebra, BasisTransform)> {
    let n = alg.period();
    for c in 0..n {
        if alg.alpha(c, c).is_zero() {
            return Ok(if c == 0 {
                (alg.clone(), BasisTransform::identity())
            } else {
                (
                    shift(alg, c as i64),
                    BasisTransform {
                        ops: vec![TransformOp::Shift {
                            c: BigInt::from(c),
                        }],
                    },
                )
            });
        }
    }
    Err(Error::NoNormalizingShift)
}

// =======================================================================
// Isomorphism search
// =======================================================================

/// Element-level verification of a candidate isomorphism: checks
/// `φ(x·y) = φ(x)·φ(y)` for all basis pairs `e_x, e_y` of `target` with
/// `x, y ∈ [−window, window]`, where `φ` maps `target` elements into
/// `source` elements.
///
/// # Errors
///
/// Propagates malformed-transform errors.
pub fn homomorphism_on_window(
    transform: &BasisTransform,
    source: &PeriodicAlgebra,
    target: &PeriodicAlgebra,
    window: i64,
) -> Result<bool> {
    let n = target.period();
    let field = target.field();
    for x in -window..=window {
        let ex = BigInt::from(x);
        let (ix, cx) = transform.basis_image(&ex, n, field)?;
        let phi_x = Element::single(ix, cx);
        for y in -window..=window {
            let ey = BigInt::from(y);
            let (iy, cy) = transform.basis_image(&ey, n, field)?;
            let phi_y = Element::single(iy, cy);
            let product = target.mul_basis(&ex, &ey);
            let lhs = transform.map_element(&product, n, field)?;
            let rhs = source.mul_elem(&phi_x, &phi_y);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Helper: the scaling factors tried per residue class during the search —
/// every nonzero element for a prime field, a small symmetric set of units
/// for ℚ. The identity factor comes first so the first find is minimal.
fn scaling_candidates(field: Field) -> Vec<FieldElement> {
    match field {
        Field::Fp { p } => (1..p)
            .map(|v| FieldElement::Fp { value: v, p })
            .collect(),
        Field::Q => ["1", "-1", "2", "-2", "1/2", "-1/2"]
            .iter()
            .map(|text| FieldElement::parse(Field::Q, text).expect("literal scalars parse"))
            .collect(),
    }
}

/// Helper: odometer over `choices^n`, invoking `visit` until it returns
/// true (found) or the space is exhausted. The first coordinate varies
/// slowest, so all-first-choice comes first.
fn for_each_tuple<T: Clone>(
    choices: &[T],
    n: usize,
    mut visit: impl FnMut(&[T]) -> Result<bool>,
) -> Result<bool> {
    let mut positions = vec![0usize; n];
    let mut tuple: Vec<T> = vec![choices[0].clone(); n];
    loop {
        if visit(&tuple)? {
            return Ok(true);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            positions[pos] += 1;
            if positions[pos] < choices.len() {
                tuple[pos] = choices[positions[pos]].clone();
                break;
            }
            positions[pos] = 0;
            tuple[pos] = choices[0].clone();
        }
    }
}

/// Searches for an isomorphism `source → target` within the group
/// generated by shifts, residue shifts, and scalings.
///
/// The shift amount is forced to `t_target − t_source`; residue-shift
/// offsets are scanned per coordinate over `0, 1, −1, …, n, −n`
/// (identity first); scaling factors come from [`scaling_candidates`] —
/// exhaustive over a prime field, the finite default set over ℚ. Matrices
/// are compared entrywise after a zero-pattern prefilter (scalings cannot
/// change the pattern), and every hit is re-verified element-wise on the
/// index window `[−2n, 2n]` before being returned.
///
/// `None` means no isomorphism exists *within this group and search
/// range* — it is not a proof of non-isomorphism. Definitive distinctness
/// comes from invariant differences instead.
///
/// # Errors
///
/// The two algebras must share field and period.
pub fn isomorphism_search(
    source: &PeriodicAlgebra,
    target: &PeriodicAlgebra,
) -> Result<Option<BasisTransform>> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch {
            expected: source.field(),
            got: target.field(),
        });
    }
    if source.period() != target.period() {
        return Err(Error::PeriodMismatch {
            a: source.period(),
            b: target.period(),
        });
    }
    let n = source.period();
    let field = source.field();
    let c: BigInt = target.t() - source.t();
    let shifted = shift(source, c.clone());

    let mut offsets: Vec<i64> = vec![0];
    for k in 1..=n as i64 {
        offsets.push(k);
        offsets.push(-k);
    }
    let lambdas = scaling_candidates(field);
    let target_pattern = target.matrix().zero_pattern();

    let mut found: Option<BasisTransform> = None;
    for_each_tuple(&offsets, n, |d| {
        let Ok(relabeled) = apply_residue_shift(&shifted, d) else {
            return Ok(false);
        };
        if relabeled.matrix().zero_pattern() != target_pattern {
            return Ok(false);
        }
        for_each_tuple(&lambdas, n, |lambda| {
            let candidate = scale(&relabeled, lambda).expect("search factors are nonzero");
            if candidate != *target {
                return Ok(false);
            }
            let mut ops = Vec::new();
            if !c.is_zero() {
                ops.push(TransformOp::Shift { c: c.clone() });
            }
            if d.iter().any(|&offset| offset != 0) {
                ops.push(TransformOp::ResidueShift { d: d.to_vec() });
            }
            if lambda.iter().any(|factor| !factor.is_one()) {
                ops.push(TransformOp::Scaling {
                    lambda: lambda.to_vec(),
                });
            }
            let transform = BasisTransform { ops };
            let verified =
                homomorphism_on_window(&transform, source, target, 2 * n as i64)?;
            debug_assert!(verified, "matrix-level hit failed the element-level check");
            if verified {
                found = Some(transform);
                return Ok(true);
            }
            Ok(false)
        })
    })?;
    Ok(found)
}

// =======================================================================
// Tests
// =======================================================================
