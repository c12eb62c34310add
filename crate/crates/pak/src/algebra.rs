//! Periodic algebras on an integer-indexed basis, and their elements.
//!
//! The objects of study are algebras with basis `{e_a : a ∈ ℤ}` over a
//! ground field, multiplication
//!
//! ```text
//! e_a · e_b = f(a, b) · e_{a + b + t}
//! ```
//!
//! and a structure function `f` that is periodic with period `n` in both
//! arguments. Such an `f` is captured completely by the n×n matrix
//! `α_{ij} = f(i, j)` of its values on residues, and the translation `t` is
//! an arbitrary integer. Elements are finite linear combinations of basis
//! vectors, held exactly.
//!
//! ```
//! use pak::algebra::{Element, PeriodicAlgebra, StructureMatrix};
//! use pak::field::Field;
//!
//! let f2 = Field::fp(2).unwrap();
//! let matrix = StructureMatrix::from_integer_rows(f2, &[&[0, 1], &[1, 0]]).unwrap();
//! let alg = PeriodicAlgebra::new(matrix, 0);
//!
//! // e_3 · e_{-2} picks up the structure constant at residues (1, 0).
//! let product = alg.mul_basis(&3.into(), &(-2).into());
//! assert_eq!(product, Element::basis(f2, 1));
//! ```

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::residue::{reduce, BasisIndex, Residue};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

// =======================================================================
// Structure matrices
// =======================================================================

/// The n×n matrix of structure constants `α_{ij} = f(i, j)` of a periodic
/// structure function, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMatrix {
    field: Field,
    n: usize,
    entries: Vec<FieldElement>,
}

impl StructureMatrix {
    /// Builds a matrix from `n * n` row-major entries.
    ///
    /// # Errors
    ///
    /// Rejects a zero period, a wrong entry count, or entries from a
    /// different field.
    pub fn new(field: Field, n: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPeriod(0));
        }
        if entries.len() != n * n {
            return Err(Error::MatrixShape {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        for entry in &entries {
            if entry.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    got: entry.field(),
                });
            }
        }
        Ok(Self { field, n, entries })
    }

    /// The zero matrix (the trivial structure function).
    ///
    /// # Panics
    ///
    /// Panics when `n == 0`.
    #[must_use]
    pub fn zero(field: Field, n: usize) -> Self {
        Self::new(field, n, vec![FieldElement::zero(field); n * n])
            .expect("zero matrix entries are well-formed")
    }

    /// Builds a matrix from rows of small integers, mapping each through the
    /// canonical image in `field`. Convenient for literals in tests and
    /// examples.
    ///
    /// # Errors
    ///
    /// Rejects ragged rows or a wrong row count.
    pub fn from_integer_rows(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::MatrixShape {
                    n,
                    expected: n * n,
                    got: rows.iter().map(|r| r.len()).sum(),
                });
            }
            entries.extend(row.iter().map(|&k| FieldElement::from_integer(field, k)));
        }
        Self::new(field, n, entries)
    }

    /// The ground field.
    #[must_use]
    pub fn field(&self) -> Field {
        self.field
    }

    /// The period `n`.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// The structure constant `α_{ij}`.
    ///
    /// # Panics
    ///
    /// Panics when `i` or `j` is not a residue in `[0, n)`; residues coming
    /// from outside the crate are validated at the boundary.
    #[must_use]
    pub fn entry(&self, i: Residue, j: Residue) -> &FieldElement {
        assert!(i < self.n && j < self.n, "residue pair ({i}, {j}) out of range");
        &self.entries[i * self.n + j]
    }

    /// Replaces the structure constant `α_{ij}`.
    ///
    /// # Errors
    ///
    /// Rejects out-of-range residues and scalars from a different field.
    pub fn set_entry(&mut self, i: Residue, j: Residue, value: FieldElement) -> Result<()> {
        if i >= self.n {
            return Err(Error::ResidueOutOfRange { residue: i, n: self.n });
        }
        if j >= self.n {
            return Err(Error::ResidueOutOfRange { residue: j, n: self.n });
        }
        if value.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                got: value.field(),
            });
        }
        self.entries[i * self.n + j] = value;
        Ok(())
    }

    /// All residue pairs `(i, j)` with `α_{ij} ≠ 0`, row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Residue, Residue)> + '_ {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(k, _)| (k / n, k % n))
    }

    /// The entries rendered as canonical scalar strings, row by row — the
    /// form used in every JSON document.
    #[must_use]
    pub fn rows_strings(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }

    /// Helper: the zero/nonzero pattern, row-major. Two matrices related by
    /// a scaling transform have equal patterns, which makes this a cheap
    /// prefilter in isomorphism searches.
    pub(crate) fn zero_pattern(&self) -> Vec<bool> {
        self.entries.iter().map(FieldElement::is_zero).collect()
    }
}

// =======================================================================
// Elements
// =======================================================================

/// A finitely supported linear combination `Σ c_a · e_a` of basis vectors.
///
/// Terms are kept in a sorted map from index to coefficient; zero
/// coefficients are never stored, so structural equality is semantic
/// equality and iteration is always in ascending index order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<BasisIndex, FieldElement>,
}

impl Element {
    /// The zero element.
    #[must_use]
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_index`.
    #[must_use]
    pub fn basis(field: Field, index: impl Into<BigInt>) -> Self {
        Self::single(index, FieldElement::one(field))
    }

    /// The single-term element `coeff · e_index` (zero if `coeff` is zero).
    #[must_use]
    pub fn single(index: impl Into<BigInt>, coeff: FieldElement) -> Self {
        let mut result = Self::zero();
        result.add_term(index.into(), coeff);
        result
    }

    /// True for the zero element.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (nonzero) terms.
    #[must_use]
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of `e_index` (`None` when the term is absent).
    #[must_use]
    pub fn coeff(&self, index: &BigInt) -> Option<&FieldElement> {
        self.terms.get(index)
    }

    /// Iterates `(index, coefficient)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &FieldElement)> {
        self.terms.iter()
    }

    /// Adds `coeff · e_index` into this element, dropping the term if the
    /// sum cancels. Panics on cross-field coefficients (see [`crate::field`]).
    pub fn add_term(&mut self, index: BigInt, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&index) {
            None => {
                self.terms.insert(index, coeff);
            }
            Some(existing) => {
                let sum = existing.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(index, sum);
                }
            }
        }
    }

    /// Sum of two elements.
    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let mut result = self.clone();
        for (index, coeff) in &other.terms {
            result.add_term(index.clone(), coeff.clone());
        }
        result
    }

    /// Difference of two elements.
    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Additive inverse.
    #[must_use]
    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(index, coeff)| (index.clone(), coeff.neg()))
            .collect();
        Self { terms }
    }

    /// Scalar multiple `c · self`.
    #[must_use]
    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(index, coeff)| (index.clone(), coeff.mul(c)))
            .collect();
        Self { terms }
    }

    /// Serializes to the canonical element document
    /// `{"terms": [{"index": …, "coeff": "…"}, …]}`, terms in ascending
    /// index order.
    #[must_use]
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&ElementDoc::from_element(self))
            .expect("element serialization is infallible")
    }

    /// Parses the canonical element document, reading coefficients in
    /// `field`. Duplicate indices are summed; zero terms are dropped.
    ///
    /// # Errors
    ///
    /// Rejects malformed JSON, malformed scalars, and malformed indices.
    pub fn from_json_str(text: &str, field: Field) -> Result<Self> {
        let doc: ElementDoc = serde_json::from_str(text)?;
        doc.into_element(field)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (index, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if coeff.is_one() {
                write!(f, "e_{index}")?;
            } else {
                write!(f, "{coeff}*e_{index}")?;
            }
        }
        Ok(())
    }
}

// =======================================================================
// Periodic algebras
// =======================================================================

/// A periodic algebra: a structure matrix together with a translation
/// `t ∈ ℤ` governing the index bookkeeping `e_a e_b ∈ K·e_{a+b+t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicAlgebra {
    matrix: StructureMatrix,
    t: BigInt,
}

impl PeriodicAlgebra {
    /// Wraps a structure matrix and a translation into an algebra.
    #[must_use]
    pub fn new(matrix: StructureMatrix, t: impl Into<BigInt>) -> Self {
        Self { matrix, t: t.into() }
    }

    /// The ground field.
    #[must_use]
    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// The period `n`.
    #[must_use]
    pub fn period(&self) -> usize {
        self.matrix.n()
    }

    /// The translation `t` as a full integer.
    #[must_use]
    pub fn t(&self) -> &BigInt {
        &self.t
    }

    /// The translation reduced modulo the period, written `t̄` (the only
    /// part of `t` the structure constants ever see).
    #[must_use]
    pub fn t_residue(&self) -> Residue {
        reduce(&self.t, self.period())
    }

    /// The structure matrix.
    #[must_use]
    pub fn matrix(&self) -> &StructureMatrix {
        &self.matrix
    }

    /// The structure constant `α_{ij}`. Panics on out-of-range residues,
    /// like [`StructureMatrix::entry`].
    #[must_use]
    pub fn alpha(&self, i: Residue, j: Residue) -> &FieldElement {
        self.matrix.entry(i, j)
    }

    /// Product of two basis vectors:
    /// `e_a · e_b = α_{ā b̄} · e_{a + b + t}`.
    #[must_use]
    pub fn mul_basis(&self, a: &BasisIndex, b: &BasisIndex) -> Element {
        let n = self.period();
        let coeff = self.alpha(reduce(a, n), reduce(b, n)).clone();
        Element::single(a + b + &self.t, coeff)
    }

    /// Product of two elements by bilinear expansion. Panics if either
    /// element carries coefficients from a different field (inputs built
    /// through this crate's boundaries are always consistent).
    #[must_use]
    pub fn mul_elem(&self, x: &Element, y: &Element) -> Element {
        let n = self.period();
        let mut result = Element::zero();
        for (a, ca) in x.iter() {
            let ra = reduce(a, n);
            for (b, cb) in y.iter() {
                let alpha = self.alpha(ra, reduce(b, n));
                if alpha.is_zero() {
                    continue;
                }
                result.add_term(a + b + &self.t, ca.mul(cb).mul(alpha));
            }
        }
        result
    }

    /// Product of `2^r` basis vectors under the balanced (complete binary
    /// tree) bracketing: the list is split in half, each half is multiplied
    /// recursively, and the two results are multiplied together.
    ///
    /// # Errors
    ///
    /// Rejects lists whose length is not a power of two (the empty list
    /// included).
    pub fn balanced_product(&self, indices: &[BasisIndex]) -> Result<Element> {
        if indices.is_empty() || !indices.len().is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(indices.len()));
        }
        Ok(self.balanced_recursive(indices))
    }

    /// Helper: the recursion behind [`Self::balanced_product`], on lists
    /// already known to have power-of-two length.
    fn balanced_recursive(&self, indices: &[BasisIndex]) -> Element {
        if indices.len() == 1 {
            return Element::basis(self.field(), indices[0].clone());
        }
        let mid = indices.len() / 2;
        let left = self.balanced_recursive(&indices[..mid]);
        let right = self.balanced_recursive(&indices[mid..]);
        self.mul_elem(&left, &right)
    }

    /// The same balanced product evaluated without any recursion, as a
    /// single closed-form term: the coefficient is the product, over each
    /// level `k` of the tree and each block `s` on that level, of
    ///
    /// ```text
    /// f( (2^k - 1)·t + Σ(left block),  (2^k - 1)·t + Σ(right block) )
    /// ```
    ///
    /// and the resulting index is `(2^r - 1)·t + Σ indices`. Agreement
    /// between this route and [`Self::balanced_product`] is a theorem about
    /// the index bookkeeping, so the two implementations are kept
    /// deliberately independent and cross-checked in the test suite.
    ///
    /// # Errors
    ///
    /// Rejects lists whose length is not a power of two.
    pub fn closed_form_balanced(&self, indices: &[BasisIndex]) -> Result<Element> {
        let len = indices.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(len));
        }
        let n = self.period();
        let r = len.trailing_zeros();

        // Prefix sums make every block sum an O(1) subtraction.
        let mut prefix = Vec::with_capacity(len + 1);
        prefix.push(BigInt::zero());
        for a in indices {
            prefix.push(prefix.last().expect("nonempty") + a);
        }
        let block_sum = |from: usize, to: usize| &prefix[to] - &prefix[from];

        let mut coeff = FieldElement::one(self.field());
        for k in 0..r {
            let block = 1usize << k;
            let t_part = BigInt::from(block as u64 - 1) * &self.t;
            for s in 0..(len >> (k + 1)) {
                let base = 2 * block * s;
                let left = &t_part + block_sum(base, base + block);
                let right = &t_part + block_sum(base + block, base + 2 * block);
                let factor = self.alpha(reduce(&left, n), reduce(&right, n));
                if factor.is_zero() {
                    return Ok(Element::zero());
                }
                coeff = coeff.mul(factor);
            }
        }
        let index = BigInt::from(len as u64 - 1) * &self.t + block_sum(0, len);
        Ok(Element::single(index, coeff))
    }

    /// Whether the span of the full residue classes in `residues` is closed
    /// under multiplication — that is, whether `α_{ij} ≠ 0` with
    /// `i, j ∈ residues` always lands in a listed class `(i+j+t̄) mod n`.
    ///
    /// # Errors
    ///
    /// Rejects residues outside `[0, n)`.
    pub fn residue_span_is_subalgebra(&self, residues: &BTreeSet<Residue>) -> Result<bool> {
        let n = self.period();
        self.validate_residues(residues)?;
        let s = self.t_residue();
        for &i in residues {
            for &j in residues {
                if !self.alpha(i, j).is_zero() && !residues.contains(&((i + j + s) % n)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the span of the full residue classes in `residues` is a
    /// two-sided ideal: products with an arbitrary class on either side must
    /// land in a listed class whenever the structure constant is nonzero.
    ///
    /// # Errors
    ///
    /// Rejects residues outside `[0, n)`.
    pub fn residue_span_is_ideal(&self, residues: &BTreeSet<Residue>) -> Result<bool> {
        let n = self.period();
        self.validate_residues(residues)?;
        let s = self.t_residue();
        for &i in residues {
            for j in 0..n {
                if !self.alpha(i, j).is_zero() && !residues.contains(&((i + j + s) % n)) {
                    return Ok(false);
                }
                if !self.alpha(j, i).is_zero() && !residues.contains(&((j + i + s) % n)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Helper: range-checks a residue set against the period.
    fn validate_residues(&self, residues: &BTreeSet<Residue>) -> Result<()> {
        let n = self.period();
        for &r in residues {
            if r >= n {
                return Err(Error::ResidueOutOfRange { residue: r, n });
            }
        }
        Ok(())
    }

    // -------------------------------------------------------------------
    // JSON document round-trips
    // -------------------------------------------------------------------

    /// Serializes to the canonical algebra document, e.g.
    /// `{"field":{"kind":"Fp","p":2},"period":2,"t":0,"alpha":[["0","1"],["1","0"]]}`.
    #[must_use]
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(AlgebraDoc::from_algebra(self))
            .expect("algebra serialization is infallible")
    }

    /// Compact one-line form of [`Self::to_json_value`].
    #[must_use]
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&AlgebraDoc::from_algebra(self))
            .expect("algebra serialization is infallible")
    }

    /// Pretty-printed form of [`Self::to_json_value`].
    #[must_use]
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&AlgebraDoc::from_algebra(self))
            .expect("algebra serialization is infallible")
    }

    /// Parses and fully validates the canonical algebra document.
    ///
    /// # Errors
    ///
    /// Rejects malformed JSON, a composite modulus, a zero period, a ragged
    /// or wrongly sized `alpha` grid, and malformed scalars.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text)?;
        doc.into_algebra()
    }

    /// [`Self::from_json_str`] for an already-parsed JSON value.
    ///
    /// # Errors
    ///
    /// As [`Self::from_json_str`], minus the syntax errors.
    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_value(value)?;
        doc.into_algebra()
    }
}

// =======================================================================
// JSON intermediates
// =======================================================================

/// An integer that serializes as a JSON number whenever it fits in `i64`
/// and as a decimal string beyond that, so arbitrarily large indices and
/// translations survive the round-trip.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum JsonInt {
    /// Fits in a JSON number.
    Small(i64),
    /// Decimal string fallback for big integers.
    Big(String),
}

impl JsonInt {
    pub(crate) fn from_bigint(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(small) => JsonInt::Small(small),
            None => JsonInt::Big(v.to_string()),
        }
    }

    pub(crate) fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(text) => text
                .trim()
                .parse()
                .map_err(|_| Error::InvalidDocument(format!("not an integer: {text:?}"))),
        }
    }
}

/// Wire form of a [`PeriodicAlgebra`].
#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    field: Field,
    period: usize,
    t: JsonInt,
    alpha: Vec<Vec<String>>,
}

impl AlgebraDoc {
    fn from_algebra(alg: &PeriodicAlgebra) -> Self {
        Self {
            field: alg.field(),
            period: alg.period(),
            t: JsonInt::from_bigint(alg.t()),
            alpha: alg.matrix().rows_strings(),
        }
    }

    fn into_algebra(self) -> Result<PeriodicAlgebra> {
        let field = self.field.validate()?;
        if self.period == 0 {
            return Err(Error::InvalidDocument("period must be at least 1".into()));
        }
        if self.alpha.len() != self.period {
            return Err(Error::InvalidDocument(format!(
                "alpha has {} rows, expected {}",
                self.alpha.len(),
                self.period
            )));
        }
        let mut entries = Vec::with_capacity(self.period * self.period);
        for (i, row) in self.alpha.iter().enumerate() {
            if row.len() != self.period {
                return Err(Error::InvalidDocument(format!(
                    "alpha row {i} has {} columns, expected {}",
                    row.len(),
                    self.period
                )));
            }
            for cell in row {
                entries.push(FieldElement::parse(field, cell)?);
            }
        }
        let matrix = StructureMatrix::new(field, self.period, entries)?;
        Ok(PeriodicAlgebra::new(matrix, self.t.to_bigint()?))
    }
}

/// Wire form of an [`Element`].
#[derive(Serialize, Deserialize)]
struct ElementDoc {
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    index: JsonInt,
    coeff: String,
}

impl ElementDoc {
    fn from_element(elem: &Element) -> Self {
        Self {
            terms: elem
                .iter()
                .map(|(index, coeff)| TermDoc {
                    index: JsonInt::from_bigint(index),
                    coeff: coeff.to_string(),
                })
                .collect(),
        }
    }

    fn into_element(self, field: Field) -> Result<Element> {
        let mut elem = Element::zero();
        for term in self.terms {
            elem.add_term(term.index.to_bigint()?, FieldElement::parse(field, &term.coeff)?);
        }
        Ok(elem)
    }
}

// =======================================================================
// Tests
// =======================================================================
