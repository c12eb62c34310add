//! Crate-wide error type.
//!
//! Every fallible public operation in this crate returns [`Result`]. The
//! variants are deliberately fine-grained so that callers (in particular the
//! command-line layer) can distinguish usage mistakes from input-parse
//! failures and from genuine mathematical refusals such as budget limits.

use crate::field::Field;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A prime-field modulus failed its primality check.
    #[error("modulus {0} is not prime")]
    NotPrime(u16),

    /// Division or inversion of a zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// A scalar literal could not be parsed in the given field.
    #[error("cannot parse {input:?} as a scalar over {field}")]
    ParseScalar {
        /// The offending literal.
        input: String,
        /// The field the literal was parsed against.
        field: Field,
    },

    /// A residue computation was requested with a non-positive period.
    #[error("invalid period {0}; the period must be at least 1")]
    InvalidPeriod(usize),

    /// A residue argument fell outside `[0, n)`.
    #[error("residue {residue} out of range for period {n}")]
    ResidueOutOfRange {
        /// The offending residue.
        residue: usize,
        /// The period it was checked against.
        n: usize,
    },

    /// A structure-matrix constructor received the wrong number of entries.
    #[error("structure matrix for period {n} needs {expected} entries, got {got}")]
    MatrixShape {
        /// The declared period.
        n: usize,
        /// `n * n`.
        expected: usize,
        /// The number of entries supplied.
        got: usize,
    },

    /// A matrix entry (or scaling factor, etc.) belongs to a different field
    /// than the container it is being placed in.
    #[error("field mismatch: expected {expected}, got {got}")]
    FieldMismatch {
        /// The field the container was declared over.
        expected: Field,
        /// The field of the offending scalar.
        got: Field,
    },

    /// Exhaustive enumeration is only possible over a finite field.
    #[error("cannot enumerate over {0}: only finite fields are enumerable")]
    NotEnumerable(Field),

    /// A search or enumeration would exceed the configured work budget.
    #[error("operation requires {required} steps, exceeding the budget of {budget}; raise the budget to proceed")]
    BudgetExceeded {
        /// Steps the operation would need.
        required: u128,
        /// The configured ceiling.
        budget: u64,
    },

    /// A balanced product was requested for a list whose length is not a
    /// power of two.
    #[error("balanced products need 2^r factors, got a list of length {0}")]
    LengthNotPowerOfTwo(usize),

    /// The requested operation is not defined for the given input; the
    /// message names the applicable alternative.
    #[error("{0}")]
    UnsupportedCase(String),

    /// A residue-shift offset vector does not induce a permutation of the
    /// residue classes.
    #[error("residue offsets do not induce a permutation: {0}")]
    NotAPermutation(String),

    /// A residue shift violates the additivity constraint at a nonzero entry.
    #[error("residue shift breaks the index bookkeeping at entry ({i}, {j}): d_i + d_j must equal d_((i+j+t) mod n)")]
    ShiftConstraint {
        /// Row residue of the offending entry.
        i: usize,
        /// Column residue of the offending entry.
        j: usize,
    },

    /// A scaling transform received a zero factor.
    #[error("scaling factor for residue {0} is zero; all factors must be invertible")]
    ZeroScalingFactor(usize),

    /// A transform argument vector has the wrong length.
    #[error("{what} needs one entry per residue class ({n}), got {got}")]
    WrongVectorLength {
        /// What kind of vector was being validated.
        what: &'static str,
        /// The period.
        n: usize,
        /// The supplied length.
        got: usize,
    },

    /// Two algebras that were expected to share a period do not.
    #[error("period mismatch: {a} vs {b}")]
    PeriodMismatch {
        /// First period.
        a: usize,
        /// Second period.
        b: usize,
    },

    /// A coarser period does not divide the finer one.
    #[error("{n} does not divide the period {period}")]
    PeriodNotDivisible {
        /// The candidate coarse period.
        n: usize,
        /// The actual period.
        period: usize,
    },

    /// No cyclic shift can bring a zero into the top-left matrix entry.
    #[error("no shift achieves alpha_00 = 0: every diagonal entry is nonzero")]
    NoNormalizingShift,

    /// An unknown named algebra was requested.
    #[error("unknown algebra name {0:?}")]
    UnknownAlgebra(String),

    /// No family table is registered for the requested period/translation.
    #[error("no family table registered for period {n} with translation residue {t_res}")]
    UnknownFamilyTable {
        /// The period.
        n: usize,
        /// The translation residue.
        t_res: usize,
    },

    /// A declared parameter constraint was violated.
    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),

    /// An algebra or element document parsed as JSON but failed semantic
    /// validation.
    #[error("invalid input document: {0}")]
    InvalidDocument(String),

    /// Underlying JSON syntax error.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    /// Underlying I/O error.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    /// A command-line invocation was semantically invalid.
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    /// True when the error stems from reading or validating an input
    /// document rather than from the request itself.
    #[must_use]
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Json(_) | Error::InvalidDocument(_) | Error::ParseScalar { .. }
        )
    }
}
