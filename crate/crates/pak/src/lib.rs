//! Exact-arithmetic toolkit for **periodic algebras**: infinite-dimensional
//! algebras on the basis `{e_a : a ∈ ℤ}` whose multiplication
//!
//! ```text
//! e_a · e_b = f(a, b) · e_{a+b+t}
//! ```
//!
//! is governed by a structure-constant function `f` that is periodic mod `n`
//! in both arguments (so an `n × n` matrix of scalars determines the whole
//! product) together with an integer translation `t`.
//!
//! The crate provides:
//!
//! - exact scalars over ℚ and prime fields 𝔽_p ([`field`]);
//! - finitely supported elements and the bilinear product ([`algebra`]),
//!   including a closed form for fully balanced products that never touches
//!   the recursive multiplication path;
//! - verification and exhaustive enumeration of the Leibniz identity
//!   `x(yz) = (xy)z − (xz)y` at the residue level ([`leibniz`]);
//! - structural analysis: lower central and derived series, nilpotency and
//!   solvability certificates, annihilators, generation, and a structural
//!   fingerprint ([`analysis`]);
//! - basis transformations (index shifts, residue-dependent shifts,
//!   scalings, inflations) and a bounded isomorphism search ([`transform`]);
//! - classification of small-period solutions against built-in family
//!   tables and a registry of named algebras ([`classify`]);
//! - a command-line interface with stable JSON input/output ([`cli`]).
//!
//! All arithmetic is exact; there are no floating-point numbers anywhere.
//! Basis indices are arbitrary-precision integers, so translations such as
//! `t = 10³⁰` work unreduced.
//!
//! # Example
//!
//! ```
//! use pak::{Element, Field, PeriodicAlgebra, StructureMatrix};
//!
//! // n = 2, t = 0, e_a·e_b = ±e_{a+b} with sign depending on residues.
//! let matrix = StructureMatrix::from_integer_rows(Field::Q, &[&[0, -1], &[1, 0]]).unwrap();
//! let alg = PeriodicAlgebra::new(matrix, 0);
//! assert!(pak::leibniz::is_leibniz(&alg));
//!
//! let product = alg.mul_basis(&(-2).into(), &3.into());
//! assert_eq!(product.to_string(), "-1*e_1");
//! ```

pub mod algebra;
pub mod analysis;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod leibniz;
pub mod residue;
pub mod sample;
pub mod transform;

pub use algebra::{Element, PeriodicAlgebra, StructureMatrix};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use residue::{BasisIndex, Residue};
