//! Classification of small-period Leibniz solutions against built-in
//! parametric family tables, plus a registry of named reference algebras.
//!
//! The built-in tables cover period 1 (the zero family), period 2 with
//! translation residue 0 and 1 (three families each), and period 3 with
//! translation residue 0 (the eleven families `A_1`–`A_11`). Matching is
//! exact in the target field: a family matches a matrix when its pattern —
//! cells that are zero or small-integer multiples of a parameter — admits a
//! consistent parameter assignment reproducing every entry. Matches are
//! `strict` when every assigned parameter value is nonzero and `relaxed`
//! otherwise, so degenerations (like the zero matrix as `A_1(0,0)`) stay
//! visible but labeled.
//!
//! ```
//! use pak::classify::{family_match, paper_algebra};
//! use pak::Field;
//! use std::collections::BTreeMap;
//!
//! let l9 = paper_algebra("L_9", Field::Q, &BTreeMap::new()).unwrap();
//! let matches = family_match(l9.matrix(), 0).unwrap();
//! assert!(matches.iter().any(|m| m.family == "A_9" && m.strict));
//! ```

use crate::algebra::{PeriodicAlgebra, StructureMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::leibniz::{candidate_count, enumerate_leibniz, residue_system_holds};
use crate::residue::Residue;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

// =======================================================================
// Family tables
// =======================================================================

/// One parameter slot of a family pattern.
#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    /// Parameter name as it appears in reports (e.g. `"alpha01"`).
    pub name: &'static str,
    /// Whether the family's defining side-condition demands a nonzero
    /// value. Used when sampling instantiations and when constructing
    /// default parameter values; match strictness is judged from the
    /// assigned values themselves.
    pub nonzero: bool,
}

/// One cell of a family pattern.
#[derive(Clone, Copy, Debug)]
pub enum PatternEntry {
    /// The cell is identically zero.
    Zero,
    /// The cell is `coeff · param` for a small integer coefficient.
    Term {
        /// Integer multiplier (e.g. `-2` in `−2α_{01}`).
        coeff: i64,
        /// Index into the family's parameter list.
        param: usize,
    },
}

/// A parametric matrix shape from the classification tables.
#[derive(Clone, Debug)]
pub struct Family {
    /// Stable identifier reported in matches (e.g. `"A_7"`).
    pub id: &'static str,
    /// Period of the family.
    pub n: usize,
    /// Translation residue the family classifies.
    pub t_res: Residue,
    /// Parameter slots.
    pub params: Vec<ParamSpec>,
    /// Row-major `n × n` pattern.
    pub pattern: Vec<PatternEntry>,
}

impl Family {
    /// Helper: instantiates the pattern at concrete parameter values.
    fn instantiate(&self, field: Field, values: &[FieldElement]) -> StructureMatrix {
        let entries = self
            .pattern
            .iter()
            .map(|entry| match entry {
                PatternEntry::Zero => FieldElement::zero(field),
                PatternEntry::Term { coeff, param } => {
                    FieldElement::from_integer(field, *coeff).mul(&values[*param])
                }
            })
            .collect();
        StructureMatrix::new(field, self.n, entries).expect("patterns are square")
    }
}

/// Helper: shorthand constructors for pattern cells.
const fn z() -> PatternEntry {
    PatternEntry::Zero
}
const fn term(coeff: i64, param: usize) -> PatternEntry {
    PatternEntry::Term { coeff, param }
}

/// Helper: the raw family tables, keyed by `(n, t_res)`.
fn family_table(n: usize, t_res: Residue) -> Option<Vec<Family>> {
    let p = |name, nonzero| ParamSpec { name, nonzero };
    match (n, t_res) {
        (1, 0) => Some(vec![Family {
            id: "zero",
            n: 1,
            t_res: 0,
            params: vec![],
            pattern: vec![z()],
        }]),
        (2, 0) => Some(vec![
            Family {
                id: "F0.lower",
                n: 2,
                t_res: 0,
                params: vec![p("alpha10", false)],
                pattern: vec![z(), z(), term(1, 0), z()],
            },
            Family {
                id: "F0.skew",
                n: 2,
                t_res: 0,
                params: vec![p("alpha10", true)],
                pattern: vec![z(), term(-1, 0), term(1, 0), z()],
            },
            Family {
                id: "F0.diag",
                n: 2,
                t_res: 0,
                params: vec![p("alpha11", true)],
                pattern: vec![z(), z(), z(), term(1, 0)],
            },
        ]),
        (2, 1) => Some(vec![
            Family {
                id: "F1.upper",
                n: 2,
                t_res: 1,
                params: vec![p("alpha01", false)],
                pattern: vec![z(), term(1, 0), z(), z()],
            },
            Family {
                id: "F1.skew",
                n: 2,
                t_res: 1,
                params: vec![p("alpha10", true)],
                pattern: vec![z(), term(-1, 0), term(1, 0), z()],
            },
            Family {
                id: "F1.corner",
                n: 2,
                t_res: 1,
                params: vec![p("alpha00", true)],
                pattern: vec![term(1, 0), z(), z(), z()],
            },
        ]),
        (3, 0) => Some(vec![
            Family {
                id: "A_1",
                n: 3,
                t_res: 0,
                params: vec![p("alpha10", false), p("alpha20", false)],
                pattern: vec![z(), z(), z(), term(1, 0), z(), z(), term(1, 1), z(), z()],
            },
            Family {
                id: "A_2",
                n: 3,
                t_res: 0,
                params: vec![p("alpha21", true)],
                pattern: vec![z(), z(), z(), z(), z(), z(), z(), term(1, 0), z()],
            },
            Family {
                id: "A_3",
                n: 3,
                t_res: 0,
                params: vec![p("alpha12", true), p("alpha21", false)],
                pattern: vec![z(), z(), z(), z(), z(), term(1, 0), z(), term(1, 1), z()],
            },
            Family {
                id: "A_4",
                n: 3,
                t_res: 0,
                params: vec![p("alpha02", true), p("alpha10", false)],
                pattern: vec![
                    z(),
                    z(),
                    term(1, 0),
                    term(1, 1),
                    z(),
                    z(),
                    term(-1, 0),
                    z(),
                    z(),
                ],
            },
            Family {
                id: "A_5",
                n: 3,
                t_res: 0,
                params: vec![p("alpha01", true), p("alpha20", false)],
                pattern: vec![
                    z(),
                    term(1, 0),
                    z(),
                    term(-1, 0),
                    z(),
                    z(),
                    term(1, 1),
                    z(),
                    z(),
                ],
            },
            Family {
                id: "A_6",
                n: 3,
                t_res: 0,
                params: vec![p("alpha01", true), p("alpha02", true)],
                pattern: vec![
                    z(),
                    term(1, 0),
                    term(1, 1),
                    term(-1, 0),
                    z(),
                    z(),
                    term(-1, 1),
                    z(),
                    z(),
                ],
            },
            Family {
                id: "A_7",
                n: 3,
                t_res: 0,
                params: vec![p("alpha01", true), p("alpha12", true)],
                pattern: vec![
                    z(),
                    term(1, 0),
                    term(-1, 0),
                    term(-1, 0),
                    z(),
                    term(1, 1),
                    term(1, 0),
                    term(-1, 1),
                    z(),
                ],
            },
            Family {
                id: "A_8",
                n: 3,
                t_res: 0,
                params: vec![p("alpha12", false), p("alpha22", true)],
                pattern: vec![z(), z(), z(), z(), z(), term(1, 0), z(), z(), term(1, 1)],
            },
            Family {
                id: "A_9",
                n: 3,
                t_res: 0,
                params: vec![p("alpha20", true), p("alpha22", true)],
                pattern: vec![
                    z(),
                    z(),
                    term(-1, 0),
                    term(2, 0),
                    z(),
                    z(),
                    term(1, 0),
                    z(),
                    term(1, 1),
                ],
            },
            Family {
                id: "A_10",
                n: 3,
                t_res: 0,
                params: vec![p("alpha11", true), p("alpha21", false)],
                pattern: vec![z(), z(), z(), z(), term(1, 0), z(), z(), term(1, 1), z()],
            },
            Family {
                id: "A_11",
                n: 3,
                t_res: 0,
                params: vec![p("alpha01", true), p("alpha11", true)],
                pattern: vec![
                    z(),
                    term(1, 0),
                    z(),
                    term(-1, 0),
                    term(1, 1),
                    z(),
                    term(-2, 0),
                    z(),
                    z(),
                ],
            },
        ]),
        _ => None,
    }
}

/// The registered family table for `(n, t_res)`, validated over the given
/// field: every sampled instantiation (nonzero-constrained parameters from
/// the field's small units, free parameters including zero) must pass the
/// Leibniz residue check. The tables encode polynomial identities over the
/// integers, so a failure here is a table bug, reported by panic.
///
/// # Errors
///
/// No table is registered for the requested `(n, t_res)`.
pub fn registered_families(n: usize, t_res: Residue, field: Field) -> Result<Vec<Family>> {
    let families = family_table(n, t_res).ok_or(Error::UnknownFamilyTable { n, t_res })?;
    for family in &families {
        let mut sample_sets: Vec<Vec<FieldElement>> = Vec::new();
        for spec in &family.params {
            let raw: &[i64] = if spec.nonzero {
                &[1, -1, 2]
            } else {
                &[0, 1, -1]
            };
            let mut samples: Vec<FieldElement> = raw
                .iter()
                .map(|&k| FieldElement::from_integer(field, k))
                .filter(|v| !spec.nonzero || !v.is_zero())
                .collect();
            samples.dedup();
            sample_sets.push(samples);
        }
        let mut selection = vec![0usize; sample_sets.len()];
        loop {
            let values: Vec<FieldElement> = selection
                .iter()
                .enumerate()
                .map(|(k, &choice)| sample_sets[k][choice].clone())
                .collect();
            let matrix = family.instantiate(field, &values);
            assert!(
                residue_system_holds(&matrix, t_res),
                "family table bug: {} instantiated at {values:?} fails the Leibniz check",
                family.id
            );
            let mut pos = selection.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                selection[pos] += 1;
                if selection[pos] < sample_sets[pos].len() {
                    break;
                }
                selection[pos] = 0;
            }
            if selection.iter().all(|&choice| choice == 0) {
                break;
            }
        }
    }
    Ok(families)
}

// =======================================================================
// Matching
// =======================================================================

/// One family that reproduces a given matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    /// Family identifier.
    pub family: String,
    /// The parameter assignment reproducing the matrix.
    pub params: BTreeMap<String, FieldElement>,
    /// True iff every assigned parameter value is nonzero.
    pub strict: bool,
}

/// Helper: tries to match one family against a matrix, solving for the
/// parameters cell by cell.
fn match_family(family: &Family, matrix: &StructureMatrix) -> Option<FamilyMatch> {
    let field = matrix.field();
    let n = family.n;
    let mut assigned: Vec<Option<FieldElement>> = vec![None; family.params.len()];
    for i in 0..n {
        for j in 0..n {
            let value = matrix.entry(i, j);
            match family.pattern[i * n + j] {
                PatternEntry::Zero => {
                    if !value.is_zero() {
                        return None;
                    }
                }
                PatternEntry::Term { coeff, param } => {
                    let coeff_f = FieldElement::from_integer(field, coeff);
                    if coeff_f.is_zero() {
                        // The coefficient collapses in this field (e.g. 2
                        // in characteristic 2): the cell must be zero and
                        // constrains nothing.
                        if !value.is_zero() {
                            return None;
                        }
                    } else {
                        let solved = value.div(&coeff_f).expect("coefficient checked nonzero");
                        match &assigned[param] {
                            Some(previous) if *previous != solved => return None,
                            Some(_) => {}
                            None => assigned[param] = Some(solved),
                        }
                    }
                }
            }
        }
    }
    let mut params = BTreeMap::new();
    let mut strict = true;
    for (spec, slot) in family.params.iter().zip(assigned) {
        let value = slot.unwrap_or_else(|| {
            // Unconstrained slot (every occurrence collapsed): take the
            // family's preferred default.
            FieldElement::from_integer(field, i64::from(spec.nonzero))
        });
        strict &= !value.is_zero();
        params.insert(spec.name.to_string(), value);
    }
    Some(FamilyMatch {
        family: family.id.to_string(),
        params,
        strict,
    })
}

/// All registered families whose pattern reproduces the matrix exactly, in
/// table order. Degenerate parameter assignments are reported as relaxed
/// matches rather than dropped.
///
/// # Errors
///
/// No family table is registered for `(matrix.n(), t_res)`.
pub fn family_match(matrix: &StructureMatrix, t_res: Residue) -> Result<Vec<FamilyMatch>> {
    let families = registered_families(matrix.n(), t_res, matrix.field())?;
    Ok(families
        .iter()
        .filter_map(|family| match_family(family, matrix))
        .collect())
}

// =======================================================================
// Classification reports
// =======================================================================

/// One enumerated Leibniz solution with its family matches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedSolution {
    /// The structure matrix, row-major, entries in canonical text form.
    pub alpha: Vec<Vec<String>>,
    /// Families reproducing this matrix (possibly several, possibly none).
    pub matches: Vec<FamilyMatch>,
}

/// Exhaustive classification of every Leibniz solution for one
/// `(field, n, t̄)` combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    /// The scalar field scanned.
    pub field: Field,
    /// Period.
    pub period: usize,
    /// Translation residue.
    pub t_res: Residue,
    /// Number of candidate matrices scanned (`p^(n²)`).
    pub candidates: u64,
    /// Every Leibniz solution, in enumeration order, with its matches.
    pub solutions: Vec<ClassifiedSolution>,
    /// Matrices of solutions no registered family reproduces.
    pub unmatched: Vec<Vec<Vec<String>>>,
}

/// Enumerates all Leibniz solutions over a prime field and matches each
/// against the registered families.
///
/// # Errors
///
/// Same conditions as [`enumerate_leibniz`] plus a missing family table.
pub fn classification_report(
    n: usize,
    t_res: Residue,
    field: Field,
    budget: u64,
) -> Result<ClassificationReport> {
    let families = registered_families(n, t_res, field)?;
    let matrices = enumerate_leibniz(n, t_res, field, budget)?;
    let candidates = candidate_count(n, field)? as u64;
    let solutions: Vec<ClassifiedSolution> = matrices
        .par_iter()
        .map(|matrix| ClassifiedSolution {
            alpha: matrix.rows_strings(),
            matches: families
                .iter()
                .filter_map(|family| match_family(family, matrix))
                .collect(),
        })
        .collect();
    let unmatched = solutions
        .iter()
        .filter(|solution| solution.matches.is_empty())
        .map(|solution| solution.alpha.clone())
        .collect();
    Ok(ClassificationReport {
        field,
        period: n,
        t_res,
        candidates,
        solutions,
        unmatched,
    })
}

// =======================================================================
// Named reference algebras
// =======================================================================

/// Helper: construction recipe for one named algebra. Cells are
/// `(row, col, coeff, param)`: the entry is `coeff` times the named
/// parameter, or the bare constant `coeff` when no parameter is given.
struct NamedSpec {
    name: &'static str,
    n: usize,
    t: i64,
    params: &'static [(&'static str, bool)],
    cells: &'static [(usize, usize, i64, Option<usize>)],
}

/// Helper: the named-algebra registry.
const NAMED_SPECS: &[NamedSpec] = &[
    NamedSpec {
        name: "L_1",
        n: 3,
        t: 0,
        params: &[("alpha", false), ("beta", false)],
        cells: &[(1, 0, 1, Some(0)), (2, 0, 1, Some(1))],
    },
    NamedSpec {
        name: "L_2",
        n: 3,
        t: 0,
        params: &[],
        cells: &[(2, 1, 1, None)],
    },
    NamedSpec {
        name: "L_3",
        n: 3,
        t: 0,
        params: &[("beta", false)],
        cells: &[(1, 2, 1, None), (2, 1, 1, Some(0))],
    },
    NamedSpec {
        name: "L_4",
        n: 3,
        t: 0,
        params: &[("beta", false)],
        cells: &[(0, 2, 1, None), (2, 0, -1, None), (1, 0, 1, Some(0))],
    },
    NamedSpec {
        name: "L_5",
        n: 3,
        t: 0,
        params: &[("beta", false)],
        cells: &[(0, 1, 1, None), (1, 0, -1, None), (2, 0, 1, Some(0))],
    },
    NamedSpec {
        name: "L_6",
        n: 3,
        t: 0,
        params: &[("beta", true)],
        cells: &[
            (0, 1, 1, None),
            (1, 0, -1, None),
            (0, 2, 1, Some(0)),
            (2, 0, -1, Some(0)),
        ],
    },
    NamedSpec {
        name: "L_7",
        n: 3,
        t: 0,
        params: &[],
        cells: &[
            (0, 1, 1, None),
            (1, 0, -1, None),
            (0, 2, -1, None),
            (2, 0, 1, None),
            (1, 2, 1, None),
            (2, 1, -1, None),
        ],
    },
    NamedSpec {
        name: "L_8",
        n: 3,
        t: 0,
        params: &[("alpha", false)],
        cells: &[(1, 2, 1, Some(0)), (2, 2, 1, None)],
    },
    NamedSpec {
        name: "L_9",
        n: 3,
        t: 0,
        params: &[],
        cells: &[
            (2, 0, 1, None),
            (0, 2, -1, None),
            (1, 0, 2, None),
            (2, 2, 1, None),
        ],
    },
    NamedSpec {
        name: "L_10",
        n: 3,
        t: 0,
        params: &[("beta", false)],
        cells: &[(1, 1, 1, None), (2, 1, 1, Some(0))],
    },
    NamedSpec {
        name: "L_11",
        n: 3,
        t: 0,
        params: &[],
        cells: &[
            (0, 1, 1, None),
            (1, 0, -1, None),
            (2, 0, -2, None),
            (1, 1, 1, None),
        ],
    },
    NamedSpec {
        name: "L_0b1",
        n: 2,
        t: 0,
        params: &[("alpha", false)],
        cells: &[(1, 0, 1, Some(0))],
    },
    NamedSpec {
        name: "L_0b2",
        n: 2,
        t: 0,
        params: &[],
        cells: &[(0, 1, -1, None), (1, 0, 1, None)],
    },
    NamedSpec {
        name: "L_0b3",
        n: 2,
        t: 0,
        params: &[],
        cells: &[(1, 1, 1, None)],
    },
    NamedSpec {
        name: "L_1b1",
        n: 2,
        t: 1,
        params: &[("alpha", false)],
        cells: &[(0, 1, 1, Some(0))],
    },
    NamedSpec {
        name: "L_1b2",
        n: 2,
        t: 1,
        params: &[],
        cells: &[(0, 1, -1, None), (1, 0, 1, None)],
    },
    NamedSpec {
        name: "L_1b3",
        n: 2,
        t: 1,
        params: &[],
        cells: &[(0, 0, 1, None)],
    },
];

/// Names of all registered reference algebras, in registry order.
#[must_use]
pub fn named_algebras() -> Vec<&'static str> {
    NAMED_SPECS.iter().map(|spec| spec.name).collect()
}

/// Constructs a named reference algebra over the requested field.
///
/// Omitted parameters default to 1; so `paper_algebra("L_1", …, {})` is
/// `L_1(1,1)`. Parameters are the greek letters from the algebra's
/// definition, spelled out (`"alpha"`, `"beta"`).
///
/// # Errors
///
/// Unknown names, unknown parameter keys, and violated nonzero
/// side-conditions are rejected.
pub fn paper_algebra(
    name: &str,
    field: Field,
    params: &BTreeMap<String, FieldElement>,
) -> Result<PeriodicAlgebra> {
    let spec = NAMED_SPECS
        .iter()
        .find(|spec| spec.name == name)
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
    for key in params.keys() {
        if !spec.params.iter().any(|(param, _)| param == key) {
            return Err(Error::ConstraintViolation(format!(
                "{name} has no parameter {key:?}; its parameters are {:?}",
                spec.params.iter().map(|(p, _)| *p).collect::<Vec<_>>()
            )));
        }
    }
    let mut values = Vec::with_capacity(spec.params.len());
    for (param, nonzero) in spec.params {
        let value = params
            .get(*param)
            .cloned()
            .unwrap_or_else(|| FieldElement::one(field));
        if value.field() != field {
            return Err(Error::FieldMismatch {
                expected: field,
                got: value.field(),
            });
        }
        if *nonzero && value.is_zero() {
            return Err(Error::ConstraintViolation(format!(
                "{name} requires {param} != 0"
            )));
        }
        values.push(value);
    }
    let mut matrix = StructureMatrix::zero(field, spec.n);
    for &(i, j, coeff, param) in spec.cells {
        let base = FieldElement::from_integer(field, coeff);
        let value = match param {
            Some(k) => base.mul(&values[k]),
            None => base,
        };
        matrix.set_entry(i, j, value)?;
    }
    Ok(PeriodicAlgebra::new(matrix, spec.t))
}

// =======================================================================
// Tests
// =======================================================================
