//! Shared helpers for the integration suites: named-algebra shortcuts,
//! enumeration wrappers, and the seeded property checks reused by both the
//! property suite and the acceptance gate.
#![allow(dead_code)]

use num_bigint::BigInt;
use pak::analysis::{
    annihilator_residues, center_residues, derived_series, element_right_nilpotent, fingerprint,
    lower_central_series, Fingerprint, ResidueSeries, Side,
};
use pak::classify::paper_algebra;
use pak::leibniz::{enumerate_leibniz, DEFAULT_ENUM_BUDGET};
use pak::sample::{random_element, random_index, random_matrix, rng_from_seed};
use pak::transform::{apply_residue_shift, scale, shift};
use pak::{Element, Field, FieldElement, PeriodicAlgebra, Residue};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

// =======================================================================
// Construction shortcuts
// =======================================================================

/// A named reference algebra over ℚ with default parameters.
pub fn named(name: &str) -> PeriodicAlgebra {
    paper_algebra(name, Field::Q, &BTreeMap::new()).unwrap()
}

/// A named reference algebra over ℚ with explicit parameters.
pub fn named_with(name: &str, params: &[(&str, &str)]) -> PeriodicAlgebra {
    let map = params
        .iter()
        .map(|(key, value)| {
            (
                (*key).to_string(),
                FieldElement::parse(Field::Q, value).unwrap(),
            )
        })
        .collect();
    paper_algebra(name, Field::Q, &map).unwrap()
}

/// Every Leibniz solution at `(n, t̄)` over a prime field, wrapped as an
/// algebra with translation `t = t̄`.
pub fn solutions(n: usize, t_res: Residue, field: Field) -> Vec<PeriodicAlgebra> {
    enumerate_leibniz(n, t_res, field, DEFAULT_ENUM_BUDGET)
        .unwrap()
        .into_iter()
        .map(|matrix| PeriodicAlgebra::new(matrix, t_res as i64))
        .collect()
}

/// The fields rotated through by the randomized checks.
pub fn sample_fields() -> Vec<Field> {
    vec![
        Field::Q,
        Field::fp(2).unwrap(),
        Field::fp(3).unwrap(),
        Field::fp(5).unwrap(),
    ]
}

/// Helper: rebuilds an element with every basis index offset by `delta`.
fn offset_indices(x: &Element, delta: i64) -> Element {
    let mut out = Element::zero();
    for (index, coeff) in x.iter() {
        out.add_term(index + BigInt::from(delta), coeff.clone());
    }
    out
}

// =======================================================================
// Seeded property checks (criterion-12 suite)
// =======================================================================

/// Grading: `e_a · e_b` is supported on exactly `a + b + t` (with the
/// structure constant as coefficient), and products of arbitrary elements
/// stay inside the graded components determined by their supports.
pub fn check_grading(seed: u64) {
    let mut rng = rng_from_seed(seed);
    let fields = sample_fields();
    for case in 0..200 {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(1..=4usize);
        let t = rng.gen_range(-5i64..=5);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), t);
        let a = random_index(&mut rng, 2 * n as i64);
        let b = random_index(&mut rng, 2 * n as i64);
        let product = alg.mul_basis(&a, &b);
        let expected_index = &a + &b + alg.t();
        for (index, coeff) in product.iter() {
            assert_eq!(index, &expected_index);
            assert!(!coeff.is_zero());
        }

        let x = random_element(&mut rng, field, 2 * n as i64, 3);
        let y = random_element(&mut rng, field, 2 * n as i64, 3);
        let t_big = alg.t().clone();
        let allowed: BTreeSet<BigInt> = x
            .iter()
            .flat_map(|(ix, _)| {
                let t_big = t_big.clone();
                y.iter().map(move |(iy, _)| ix + iy + t_big.clone())
            })
            .collect();
        for (index, _) in alg.mul_elem(&x, &y).iter() {
            assert!(allowed.contains(index), "stray graded component {index}");
        }
    }
}

/// Bilinearity: multiplication distributes over addition and commutes with
/// scalar rescaling in each argument.
pub fn check_bilinearity(seed: u64) {
    let mut rng = rng_from_seed(seed);
    let fields = sample_fields();
    for case in 0..150 {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(1..=3usize);
        let t = rng.gen_range(-3i64..=3);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), t);
        let window = 2 * n as i64;
        let x = random_element(&mut rng, field, window, 3);
        let x2 = random_element(&mut rng, field, window, 3);
        let y = random_element(&mut rng, field, window, 3);
        let c = pak::sample::random_field_element(&mut rng, field);

        assert_eq!(
            alg.mul_elem(&x.add(&x2), &y),
            alg.mul_elem(&x, &y).add(&alg.mul_elem(&x2, &y))
        );
        assert_eq!(
            alg.mul_elem(&y, &x.add(&x2)),
            alg.mul_elem(&y, &x).add(&alg.mul_elem(&y, &x2))
        );
        assert_eq!(alg.mul_elem(&x.scale(&c), &y), alg.mul_elem(&x, &y).scale(&c));
        assert_eq!(alg.mul_elem(&x, &y.scale(&c)), alg.mul_elem(&x, &y).scale(&c));
    }
}

/// Periodicity: shifting either factor by the period moves the product
/// index by the period without changing the coefficient.
pub fn check_periodicity(seed: u64) {
    let mut rng = rng_from_seed(seed);
    let fields = sample_fields();
    for case in 0..200 {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(1..=4usize);
        let t = rng.gen_range(-5i64..=5);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), t);
        let a = random_index(&mut rng, 3 * n as i64);
        let b = random_index(&mut rng, 3 * n as i64);
        let base = alg.mul_basis(&a, &b);
        let period = n as i64;
        assert_eq!(
            alg.mul_basis(&(&a + period), &b),
            offset_indices(&base, period)
        );
        assert_eq!(
            alg.mul_basis(&a, &(&b + period)),
            offset_indices(&base, period)
        );
    }
}

/// Helper: asserts that `shifted_set` is `base_set` relabeled residue-wise
/// by `map`.
fn assert_set_relabeled(
    base_set: &BTreeSet<Residue>,
    shifted_set: &BTreeSet<Residue>,
    map: impl Fn(Residue) -> Residue,
    context: &str,
) {
    let expected: BTreeSet<Residue> = base_set.iter().map(|&r| map(r)).collect();
    assert_eq!(&expected, shifted_set, "residue set mismatch: {context}");
}

/// Helper: the scalar (relabeling-independent) part of two fingerprints
/// must agree exactly.
fn assert_scalars_equal(a: &Fingerprint, b: &Fingerprint, context: &str) {
    assert_eq!(a.is_leibniz, b.is_leibniz, "{context}: is_leibniz");
    assert_eq!(a.is_lie, b.is_lie, "{context}: is_lie");
    assert_eq!(
        a.is_right_nilpotent, b.is_right_nilpotent,
        "{context}: is_right_nilpotent"
    );
    assert_eq!(a.solvable, b.solvable, "{context}: solvable");
    assert_eq!(
        a.solvability_index, b.solvability_index,
        "{context}: solvability_index"
    );
    assert_eq!(a.perfect, b.perfect, "{context}: perfect");
}

/// Transform invariance: integer shifts relabel fingerprint residue sets
/// by `−c̄`, residue shifts relabel them by the inverse permutation,
/// scalings leave the whole fingerprint untouched — and the invariant
/// profile survives every one of them.
pub fn check_transform_invariance(seed: u64) {
    let mut rng = rng_from_seed(seed);
    let f3 = Field::fp(3).unwrap();
    let mut pool = solutions(2, 0, f3);
    pool.extend(solutions(3, 0, f3).into_iter().take(40));
    let mut residue_shifts_applied = 0usize;

    for alg in &pool {
        let n = alg.period();
        let base = fingerprint(alg);
        let profile = base.invariant_profile();

        // Integer shift by a random c.
        let c = rng.gen_range(-5i64..=5);
        let c_res = (c.rem_euclid(n as i64)) as usize;
        let shifted = fingerprint(&shift(alg, c));
        assert_scalars_equal(&base, &shifted, "shift");
        let relabel = |r: Residue| (r + n - c_res) % n;
        assert_set_relabeled(
            &base.right_annihilator_residues,
            &shifted.right_annihilator_residues,
            relabel,
            "shift/right annihilator",
        );
        assert_set_relabeled(
            &base.left_annihilator_residues,
            &shifted.left_annihilator_residues,
            relabel,
            "shift/left annihilator",
        );
        assert_set_relabeled(
            &base.center_residues,
            &shifted.center_residues,
            relabel,
            "shift/center",
        );
        assert_set_relabeled(
            &base.square_residues,
            &shifted.square_residues,
            relabel,
            "shift/squares",
        );
        assert_eq!(profile, shifted.invariant_profile());

        // Scaling by random nonzero factors: nothing moves at all.
        let lambda: Vec<FieldElement> = (0..n)
            .map(|_| pak::sample::random_nonzero_field_element(&mut rng, f3))
            .collect();
        let scaled = scale(alg, &lambda).unwrap();
        assert_eq!(base, fingerprint(&scaled), "scaling must preserve the fingerprint");

        // Residue shifts: try a few candidate offset vectors; every one
        // that applies must relabel the sets by the inverse permutation.
        for _ in 0..12 {
            let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-2i64..=2)).collect();
            let Ok(moved) = apply_residue_shift(alg, &d) else {
                continue;
            };
            residue_shifts_applied += 1;
            let image: Vec<Residue> = (0..n)
                .map(|i| ((i as i64 + d[i]).rem_euclid(n as i64)) as usize)
                .collect();
            let moved_print = fingerprint(&moved);
            assert_scalars_equal(&base, &moved_print, "residue shift");
            // Residue r of the transformed algebra plays the role image[r]
            // played originally, so transformed sets are preimages.
            let preimage = |set: &BTreeSet<Residue>| -> BTreeSet<Residue> {
                (0..n).filter(|&r| set.contains(&image[r])).collect()
            };
            assert_eq!(
                preimage(&base.right_annihilator_residues),
                moved_print.right_annihilator_residues
            );
            assert_eq!(
                preimage(&base.left_annihilator_residues),
                moved_print.left_annihilator_residues
            );
            assert_eq!(preimage(&base.center_residues), moved_print.center_residues);
            assert_eq!(preimage(&base.square_residues), moved_print.square_residues);
            assert_eq!(profile, moved_print.invariant_profile());
        }
    }
    assert!(
        residue_shifts_applied > 10,
        "residue-shift invariance was vacuous ({residue_shifts_applied} applications)"
    );
}

/// Determinism: repeating an enumeration, a classification, or a
/// fingerprint computation yields byte-identical serialized reports.
pub fn check_report_determinism() {
    let f3 = Field::fp(3).unwrap();
    let f2 = Field::fp(2).unwrap();

    let first = pak::classify::classification_report(2, 1, f3, DEFAULT_ENUM_BUDGET).unwrap();
    let second = pak::classify::classification_report(2, 1, f3, DEFAULT_ENUM_BUDGET).unwrap();
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap()
    );

    let first = enumerate_leibniz(3, 0, f2, DEFAULT_ENUM_BUDGET).unwrap();
    let second = enumerate_leibniz(3, 0, f2, DEFAULT_ENUM_BUDGET).unwrap();
    assert_eq!(first, second);

    let l9 = named("L_9");
    assert_eq!(
        serde_json::to_string(&fingerprint(&l9)).unwrap(),
        serde_json::to_string(&fingerprint(&l9)).unwrap()
    );
}

// =======================================================================
// Element-level oracles
// =======================================================================

/// Compares a residue series against chained element products: stage `k`
/// must equal the residues reachable by nonzero products of `k` basis
/// vectors (left-nested for the lower central series, balanced-by-stage
/// for the derived series).
pub fn check_series_element_level(alg: &PeriodicAlgebra) {
    let n = alg.period();
    let field = alg.field();
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(field, i as i64)).collect();

    // Stage k of the lower central series ↔ left-nested chains of k
    // factors. Elements are deduplicated by support residue: products of
    // monomials are monomials, and only the residue steers further growth.
    let dedupe = |elements: Vec<Element>| -> Vec<Element> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for element in elements {
            if element.is_zero() {
                continue;
            }
            let (index, _) = element.iter().next().unwrap();
            let residue = pak::residue::residue_of(index, n).unwrap();
            if seen.insert(residue) {
                kept.push(element);
            }
        }
        kept
    };
    let residues_of = |elements: &[Element]| -> BTreeSet<Residue> {
        elements
            .iter()
            .map(|element| {
                let (index, _) = element.iter().next().unwrap();
                pak::residue::residue_of(index, n).unwrap()
            })
            .collect()
    };

    let lower = lower_central_series(alg);
    let mut chains = dedupe(basis.clone());
    for (offset, stage) in lower.stages.iter().enumerate() {
        assert_eq!(
            &residues_of(&chains),
            stage,
            "lower central stage {} disagrees with chained products",
            lower.first_index + offset
        );
        let mut next = Vec::new();
        for chain in &chains {
            for e in &basis {
                next.push(alg.mul_elem(chain, e));
            }
        }
        chains = dedupe(next);
    }

    let derived = derived_series(alg);
    let mut stage_elements = dedupe(basis);
    for (offset, stage) in derived.stages.iter().enumerate() {
        assert_eq!(
            &residues_of(&stage_elements),
            stage,
            "derived stage {} disagrees with element products",
            derived.first_index + offset
        );
        let mut next = Vec::new();
        for x in &stage_elements {
            for y in &stage_elements {
                next.push(alg.mul_elem(x, y));
            }
        }
        stage_elements = dedupe(next);
    }
}

/// Compares matrix-level annihilators and center against the element
/// definition on a window of basis products.
pub fn check_annihilators_element_level(alg: &PeriodicAlgebra, window: i64) {
    let n = alg.period() as i64;
    let right = annihilator_residues(alg, Side::Right);
    let left = annihilator_residues(alg, Side::Left);
    let center = center_residues(alg);
    for r in 0..alg.period() {
        let mut kills_as_right_factor = true;
        let mut kills_as_left_factor = true;
        for a in -window..=window {
            for b in -window..=window {
                if (b.rem_euclid(n)) as usize == r
                    && !alg.mul_basis(&a.into(), &b.into()).is_zero()
                {
                    kills_as_right_factor = false;
                }
                if (a.rem_euclid(n)) as usize == r
                    && !alg.mul_basis(&a.into(), &b.into()).is_zero()
                {
                    kills_as_left_factor = false;
                }
            }
        }
        assert_eq!(right.contains(&r), kills_as_right_factor, "right annihilator at {r}");
        assert_eq!(left.contains(&r), kills_as_left_factor, "left annihilator at {r}");
        assert_eq!(
            center.contains(&r),
            kills_as_right_factor && kills_as_left_factor,
            "center at {r}"
        );
    }
}

/// Compares the orbit-product nilpotency test against direct right-power
/// iteration (powers up to `n + 1`) for every residue `i ≠ 0` of each
/// sampled algebra.
pub fn check_element_nilpotency_agreement(seed: u64, cases: usize) {
    let mut rng = rng_from_seed(seed);
    let fields = sample_fields();
    for case in 0..cases {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(2..=4usize);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), 0);
        for i in 1..n {
            let verdict = element_right_nilpotent(&alg, i).unwrap();
            let e_i = Element::basis(field, i as i64);
            let mut power = e_i.clone();
            let mut iterated = false;
            for _ in 0..n {
                power = alg.mul_elem(&power, &e_i);
                if power.is_zero() {
                    iterated = true;
                    break;
                }
            }
            assert_eq!(
                verdict, iterated,
                "orbit test vs right-power iteration at n={n}, i={i}"
            );
        }
    }
}

/// Element-level Lie test on a window: alternating squares and
/// anticommutativity on all basis pairs.
pub fn element_level_is_lie(alg: &PeriodicAlgebra, window: i64) -> bool {
    for a in -window..=window {
        if !alg.mul_basis(&a.into(), &a.into()).is_zero() {
            return false;
        }
        for b in -window..=window {
            let ab = alg.mul_basis(&a.into(), &b.into());
            let ba = alg.mul_basis(&b.into(), &a.into());
            if ab != ba.neg() {
                return false;
            }
        }
    }
    true
}

/// The Jacobi identity on a window of basis triples, for algebras that are
/// both Lie and Leibniz.
pub fn check_jacobi_on_window(alg: &PeriodicAlgebra, window: i64) {
    for a in -window..=window {
        for b in -window..=window {
            for c in -window..=window {
                let x = Element::basis(alg.field(), a);
                let y = Element::basis(alg.field(), b);
                let z = Element::basis(alg.field(), c);
                let j = alg
                    .mul_elem(&alg.mul_elem(&x, &y), &z)
                    .add(&alg.mul_elem(&alg.mul_elem(&y, &z), &x))
                    .add(&alg.mul_elem(&alg.mul_elem(&z, &x), &y));
                assert!(j.is_zero(), "Jacobi fails at ({a}, {b}, {c})");
            }
        }
    }
}

/// Helper: the derived series of an algebra, exposed for acceptance
/// summaries.
pub fn derived_index(alg: &PeriodicAlgebra) -> Option<usize> {
    derived_series(alg).index
}

/// Helper: the lower central series, exposed for acceptance summaries.
pub fn lower_series(alg: &PeriodicAlgebra) -> ResidueSeries {
    lower_central_series(alg)
}
