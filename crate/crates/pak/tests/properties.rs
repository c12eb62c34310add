//! Seeded randomized property suites for the core algebra operations,
//! transforms, and reports. Every suite runs from a fixed seed, so failures
//! reproduce exactly.

mod common;

use pak::analysis::is_lie;
use pak::leibniz::is_leibniz;
use pak::sample::{
    random_index, random_matrix, random_nonzero_field_element, rng_from_seed, DEFAULT_SEED,
};
use pak::transform::{inflate, scale, shift};
use pak::{Field, FieldElement, PeriodicAlgebra};
use rand::Rng;

#[test]
fn products_respect_the_grading() {
    common::check_grading(DEFAULT_SEED);
}

#[test]
fn multiplication_is_bilinear() {
    common::check_bilinearity(DEFAULT_SEED ^ 0x01);
}

#[test]
fn structure_constants_are_periodic() {
    common::check_periodicity(DEFAULT_SEED ^ 0x02);
}

#[test]
fn fingerprints_are_transform_invariant() {
    common::check_transform_invariance(DEFAULT_SEED ^ 0x03);
}

#[test]
fn reports_are_deterministic() {
    common::check_report_determinism();
}

#[test]
fn orbit_nilpotency_matches_right_power_iteration() {
    common::check_element_nilpotency_agreement(DEFAULT_SEED ^ 0x04, 200);
}

#[test]
fn residue_series_match_chained_element_products() {
    let f3 = Field::fp(3).unwrap();
    for t_res in 0..2 {
        for alg in common::solutions(2, t_res, f3) {
            common::check_series_element_level(&alg);
        }
    }
    for alg in common::solutions(3, 0, f3).into_iter().take(30) {
        common::check_series_element_level(&alg);
    }
    for name in ["L_1", "L_7", "L_8", "L_9", "L_11"] {
        common::check_series_element_level(&common::named(name));
    }
}

#[test]
fn annihilators_match_window_products() {
    for name in ["L_2", "L_6", "L_7", "L_8", "L_9"] {
        let alg = common::named(name);
        common::check_annihilators_element_level(&alg, 2 * alg.period() as i64);
    }
}

#[test]
fn lie_leibniz_algebras_satisfy_jacobi() {
    let f3 = Field::fp(3).unwrap();
    let mut checked = 0usize;
    for alg in common::solutions(3, 0, f3) {
        if is_lie(&alg) {
            common::check_jacobi_on_window(&alg, 3);
            checked += 1;
        }
    }
    for name in ["L_6", "L_7"] {
        let alg = common::named(name);
        assert!(is_lie(&alg) && is_leibniz(&alg));
        common::check_jacobi_on_window(&alg, 3);
        checked += 1;
    }
    assert!(checked >= 3, "Jacobi suite was nearly vacuous ({checked} algebras)");
}

#[test]
fn scalings_preserve_the_solution_set() {
    let f3 = Field::fp(3).unwrap();
    let mut rng = rng_from_seed(DEFAULT_SEED ^ 0x05);
    for alg in common::solutions(2, 0, f3) {
        for _ in 0..5 {
            let lambda: Vec<FieldElement> = (0..alg.period())
                .map(|_| random_nonzero_field_element(&mut rng, f3))
                .collect();
            let scaled = scale(&alg, &lambda).unwrap();
            assert!(is_leibniz(&scaled), "scaling broke a Leibniz solution");
        }
    }
}

#[test]
fn shifts_and_scalings_invert() {
    let mut rng = rng_from_seed(DEFAULT_SEED ^ 0x06);
    let fields = common::sample_fields();
    for case in 0..60 {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(1..=4usize);
        let t = rng.gen_range(-4i64..=4);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), t);

        let c = rng.gen_range(-6i64..=6);
        assert_eq!(shift(&shift(&alg, c), -c), alg);

        let lambda: Vec<FieldElement> = (0..n)
            .map(|_| random_nonzero_field_element(&mut rng, field))
            .collect();
        let inverse: Vec<FieldElement> = lambda.iter().map(|l| l.inv().unwrap()).collect();
        assert_eq!(scale(&scale(&alg, &lambda).unwrap(), &inverse).unwrap(), alg);
    }
}

#[test]
fn inflations_compose() {
    let mut rng = rng_from_seed(DEFAULT_SEED ^ 0x07);
    let fields = common::sample_fields();
    for case in 0..40 {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(1..=3usize);
        let t = rng.gen_range(-3i64..=3);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), t);
        let once_then_again = inflate(&inflate(&alg, 2).unwrap(), 3).unwrap();
        assert_eq!(once_then_again, inflate(&alg, 6).unwrap());
    }
}

#[test]
fn balanced_products_match_the_closed_form() {
    let mut rng = rng_from_seed(DEFAULT_SEED ^ 0x08);
    let fields = common::sample_fields();
    for case in 0..300 {
        let field = fields[case % fields.len()];
        let n = rng.gen_range(1..=4usize);
        let t = rng.gen_range(-3i64..=3);
        let alg = PeriodicAlgebra::new(random_matrix(&mut rng, field, n), t);
        let r = rng.gen_range(1..=3u32);
        let indices: Vec<_> = (0..1usize << r)
            .map(|_| random_index(&mut rng, 2 * n as i64))
            .collect();
        assert_eq!(
            alg.balanced_product(&indices).unwrap(),
            alg.closed_form_balanced(&indices).unwrap(),
            "balanced product disagrees with closed form at n={n}, t={t}, r={r}"
        );
    }
}
