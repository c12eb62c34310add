//! The basis-transformation gallery: shifts, residue shifts, scalings,
//! and inflations.
//!
//! Each transform produces a new periodic algebra isomorphic to the input
//! (inflation changes only the presentation period). Run with:
//!
//! ```text
//! cargo run --example transform_gallery
//! ```

use pak::classify::paper_algebra;
use pak::field::FieldElement;
use pak::leibniz::is_leibniz;
use pak::transform::{apply_residue_shift, inflate, is_inflation_of, normalize_alpha00, scale, shift};
use pak::{Field, PeriodicAlgebra, StructureMatrix};
use std::collections::BTreeMap;

fn main() {
    // A residue shift turns L_8(5) into L_10(5): same algebra, relabeled
    // basis enumeration.
    let five = FieldElement::parse(Field::Q, "5").unwrap();
    let l8 = paper_algebra(
        "L_8",
        Field::Q,
        &BTreeMap::from([("alpha".to_string(), five.clone())]),
    )
    .unwrap();
    let shifted = apply_residue_shift(&l8, &[3, 1, 2]).unwrap();
    println!("L_8(5) under d = (3,1,2): {:?}", shifted.matrix().rows_strings());
    let l10 = paper_algebra(
        "L_10",
        Field::Q,
        &BTreeMap::from([("beta".to_string(), five)]),
    )
    .unwrap();
    assert_eq!(shifted.matrix(), l10.matrix());

    // Scaling rescales entries by λ_i λ_j / λ_{i+j+t̄} without moving the
    // zero pattern.
    let half = FieldElement::parse(Field::Q, "1/2").unwrap();
    let one = FieldElement::one(Field::Q);
    let matrix = StructureMatrix::from_integer_rows(Field::Q, &[&[0, 0], &[2, 0]]).unwrap();
    let alg = PeriodicAlgebra::new(matrix, 0);
    let scaled = scale(&alg, &[half, one]).unwrap();
    println!("scaled entries: {:?}", scaled.matrix().rows_strings());
    assert_eq!(scaled.matrix().entry(1, 0), &FieldElement::one(Field::Q));

    // Inflation views a period-n algebra at period n·m; the Leibniz
    // property and the block structure survive, and compositions compose.
    let inflated = inflate(&alg, 3).unwrap();
    println!(
        "inflated to period {}: leibniz still holds: {}",
        inflated.period(),
        is_leibniz(&inflated)
    );
    assert!(is_inflation_of(&inflated, 2).unwrap());
    assert_eq!(
        inflate(&inflate(&alg, 2).unwrap(), 3).unwrap(),
        inflate(&alg, 6).unwrap()
    );

    // An integer shift re-places the whole basis; it is the normalization
    // tool that clears α_{00} whenever some diagonal entry vanishes.
    let corner = StructureMatrix::from_integer_rows(Field::Q, &[&[1, 0], &[0, 0]]).unwrap();
    let alg = PeriodicAlgebra::new(corner, 1);
    let (normalized, transform) = normalize_alpha00(&alg).unwrap();
    println!(
        "normalized α: {:?}, t = {}, via {}",
        normalized.matrix().rows_strings(),
        normalized.t(),
        transform.to_json_string()
    );
    assert!(normalized.alpha(0, 0).is_zero());
    assert_eq!(shift(&alg, 1), normalized);
}
