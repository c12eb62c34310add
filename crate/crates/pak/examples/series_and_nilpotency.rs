//! Residue series, nilpotency certificates, and solvability checks.
//!
//! For periodic algebras the lower central and derived series reduce to
//! exact recursions on subsets of residues, so termination questions have
//! finite answers. Run with:
//!
//! ```text
//! cargo run --example series_and_nilpotency
//! ```

use pak::analysis::{
    derived_series, element_right_nilpotent, lower_central_series, right_nilpotency_check,
    solvability_via_f1, DEFAULT_TUPLE_BUDGET,
};
use pak::classify::paper_algebra;
use pak::Field;
use std::collections::BTreeMap;

fn main() {
    let named = |name: &str| paper_algebra(name, Field::Q, &BTreeMap::new()).unwrap();

    // L_8 is right nilpotent: its lower central series dies out.
    let l8 = named("L_8");
    let series = lower_central_series(&l8);
    for (offset, stage) in series.stages.iter().enumerate() {
        println!("L_8 lower central S_{} = {:?}", series.first_index + offset, stage);
    }
    assert!(series.terminated);
    assert!(right_nilpotency_check(&l8).unwrap());

    // L_7 is perfect: both series stabilize at the full residue set, and
    // the stabilized stage stays visible in the report.
    let l7 = named("L_7");
    let series = derived_series(&l7);
    println!(
        "L_7 derived series stages: {:?} (terminated: {})",
        series.stages, series.terminated
    );
    assert!(!series.terminated);
    assert!(!right_nilpotency_check(&l7).unwrap());

    // L_9 is solvable with index 3, certified two independent ways: the
    // derived recursion, and the closed-form scan over balanced products.
    let l9 = named("L_9");
    let series = derived_series(&l9);
    println!("L_9 derived index: {:?}", series.index);
    assert_eq!(series.index, Some(3));
    assert!(solvability_via_f1(&l9, 3, DEFAULT_TUPLE_BUDGET).unwrap());
    assert!(!solvability_via_f1(&l9, 2, DEFAULT_TUPLE_BUDGET).unwrap());

    // Single basis classes can be tested for right nilpotency by a column
    // product along the orbit of the residue.
    let l2 = named("L_2");
    for i in 1..3 {
        println!(
            "L_2: e_{i} right nilpotent? {}",
            element_right_nilpotent(&l2, i).unwrap()
        );
    }
}
