//! Bounded isomorphism search between periodic algebras.
//!
//! The search composes an index shift (forced by the translations), a
//! residue shift, and a scaling, then certifies any candidate on a window
//! of basis products. Failure to find a witness is not a proof of
//! distinctness — for that, compare invariant profiles. Run with:
//!
//! ```text
//! cargo run --example isomorphism_search
//! ```

use pak::analysis::fingerprint;
use pak::classify::paper_algebra;
use pak::transform::{homomorphism_on_window, isomorphism_search};
use pak::Field;
use std::collections::BTreeMap;

fn main() {
    let named = |name: &str| paper_algebra(name, Field::Q, &BTreeMap::new()).unwrap();

    // L_9 and L_11 look different but are isomorphic; the search finds an
    // explicit witness and the witness verifies on a window of products.
    let l9 = named("L_9");
    let l11 = named("L_11");
    let witness = isomorphism_search(&l9, &l11).unwrap().expect("L_9 ≅ L_11");
    println!("L_9 ≅ L_11 via {}", witness.to_json_string());
    assert!(homomorphism_on_window(&witness, &l9, &l11, 6).unwrap());

    // L_7 and L_9 have different invariant profiles, so no basis transform
    // of this shape (or any other) can connect them.
    let l7 = named("L_7");
    assert!(isomorphism_search(&l9, &l7).unwrap().is_none());
    let p9 = fingerprint(&l9).invariant_profile();
    let p7 = fingerprint(&l7).invariant_profile();
    println!("L_9 profile: {}", serde_json::to_string(&p9).unwrap());
    println!("L_7 profile: {}", serde_json::to_string(&p7).unwrap());
    assert_ne!(p9, p7, "profiles must differ: the pair is provably distinct");
}
