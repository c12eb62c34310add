//! Matching enumerated solutions against the built-in family tables.
//!
//! Every period-2 and period-3 (translation residue 0) Leibniz solution
//! over a prime field is an instance of a registered parametric family;
//! degenerate parameter values are reported as relaxed matches. Run with:
//!
//! ```text
//! cargo run --example classify_families
//! ```

use pak::classify::{classification_report, family_match, paper_algebra};
use pak::leibniz::DEFAULT_ENUM_BUDGET;
use pak::Field;
use std::collections::BTreeMap;

fn main() {
    let f2 = Field::fp(2).unwrap();

    // Classify everything at period 3, translation residue 0, over 𝔽_2.
    let report = classification_report(3, 0, f2, DEFAULT_ENUM_BUDGET).unwrap();
    println!(
        "n=3, t̄=0 over 𝔽_2: {} solutions, {} unmatched",
        report.solutions.len(),
        report.unmatched.len()
    );
    assert!(report.unmatched.is_empty());
    for solution in report.solutions.iter().take(6) {
        let labels: Vec<String> = solution
            .matches
            .iter()
            .map(|m| {
                format!(
                    "{}{}",
                    m.family,
                    if m.strict { "" } else { " (relaxed)" }
                )
            })
            .collect();
        println!("  {:?} ↦ {}", solution.alpha, labels.join(", "));
    }
    println!("  …");

    // Named reference algebras instantiate the families directly.
    let l9 = paper_algebra("L_9", Field::Q, &BTreeMap::new()).unwrap();
    let matches = family_match(l9.matrix(), l9.t_residue()).unwrap();
    for m in &matches {
        let params: Vec<String> = m
            .params
            .iter()
            .map(|(name, value)| format!("{name}={value}"))
            .collect();
        println!(
            "L_9 matches {} with {} ({})",
            m.family,
            params.join(", "),
            if m.strict { "strict" } else { "relaxed" }
        );
    }
    assert!(matches.iter().any(|m| m.family == "A_9" && m.strict));
}
