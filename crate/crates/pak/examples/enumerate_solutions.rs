//! Exhaustive enumeration of Leibniz structure matrices over prime fields.
//!
//! `enumerate_leibniz` walks all `p^(n²)` candidate matrices and keeps the
//! ones whose residue system satisfies the Leibniz identity, in
//! lexicographic order (row-major, earliest cell most significant). Run
//! with:
//!
//! ```text
//! cargo run --example enumerate_solutions
//! ```

use pak::leibniz::{candidate_count, enumerate_leibniz, DEFAULT_ENUM_BUDGET};
use pak::Field;

fn main() {
    let f2 = Field::fp(2).unwrap();

    // Period 2, translation residue 0: exactly four solutions.
    let solutions = enumerate_leibniz(2, 0, f2, DEFAULT_ENUM_BUDGET).unwrap();
    println!(
        "n=2, t̄=0 over 𝔽_2: {} solutions among {} candidates",
        solutions.len(),
        candidate_count(2, f2).unwrap()
    );
    for matrix in &solutions {
        println!("  {:?}", matrix.rows_strings());
    }
    assert_eq!(solutions.len(), 4);

    // Period 3 scans 512 candidates in well under a second.
    let solutions = enumerate_leibniz(3, 0, f2, DEFAULT_ENUM_BUDGET).unwrap();
    println!("n=3, t̄=0 over 𝔽_2: {} solutions", solutions.len());

    // Enumeration refuses oversized scans instead of running forever: the
    // error names the exact number of candidates the scan would need.
    let refused = enumerate_leibniz(2, 0, f2, 10);
    println!("with budget 10: {}", refused.unwrap_err());
}
