//! Cross-checking the closed form for balanced products.
//!
//! A balanced product pairs `2^r` basis vectors recursively:
//! `⟨x⟩ = x`, `⟨x_1 … x_{2^k}⟩ = ⟨x_1 … x_{2^{k-1}}⟩ · ⟨x_{2^{k-1}+1} … x_{2^k}⟩`.
//! Its coefficient has a closed form in the structure constants, which this
//! example verifies against the recursive multiplication on seeded random
//! inputs. Run with:
//!
//! ```text
//! cargo run --example balanced_oracle
//! ```

use num_bigint::BigInt;
use pak::sample::{random_index, random_matrix, rng_from_seed, DEFAULT_SEED};
use pak::{Field, PeriodicAlgebra};
use rand::Rng;

fn main() {
    let f5 = Field::fp(5).unwrap();

    // One explicit case first: four factors over 𝔽_5.
    let mut rng = rng_from_seed(DEFAULT_SEED);
    let alg = PeriodicAlgebra::new(random_matrix(&mut rng, f5, 3), 1);
    let indices: Vec<BigInt> = vec![2.into(), (-1).into(), 0.into(), 4.into()];
    let recursive = alg.balanced_product(&indices).unwrap();
    let closed = alg.closed_form_balanced(&indices).unwrap();
    println!("recursive   ⟨e_2 e_-1 e_0 e_4⟩ = {recursive}");
    println!("closed form ⟨e_2 e_-1 e_0 e_4⟩ = {closed}");
    assert_eq!(recursive, closed);

    // Then a seeded sweep across depths r = 1, 2, 3 and periods up to 4.
    let mut checked = 0usize;
    for n in 1..=4 {
        for r in 1..=3u32 {
            for _ in 0..100 {
                let alg = PeriodicAlgebra::new(
                    random_matrix(&mut rng, f5, n),
                    rng.gen_range(-3i64..=3),
                );
                let indices: Vec<BigInt> = (0..1usize << r)
                    .map(|_| random_index(&mut rng, 2 * n as i64))
                    .collect();
                assert_eq!(
                    alg.balanced_product(&indices).unwrap(),
                    alg.closed_form_balanced(&indices).unwrap(),
                    "mismatch at n={n}, r={r}, indices {indices:?}"
                );
                checked += 1;
            }
        }
    }
    println!("closed form agreed with recursion on {checked} seeded cases");
}
