//! Constructing a periodic algebra and multiplying elements.
//!
//! The algebra lives on the basis `{e_a : a ∈ ℤ}` with
//! `e_a · e_b = α_{ā,b̄} · e_{a+b+t}`, so an `n × n` matrix and a
//! translation determine every product. Run with:
//!
//! ```text
//! cargo run --example multiplication
//! ```

use num_bigint::BigInt;
use pak::{Element, Field, FieldElement, PeriodicAlgebra, StructureMatrix};

fn main() {
    // Period 2, translation 0: e_a e_b = ±e_{a+b}, sign fixed by residues.
    let matrix =
        StructureMatrix::from_integer_rows(Field::Q, &[&[0, -1], &[1, 0]]).unwrap();
    let alg = PeriodicAlgebra::new(matrix.clone(), 0);
    println!("algebra document: {}", alg.to_json_string());

    for (a, b) in [(0i64, 1i64), (3, -2), (-1, -1)] {
        let product = alg.mul_basis(&a.into(), &b.into());
        println!("e_({a}) * e_({b}) = {product}");
    }

    // Elements are finite sums with exact coefficients; multiplication is
    // bilinear and zero terms are pruned automatically.
    let half = FieldElement::parse(Field::Q, "1/2").unwrap();
    let mut x = Element::basis(Field::Q, 0);
    x.add_term(BigInt::from(5), half);
    let y = Element::basis(Field::Q, 1);
    println!("({x}) * ({y}) = {}", alg.mul_elem(&x, &y));

    // Basis indices are arbitrary-precision: a translation far beyond
    // machine range shifts products without any reduction of t itself.
    let t = BigInt::from(10u8).pow(30);
    let far = PeriodicAlgebra::new(matrix, t.clone());
    let product = far.mul_basis(&1.into(), &0.into());
    println!("with t = 10^30: e_1 * e_0 = {product}");
    assert_eq!(product, Element::single(BigInt::from(1) + t, FieldElement::one(Field::Q)));
}
