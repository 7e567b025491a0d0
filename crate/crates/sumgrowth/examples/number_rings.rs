//! Sumsets `A + λA` inside the ring generated by an algebraic integer.
//!
//! Points are coordinate vectors in the power basis `1, λ, ..., λ^(d-1)`;
//! multiplication by λ is the companion matrix of the minimal polynomial,
//! so ring sumsets reduce to lattice sumsets.
//!
//! Run with: cargo run --example number_rings

use sumgrowth::points::PointSet;
use sumgrowth::sumset::{ring_sumset, NumberRingContext};

fn main() {
    println!("=== Sumsets in number rings ===\n");

    // λ = 2: the ring is Z itself
    let ctx = NumberRingContext::new("x-2".parse().unwrap()).unwrap();
    let a = PointSet::range_1d(0, 1);
    let s = ring_sumset(&a, &ctx).unwrap();
    println!("λ = 2, A = {{0, 1}}: |A + λA| = {} (elements 0..3)", s.len());

    // λ = sqrt(2): coordinates (a, b) encode a + b·sqrt(2)
    let ctx = NumberRingContext::new("x^2-2".parse().unwrap()).unwrap();
    println!("\nλ = sqrt(2), companion matrix:");
    print!("{}", ctx.companion());

    let a = PointSet::from_i64_rows(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    let s = ring_sumset(&a, &ctx).unwrap();
    println!("A = {{0, 1, sqrt(2)}}: |A + λA| = {} of 9 formal sums", s.len());
    println!("(the collision: 0 + λ·1 = sqrt(2) + λ·0)");

    // a full box in the power basis: {0,1,2} + {0,1,2}·sqrt(2)
    let a = PointSet::box_nd(2, 0, 2);
    let s = ring_sumset(&a, &ctx).unwrap();
    println!("A = {{0,1,2}} ⊕ {{0,1,2}}·sqrt(2): |A + λA| = {}", s.len());

    // λ the plastic number: minimal polynomial x^3 - x - 1
    let ctx = NumberRingContext::new("x^3-x-1".parse().unwrap()).unwrap();
    let a = PointSet::box_nd(3, 0, 1);
    let s = ring_sumset(&a, &ctx).unwrap();
    println!(
        "\nλ = plastic number (x^3-x-1), A = {{0,1}}^3 in the power basis: |A + λA| = {}",
        s.len()
    );

    // rejected contexts: reducible or non-monic minimal polynomials
    assert!(NumberRingContext::new("x^2-1".parse().unwrap()).is_err());
    assert!(NumberRingContext::new("2*x-3".parse().unwrap()).is_err());
    println!("\nreducible and non-monic polynomials are rejected as ring generators");
}
