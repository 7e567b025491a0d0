//! Growth invariants of lattice operators.
//!
//! `H(T)` multiplies `1 + |λ|` over all eigenvalues; `H°(T)` is the height
//! of the characteristic polynomial, i.e. the minimum over irreducible
//! divisors, and is realized by an explicit invariant subspace.
//!
//! Run with: cargo run --example operator_invariants

use sumgrowth::heights::{h_circ_of_operator, h_of_operator, minimizing_invariant_subspace};
use sumgrowth::matrix::LatticeOperator;

fn main() {
    println!("=== Operator growth invariants ===\n");

    let cases = vec![
        ("diag(2,3)", LatticeOperator::diagonal(&[2, 3])),
        (
            "companion(x^2-2)",
            LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]),
        ),
        ("identity", LatticeOperator::identity(2)),
        ("-identity", LatticeOperator::diagonal(&[-1, -1])),
        (
            "rotation",
            LatticeOperator::from_rows_i64(&[&[0, -1], &[1, 0]]),
        ),
    ];
    for (name, t) in &cases {
        let h = h_of_operator(t).unwrap();
        let hc = h_circ_of_operator(t).unwrap();
        println!("{name}:");
        println!("  char poly = {}", t.char_poly());
        println!("  H(T)  = {}", h.render(10));
        println!("  H°(T) = {}", hc.render(10));
    }

    println!("\n=== Minimizing invariant subspace for diag(2,3) ===\n");
    let t = LatticeOperator::diagonal(&[2, 3]);
    let r = minimizing_invariant_subspace(&t).unwrap();
    println!("divisor achieving the minimum: {}", r.divisor);
    println!("height of the restriction: {}", r.height.render(10));
    println!("subspace dimension: {}", r.basis.len());
    for (i, v) in r.basis.iter().enumerate() {
        let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("  basis[{i}] = ({})", coords.join(", "));
    }
    // The restriction matrix in the cyclic basis is the companion of the
    // divisor; its characteristic polynomial recovers the divisor exactly.
    assert_eq!(r.restriction.char_poly().unwrap(), r.divisor);
    println!("char poly of restriction = {}", r.divisor);
}
