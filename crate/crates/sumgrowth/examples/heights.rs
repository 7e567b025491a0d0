//! Heights of integer polynomials.
//!
//! `H(g)` multiplies `|a| + |b|` over the complex linear factors `ax + b`
//! of an irreducible polynomial; for a general polynomial `H(f)` is the
//! minimum over its irreducible integer divisors. Values are certified
//! interval enclosures.
//!
//! Run with: cargo run --example heights

use sumgrowth::heights::{height_irreducible, height_poly};
use sumgrowth::poly::IntPolynomial;
use sumgrowth::Error;

fn main() {
    println!("=== Heights of integer polynomials ===\n");

    // rational targets: H(x-2) = 1 + 2, H(2x-3) = 2 + 3
    for s in ["x-2", "2*x-3"] {
        let f: IntPolynomial = s.parse().unwrap();
        let h = height_irreducible(&f).unwrap();
        println!("H({f}) = {}", h.render(10));
    }

    // an irrational height: H(x^2-2) = (1 + sqrt(2))^2 = 3 + 2*sqrt(2)
    let f: IntPolynomial = "x^2-2".parse().unwrap();
    let h = height_irreducible(&f).unwrap();
    println!("H({f}) = {}   (= 3 + 2*sqrt(2))", h.render(10));

    // reducible input: the minimum over divisors wins
    let f: IntPolynomial = "x^2-5*x+6".parse().unwrap();
    let h = height_poly(&f).unwrap();
    println!("H({f}) = {}   (min of H(x-2)=3, H(x-3)=4)", h.render(10));

    // higher degree, tighter tolerance on demand
    let f: IntPolynomial = "x^3-x-1".parse().unwrap();
    let h = sumgrowth::heights::height_poly_tol(&f, 1e-12).unwrap();
    println!("H({f}) = {}", h.render(12));

    // constants have no nonconstant integer divisors
    match height_poly(&"5".parse().unwrap()) {
        Err(Error::InfiniteHeight(msg)) => println!("\nH(5) is infinite: {msg}"),
        other => panic!("unexpected: {other:?}"),
    }
}
