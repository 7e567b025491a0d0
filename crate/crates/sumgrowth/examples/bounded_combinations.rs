//! Bounded integer representations s·v = Σ s_j v_j.
//!
//! Given generators with entries bounded by C, any vector of their rational
//! span has an integer representation after scaling by some s with
//! |s| <= D(C,n) and |s_j| <= D(C,n)·max(1, |v|_inf); D is the Hadamard
//! bound on n×n minors and is published with every result.
//!
//! Run with: cargo run --example bounded_combinations

use num_bigint::BigInt;
use sumgrowth::gap::bounded_combination;
use sumgrowth::Error;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn show(v: &[i64], vs: &[&[i64]]) {
    let target = big(v);
    let gens: Vec<Vec<BigInt>> = vs.iter().map(|w| big(w)).collect();
    match bounded_combination(&target, &gens) {
        Ok(r) => {
            let coeffs: Vec<String> = r.coefficients.iter().map(ToString::to_string).collect();
            println!(
                "{v:?} over {vs:?}:\n  s = {}, coefficients = ({}), C = {}, D(C,n) = {}",
                r.scale,
                coeffs.join(", "),
                r.entry_bound,
                r.denominator_bound
            );
        }
        Err(Error::NotInSpan) => println!("{v:?} over {vs:?}: not in the span"),
        Err(e) => panic!("{e}"),
    }
}

fn main() {
    println!("=== Bounded combinations ===\n");
    show(&[5, 7], &[&[1, 0], &[0, 1]]);
    show(&[2, 2], &[&[1, 1]]);
    // denominators get cleared: (1,1) = (1/2)·(2,2)
    show(&[1, 1], &[&[2, 2], &[0, 3]]);
    // redundant generators are dropped by the greedy minimal-subset pass
    show(&[4, 2], &[&[2, 1], &[4, 2], &[1, 1]]);
    // and membership failures are reported, not fudged
    show(&[0, 0, 1], &[&[1, 0, 0], &[0, 1, 0]]);
}
