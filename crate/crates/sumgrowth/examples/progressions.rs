//! Generalized arithmetic progressions and properness certificates.
//!
//! Run with: cargo run --example progressions

use num_bigint::BigInt;
use sumgrowth::gap::Gap;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn main() {
    println!("=== Expansion ===\n");

    // centered progression on the line: generator 1, bound 2
    let p = Gap::centered(1, vec![big(&[1])], vec![2]).unwrap();
    let s = p.expand(1, 10_000).unwrap();
    println!("centered <1; L=2>: 1★P has {} points (-2..2)", s.len());

    // offset progression with generators 3 and 1
    let p = Gap::offset(big(&[0]), vec![big(&[3]), big(&[1])], vec![2, 2]).unwrap();
    for k in 1..=3u64 {
        let s = p.expand(k, 10_000).unwrap();
        println!(
            "offset <3,1; L=(2,2)>: {k}·P has {} points of {} coefficient tuples",
            s.len(),
            p.tuple_count(k)
        );
    }

    println!("\n=== Properness certificates ===\n");
    for k in 1..=3u64 {
        let cert = p.is_k_proper(k, 10_000).unwrap();
        match &cert.collision {
            None => println!("{k}-proper: yes"),
            Some((later, earlier)) => {
                println!("{k}-proper: no; first collision {later:?} = {earlier:?}");
            }
        }
    }

    // two-dimensional, comfortably proper: independent directions
    let p = Gap::centered(2, vec![big(&[1, 0]), big(&[0, 1])], vec![3, 3]).unwrap();
    let cert = p.is_k_proper(4, 1_000_000).unwrap();
    println!(
        "\nunit directions in the plane: 4-proper = {} ({} points)",
        cert.proper,
        p.expand(4, 1_000_000).unwrap().len()
    );

    // a centered progression equals an offset one on the same point set
    let p = Gap::centered(1, vec![big(&[3]), big(&[1])], vec![1, 2]).unwrap();
    let q = p.as_offset();
    assert_eq!(p.expand(1, 10_000).unwrap(), q.expand(1, 10_000).unwrap());
    println!("\ncentered and offset views agree as sets; so do their verdicts:");
    for k in 1..=3u64 {
        println!(
            "  k = {k}: centered {} / offset {}",
            p.is_k_proper(k, 100_000).unwrap().proper,
            q.is_k_proper(k, 100_000).unwrap().proper
        );
    }
}
