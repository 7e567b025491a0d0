//! Structural decomposition of dense subsets of a box.
//!
//! A set of density ε in [0,N)^d is refined through levels B = δ^(-l) until
//! the occupied volume stabilizes; the cells kept are those whose subcells
//! are all occupied, so the retained subset is topologically δ-dense in
//! each of them and loses at most a δ-fraction of points.
//!
//! Run with: cargo run --example dense_decomposition

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use sumgrowth::decompose::{is_delta_dense, structural_decompose};
use sumgrowth::points::PointSet;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    let n = 64u64;
    let eps = rat(1, 10);
    let delta = rat(1, 4);

    println!("=== Random dense set in [0,64)^2, ε = 1/10, δ = 1/4 ===\n");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut all: Vec<Vec<i64>> = (0..n as i64)
        .flat_map(|x| (0..n as i64).map(move |y| vec![x, y]))
        .collect();
    all.shuffle(&mut rng);
    let a = PointSet::from_i64_rows(2, &all[..410]).unwrap();

    let r = structural_decompose(&a, n, &eps, &delta).unwrap();
    println!("|A| = {}", a.len());
    println!("stopping level = {}, refinement B = {}", r.level, r.refinement);
    println!(
        "cells = {} of side {}, retained |A'| = {}",
        r.cells.len(),
        r.cells.first().map_or(0, |c| c.side),
        r.a_prime.len()
    );
    println!(
        "retention: {:.1}% (guaranteed >= {:.0}%)",
        100.0 * r.a_prime.len() as f64 / a.len() as f64,
        100.0 * 0.75
    );
    for cell in &r.cells {
        assert!(is_delta_dense(&r.a_prime, cell, &delta).unwrap());
    }
    println!("every returned cell verified δ-dense");

    println!("\n=== A set concentrated in a corner descends a level ===\n");
    let corner = PointSet::box_nd(2, 0, 3); // [0,4)^2 inside [0,16)^2
    let r = structural_decompose(&corner, 16, &rat(1, 16), &rat(1, 4)).unwrap();
    println!(
        "level = {}, B = {}, cells = {:?}",
        r.level,
        r.refinement,
        r.cells.iter().map(|c| (c.corner.clone(), c.side)).collect::<Vec<_>>()
    );
    assert_eq!(r.a_prime, corner);

    // δ must be a unit fraction and N a power of 1/δ
    assert!(structural_decompose(&corner, 16, &rat(1, 16), &rat(3, 10)).is_err());
    assert!(structural_decompose(&corner, 12, &rat(1, 16), &rat(1, 4)).is_err());
    println!("\nmalformed δ or N are rejected up front");
}
