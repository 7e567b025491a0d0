//! Exhaustive minima of |A + TA| over all n-subsets of a box.
//!
//! The counter inside the search is a plain quadratic recount, independent
//! of the production kernel, so these minima double as an oracle for it.
//!
//! Run with: cargo run --release --example brute_force_minima

use sumgrowth::matrix::LatticeOperator;
use sumgrowth::points::PointSet;
use sumgrowth::sumset::brute_force_min;

fn main() {
    println!("=== min |A + 2A| over n-subsets of {{0..9}} ===\n");
    let t = LatticeOperator::from_rows_i64(&[&[2]]);
    let box_set = PointSet::range_1d(0, 9);
    println!("{:>3} {:>8} {:>20}", "n", "min", "witness");
    for n in 1..=6 {
        let (min_size, witness) = brute_force_min(n, &box_set, &t, 1_000_000).unwrap();
        let pts: Vec<String> = witness.iter().map(|p| p[0].to_string()).collect();
        println!("{n:>3} {min_size:>8} {:>20}", format!("{{{}}}", pts.join(",")));
    }
    println!("(for T = [2] the minimum 3n-2 is achieved by intervals)");

    println!("\n=== min over pairs in a 2-d box with T = companion(x^2-2) ===\n");
    let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
    let box_set = PointSet::box_nd(2, 0, 2);
    for n in [2usize, 3, 4] {
        let (min_size, witness) = brute_force_min(n, &box_set, &t, 1_000_000).unwrap();
        let pts: Vec<String> = witness
            .iter()
            .map(|p| format!("({},{})", p[0], p[1]))
            .collect();
        println!("n = {n}: min = {min_size}, witness {}", pts.join(" "));
    }

    // the budget guard refuses combinatorial explosions
    let big_box = PointSet::range_1d(0, 40);
    match brute_force_min(12, &big_box, &LatticeOperator::from_rows_i64(&[&[2]]), 10_000) {
        Err(sumgrowth::Error::BudgetExceeded(msg)) => {
            println!("\nbudget guard: {msg}");
        }
        other => panic!("unexpected: {other:?}"),
    }
}
