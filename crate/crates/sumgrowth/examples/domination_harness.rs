//! Grid-function evidence for the weighted continuous inequality: whenever
//! h(x + Ty) >= f(x) holds pointwise, the integral of h is at least H(T)
//! times the integral of f.
//!
//! Run with: cargo run --release --example domination_harness

use sumgrowth::body::{domination_check, domination_harness, GridFunction};
use sumgrowth::matrix::LatticeOperator;

fn main() {
    println!("=== Hand-built instance on the line ===\n");
    // f = indicator of [0,1], h = indicator of [0,3] = [0,1] + 2·[0,1]
    let f = GridFunction::indicator_box(0.1, &[0.0], &[1.0]).unwrap();
    let h = GridFunction::indicator_box(0.1, &[0.0], &[3.0]).unwrap();
    let t = LatticeOperator::from_rows_i64(&[&[2]]);
    let rep = domination_check(&f, &h, &t).unwrap();
    println!("hypothesis holds: {}", rep.hypothesis_ok);
    println!("∫h = {:.4}  vs  H(T)·∫f = {:.4}", rep.lhs, rep.rhs);
    println!("note: {}\n", rep.note);

    // a failing instance: h too small to dominate
    let h0 = GridFunction::new(1, 0.1).unwrap();
    let rep = domination_check(&f, &h0, &t).unwrap();
    println!("with h ≡ 0 the hypothesis fails: {}\n", rep.hypothesis_ok);

    println!("=== Indicator pairs (Ω, Ω+TΩ) at cell 0.05 ===\n");
    let cases = vec![
        ("T = [2]", LatticeOperator::from_rows_i64(&[&[2]])),
        (
            "T = companion(x^2-2)",
            LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]),
        ),
        (
            "T = rotation",
            LatticeOperator::from_rows_i64(&[&[0, -1], &[1, 0]]),
        ),
    ];
    for (name, t) in &cases {
        let rep = domination_harness(t, 0.05).unwrap();
        println!("{name}:");
        println!("  hypothesis_ok = {}", rep.hypothesis_ok);
        println!(
            "  ∫h = {:.4}, H(T)·∫f = {:.4}, slack = {:+.2}%",
            rep.lhs,
            rep.rhs,
            100.0 * (rep.lhs - rep.rhs) / rep.rhs
        );
    }
}
