//! Exact sumsets at scale and growth-ratio reports.
//!
//! The kernel is exact at every size: dense low-dimensional sets go through
//! an indicator convolution, word-sized sets through parallel hashed
//! merges, anything else through big-integer tuples.
//!
//! Run with: cargo run --release --example sumsets_at_scale

use std::time::Instant;

use sumgrowth::matrix::LatticeOperator;
use sumgrowth::points::PointSet;
use sumgrowth::report::rational_decimal;
use sumgrowth::sumset::{ratio_report, t_sumset};

fn main() {
    println!("=== A + 2A on growing intervals ===\n");
    let t = LatticeOperator::from_rows_i64(&[&[2]]);
    println!("{:>9} {:>10} {:>9} {:>10}", "n", "|A+2A|", "ratio", "time");
    for n in [1_000i64, 100_000, 1_000_000] {
        let a = PointSet::range_1d(0, n - 1);
        let start = Instant::now();
        let s = t_sumset(&a, &t).unwrap();
        let dt = start.elapsed();
        assert_eq!(s.len() as i64, 3 * n - 2);
        println!(
            "{n:>9} {:>10} {:>9.5} {:>9.1?}",
            s.len(),
            s.len() as f64 / n as f64,
            dt
        );
    }
    println!("(the limit ratio for T = [2] is H° = 3)");

    println!("\n=== Two-dimensional ratio report ===\n");
    let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
    let a = PointSet::box_nd(2, 0, 39); // 1600 points
    let r = ratio_report(&a, &t, 1e-9).unwrap();
    println!("|A| = {}, |A + TA| = {}", r.set_size, r.sumset_size);
    println!("ratio = {}", rational_decimal(&r.ratio, 10));
    println!("H°(T) = {}", r.reference_height.render(10));
    println!("gap to the reference = {:.6}", r.gap);
    println!("(boxes are far from extremal; see the convergence example)");

    println!("\n=== Coordinates beyond machine words ===\n");
    let huge: num_bigint::BigInt = num_bigint::BigInt::from(1u128 << 100) * 12345;
    let a = PointSet::new(
        1,
        vec![
            vec![num_bigint::BigInt::from(0)],
            vec![huge.clone()],
            vec![&huge * 2],
        ],
    )
    .unwrap();
    let s = t_sumset(&a, &t_small()).unwrap();
    println!("three points around 2^113: |A + 2A| = {} (exact)", s.len());
}

fn t_small() -> LatticeOperator {
    LatticeOperator::from_rows_i64(&[&[2]])
}
