//! Convergence of |Ω_M + TΩ_M| / |Ω_M| toward H°(T) as the dilation M
//! grows, printed as CSV.
//!
//! Run with: cargo run --release --example convergence

use sumgrowth::body::convergence_experiment;
use sumgrowth::matrix::LatticeOperator;
use sumgrowth::report::{convergence_table, Format};

fn main() {
    // one line of CSV per dilation factor
    let t = LatticeOperator::from_rows_i64(&[&[2]]);
    println!("# T = [2], limit H° = 3");
    let rows = convergence_experiment(&t, &[5, 10, 50, 100, 500], 1e-9).unwrap();
    print!("{}", convergence_table(&rows, Format::Csv));

    let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
    println!("\n# T = companion(x^2-2), limit H° = 3 + 2*sqrt(2) ≈ 5.8284271247");
    let rows = convergence_experiment(&t, &[10, 20, 50, 100], 1e-9).unwrap();
    print!("{}", convergence_table(&rows, Format::Csv));

    let t = LatticeOperator::from_rows_i64(&[&[0, -1], &[1, 0]]);
    println!("\n# T = rotation, limit H° = 4");
    let rows = convergence_experiment(&t, &[10, 20, 50, 100], 1e-9).unwrap();
    print!("{}", convergence_table(&rows, Format::Csv));
}
