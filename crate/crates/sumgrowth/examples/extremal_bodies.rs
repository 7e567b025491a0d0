//! Near-extremal convex bodies: products of intervals and disks in a real
//! spectral basis, achieving μ(Ω + TΩ)/μ(Ω) = H(T) exactly.
//!
//! Run with: cargo run --example extremal_bodies

use sumgrowth::body::{build_extremal_body, BodyComponent};
use sumgrowth::heights::h_of_operator;
use sumgrowth::matrix::LatticeOperator;
use sumgrowth::Error;

fn main() {
    println!("=== Extremal product bodies ===\n");
    let cases = vec![
        ("T = [2]", LatticeOperator::from_rows_i64(&[&[2]])),
        (
            "T = companion(x^2-2)",
            LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]),
        ),
        (
            "T = rotation by 90°",
            LatticeOperator::from_rows_i64(&[&[0, -1], &[1, 0]]),
        ),
    ];
    for (name, t) in &cases {
        let body = build_extremal_body(t).unwrap();
        let ratio = body.exact_measure_ratio(t).unwrap();
        let h = h_of_operator(t).unwrap();
        println!("{name}");
        for c in body.components() {
            match c {
                BodyComponent::Interval { eigenvalue, .. } => {
                    println!("  interval along the eigenvector of {eigenvalue:.6}")
                }
                BodyComponent::Disk { eigenvalue, .. } => println!(
                    "  disk in the plane of {:.3} ± {:.3}i",
                    eigenvalue.re, eigenvalue.im
                ),
            }
        }
        println!("  μ(Ω+TΩ)/μ(Ω) = {ratio:.12}");
        println!("  H(T)          = {}", h.render(12));
        println!("  basis residual {:.2e}, condition {:.3}", body.residual, body.condition);

        // realize the integer points of a dilate
        let m = 25;
        let omega = body.lattice_realization(m).unwrap();
        println!("  |Z^d ∩ {m}Ω| = {}\n", omega.len());
    }

    // defective operators have no product-body construction
    let shear = LatticeOperator::from_rows_i64(&[&[1, 1], &[0, 1]]);
    match build_extremal_body(&shear) {
        Err(Error::NotDiagonalizable(msg)) => {
            println!("shear [[1,1],[0,1]] rejected: {msg}");
        }
        other => panic!("unexpected: {other:?}"),
    }
}
