//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumgrowth::body::domination_harness;
use sumgrowth::decompose::{is_delta_dense, structural_decompose};
use sumgrowth::gap::{bounded_combination, Gap};
use sumgrowth::heights::{
    h_circ_of_operator, height_irreducible, height_poly, minimizing_invariant_subspace,
};
use sumgrowth::matrix::LatticeOperator;
use sumgrowth::points::PointSet;
use sumgrowth::poly::IntPolynomial;
use sumgrowth::sumset::{brute_force_min, naive_sumset_card, t_sumset};
use sumgrowth::Error;

fn poly(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn op(rows: &[&[i64]]) -> LatticeOperator {
    LatticeOperator::from_rows_i64(rows)
}

fn pass(n: u32, label: &str, start: Instant) {
    println!(
        "[acceptance] criterion {n} ({label}): pass ({:.3}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c01_rational_heights_exact() {
    let start = Instant::now();
    let h = height_irreducible(&poly("2*x-3")).unwrap();
    assert!(h.contains(5.0), "H(2x-3) must enclose 5, got {h:?}");
    assert!(h.width() < 1e-9, "width {}", h.width());
    let h = height_irreducible(&poly("x-2")).unwrap();
    assert!(h.contains(3.0), "H(x-2) must enclose 3, got {h:?}");
    assert!(h.width() < 1e-9);
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 1 over time budget");
    pass(1, "rational heights exact", start);
}

#[test]
fn c02_sqrt_two_height() {
    let start = Instant::now();
    let expected = 3.0 + 2.0 * std::f64::consts::SQRT_2; // 5.8284271247...
    let h = height_irreducible(&poly("x^2-2")).unwrap();
    assert!(h.contains(expected), "H(x^2-2) = {h:?} must enclose {expected}");
    assert!(h.width() < 1e-9, "width {}", h.width());
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 2 over time budget");
    pass(2, "irrational height within 1e-9", start);
}

#[test]
fn c03_companion_h_circ_matches_polynomial_height() {
    let start = Instant::now();
    for f in ["x^2-2", "x^2+1", "x^3-x-1"] {
        let t0 = Instant::now();
        let f = poly(f);
        let hf = height_poly(&f).unwrap();
        let companion = LatticeOperator::companion(&f).unwrap();
        let hc = h_circ_of_operator(&companion).unwrap();
        assert!(
            hc.overlaps(&hf),
            "H°(companion({f})) = {hc:?} vs H(f) = {hf:?}"
        );
        assert!(t0.elapsed().as_secs_f64() < 1.0, "{f} over time budget");
    }
    let t0 = Instant::now();
    let h = h_circ_of_operator(&LatticeOperator::diagonal(&[2, 3])).unwrap();
    assert!(h.contains(3.0) && h.width() < 1e-9, "H°(diag(2,3)) = {h:?}");
    assert!(t0.elapsed().as_secs_f64() < 1.0);
    pass(3, "companion realization of H(f)", start);
}

#[test]
fn c04_invariant_subspace_minimization() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_1001);
    let mut accepted = 0u32;
    while accepted < 50 {
        let d = 2 + (rng.gen_range(0u32..3)) as usize;
        let entries: Vec<BigInt> = (0..d * d)
            .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
            .collect();
        let t = LatticeOperator::new(d, entries).unwrap();
        let char_poly = t.char_poly();
        if sumgrowth::is_irreducible(&char_poly).unwrap() {
            continue; // need a reducible characteristic polynomial
        }
        accepted += 1;

        let result = minimizing_invariant_subspace(&t).unwrap();
        // independent minimum over irreducible divisors
        let fac = sumgrowth::factor_over_integers(&char_poly).unwrap();
        let mut best: Option<sumgrowth::RealInterval> = None;
        for g in fac.distinct_factors() {
            let h = height_irreducible(&g).unwrap();
            best = Some(match best {
                None => h,
                Some(b) if h.hi < b.hi => h,
                Some(b) => b,
            });
        }
        let best = best.unwrap();
        assert!(
            result.height.overlaps(&best),
            "operator {t:?}: subspace height {:?} vs divisor minimum {best:?}",
            result.height
        );
        // char poly of the restriction equals the divisor exactly
        assert_eq!(
            result.restriction.char_poly().unwrap(),
            result.divisor,
            "operator {t:?}"
        );
    }
    assert!(start.elapsed().as_secs_f64() < 30.0, "criterion 4 over time budget");
    pass(4, "invariant subspace equality on 50 random operators", start);
}

#[test]
fn c05_million_point_sumset_under_two_seconds() {
    let n: i64 = 1_000_000;
    let a = PointSet::range_1d(0, n - 1);
    let t = op(&[&[2]]);
    let start = Instant::now();

    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let t1 = Instant::now();
    let s1 = single.install(|| t_sumset(&a, &t)).unwrap();
    let t1 = t1.elapsed();
    assert!(t1.as_secs_f64() < 2.0, "1-thread run took {t1:?}");

    let t2 = Instant::now();
    let s2 = t_sumset(&a, &t).unwrap(); // default pool: all threads
    let t2 = t2.elapsed();
    assert!(t2.as_secs_f64() < 2.0, "max-thread run took {t2:?}");

    assert_eq!(s1.len() as i64, 3 * n - 2);
    assert_eq!(s1, s2, "results must be identical across thread counts");
    pass(5, "1e6-point sumset exact and fast", start);
}

#[test]
fn c06_oracle_equivalence_and_brute_force() {
    let start = Instant::now();
    let t = op(&[&[2]]);
    let box_set = PointSet::range_1d(0, 7);
    // every 3-subset: production kernel vs naive quadratic recount
    for i in 0..8i64 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                let a = PointSet::from_i64_rows(1, &[vec![i], vec![j], vec![k]]).unwrap();
                let fast = t_sumset(&a, &t).unwrap().len() as u64;
                let slow = naive_sumset_card(&a, &t).unwrap();
                assert_eq!(fast, slow, "subset {{{i},{j},{k}}}");
            }
        }
    }
    let (min_size, witness) = brute_force_min(3, &box_set, &t, 1_000).unwrap();
    assert_eq!(min_size, 7);
    assert_eq!(witness, PointSet::range_1d(0, 2));
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 6 over time budget");
    pass(6, "oracle equivalence over all 3-subsets of {0..7}", start);
}

#[test]
fn c07_extremal_convergence() {
    let start = Instant::now();
    let target = 5.8284271247461903f64;
    let t = op(&[&[0, 2], &[1, 0]]);
    let rows =
        sumgrowth::body::convergence_experiment(&t, &[20, 100], 1e-9).unwrap();
    let ratio20 = rows[0].sumset_count as f64 / rows[0].count as f64;
    let ratio100 = rows[1].sumset_count as f64 / rows[1].count as f64;
    assert!(
        (ratio100 - target).abs() / target < 0.10,
        "ratio at M=100 is {ratio100}, target {target}"
    );
    assert!(
        (ratio100 - target).abs() < (ratio20 - target).abs(),
        "M=100 ({ratio100}) must be closer than M=20 ({ratio20})"
    );
    // 1-d law: counts are 2M+1 and 6M+1 exactly
    let rows = sumgrowth::body::convergence_experiment(&op(&[&[2]]), &[10, 100], 1e-9).unwrap();
    for row in &rows {
        assert_eq!(row.count, 2 * row.m + 1);
        assert_eq!(row.sumset_count, 6 * row.m + 1);
    }
    assert!(start.elapsed().as_secs_f64() < 30.0, "criterion 7 over time budget");
    pass(7, "extremal body convergence toward H°", start);
}

#[test]
fn c08_structural_decomposition_randomized() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x8_2002);
    let n = 64u64;
    let eps = BigRational::new(BigInt::from(1), BigInt::from(10));
    let delta = BigRational::new(BigInt::from(1), BigInt::from(4));
    // the stated bound with the d+1 = 3 exponent
    let eps_f = 0.1f64;
    let delta_f = 0.25f64;
    let b_bound = (-eps_f.ln() * delta_f.ln() / (1.0 - delta_f.powi(3) * eps_f * 0.25).ln()).exp();
    let take = 410usize; // ceil(0.1 * 64^2)
    let all: Vec<Vec<i64>> = (0..n as i64)
        .flat_map(|x| (0..n as i64).map(move |y| vec![x, y]))
        .collect();
    for trial in 0..100 {
        // sample `take` distinct points
        let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(take);
        let mut indices: Vec<usize> = (0..all.len()).collect();
        for pick in 0..take {
            let j = rng.gen_range(pick..indices.len());
            indices.swap(pick, j);
            chosen.push(all[indices[pick]].clone());
        }
        let a = PointSet::from_i64_rows(2, &chosen).unwrap();
        let r = structural_decompose(&a, n, &eps, &delta).unwrap();
        // |A'| >= (1-δ)|A|
        assert!(
            4 * r.a_prime.len() >= 3 * a.len(),
            "trial {trial}: retained {} of {}",
            r.a_prime.len(),
            a.len()
        );
        for cell in &r.cells {
            assert!(
                is_delta_dense(&r.a_prime, cell, &delta).unwrap(),
                "trial {trial}: cell {cell:?} not δ-dense"
            );
        }
        assert!(
            (r.refinement as f64) <= b_bound,
            "trial {trial}: B = {} over bound {b_bound}",
            r.refinement
        );
    }
    assert!(start.elapsed().as_secs_f64() < 10.0, "criterion 8 over time budget");
    pass(8, "dense decomposition on 100 random instances", start);
}

#[test]
fn c09_gap_properness_and_monotonicity() {
    let start = Instant::now();
    let p = Gap::offset(
        vec![BigInt::from(0)],
        vec![vec![BigInt::from(3)], vec![BigInt::from(1)]],
        vec![2, 2],
    )
    .unwrap();
    assert!(p.is_k_proper(1, 10_000).unwrap().proper);
    let cert = p.is_k_proper(2, 10_000).unwrap();
    assert!(!cert.proper);
    let (later, earlier) = cert.collision.expect("improper certificate carries a witness");
    // verify the witness by re-evaluation
    let eval = |c: &[i64]| 3 * c[0] + c[1];
    assert_ne!(later, earlier);
    assert_eq!(eval(&later), eval(&earlier));

    // monotonicity on 200 random progressions
    let mut rng = ChaCha8Rng::seed_from_u64(0x9_3003);
    for trial in 0..200 {
        let dim = rng.gen_range(1usize..=2);
        let rank = rng.gen_range(1usize..=3);
        let generators: Vec<Vec<BigInt>> = (0..rank)
            .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect())
            .collect();
        let bounds: Vec<u64> = (0..rank).map(|_| rng.gen_range(1u64..=3)).collect();
        let gap = if rng.gen_bool(0.5) {
            Gap::centered(dim, generators, bounds).unwrap()
        } else {
            let v0: Vec<BigInt> = (0..dim).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
            Gap::offset(v0, generators, bounds).unwrap()
        };
        let verdicts: Vec<bool> = (1..=4u64)
            .map(|k| gap.is_k_proper(k, 200_000).unwrap().proper)
            .collect();
        for w in verdicts.windows(2) {
            assert!(
                w[0] || !w[1],
                "trial {trial}: properness must be downward closed, got {verdicts:?}"
            );
        }
    }
    assert!(start.elapsed().as_secs_f64() < 10.0, "criterion 9 over time budget");
    pass(9, "GAP properness certificates and monotonicity", start);
}

#[test]
fn c10_bounded_combination_random() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA_4004);
    // 1000 in-span instances; bounds are also asserted inside the call
    for trial in 0..1000 {
        let n = rng.gen_range(1usize..=4);
        let count = rng.gen_range(1usize..=6);
        let vs: Vec<Vec<BigInt>> = (0..count)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
            .collect();
        let coeffs: Vec<i64> = (0..count).map(|_| rng.gen_range(-3i64..=3)).collect();
        let v: Vec<BigInt> = (0..n)
            .map(|i| {
                coeffs
                    .iter()
                    .zip(&vs)
                    .map(|(&c, w)| BigInt::from(c) * &w[i])
                    .sum()
            })
            .collect();
        let r = bounded_combination(&v, &vs).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        // the identity, re-verified here
        for i in 0..n {
            let lhs = &v[i] * &r.scale;
            let rhs: BigInt = r
                .coefficients
                .iter()
                .zip(&vs)
                .map(|(s, w)| s * &w[i])
                .sum();
            assert_eq!(lhs, rhs, "trial {trial}");
        }
    }
    // 100 out-of-span instances
    let mut rejected = 0u32;
    while rejected < 100 {
        let n = rng.gen_range(2usize..=4);
        let count = rng.gen_range(1usize..=n - 1);
        let vs: Vec<Vec<BigInt>> = (0..count)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
            .collect();
        let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        match bounded_combination(&v, &vs) {
            Err(Error::NotInSpan) => rejected += 1,
            Ok(_) => continue, // v happened to be in the span: resample
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "criterion 10 over time budget");
    pass(10, "bounded combinations with certified bounds", start);
}

#[test]
fn c11_domination_harness_on_example_bodies() {
    let start = Instant::now();
    let cases: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![2]],
        vec![vec![0, 2], vec![1, 0]],
        vec![vec![0, -1], vec![1, 0]],
    ];
    for rows in &cases {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let t = op(&refs);
        let rep = domination_harness(&t, 0.05).unwrap();
        assert!(rep.hypothesis_ok, "{rows:?}: hypothesis must hold");
        assert!(
            rep.lhs >= rep.rhs * (1.0 - 0.05),
            "{rows:?}: lhs {} vs rhs {}",
            rep.lhs,
            rep.rhs
        );
    }
    assert!(start.elapsed().as_secs_f64() < 20.0, "criterion 11 over time budget");
    pass(11, "weighted inequality harness on example bodies", start);
}
