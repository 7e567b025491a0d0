//! Structural decomposition of a dense subset of a box: extract a large
//! subset living on a union of equal subcubes in which it is topologically
//! δ-dense.
//!
//! Levels refine by `B_l = δ^(-l)`. The level accepted is the first one
//! whose occupied-volume loss to the next level is below `δ^(d+1)·ε`; all of
//! its cells that keep every one of their subcells occupied are retained.
//! All measures are occupied-cell counts times exact cell volumes, so every
//! comparison is an integer comparison.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::points::PointSet;

/// Axis-aligned cube cell `corner + [0, side)^d` with `corner` in
/// `(side·Z)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeCell {
    pub side: u64,
    pub corner: Vec<i64>,
}

impl CubeCell {
    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter()
            .zip(&self.corner)
            .all(|(&x, &c)| x >= c && x < c + self.side as i64)
    }
}

/// Output of [`structural_decompose`].
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    /// Refinement factor `B = δ^(-level)`.
    pub refinement: u64,
    /// Stopping level `l`.
    pub level: u32,
    /// Retained disjoint cells, side `N/B` each, sorted by corner.
    pub cells: Vec<CubeCell>,
    /// The retained subset `A' = A ∩ (∪ cells)`.
    pub a_prime: PointSet,
}

/// Checks that δ is a unit fraction `1/q` with `q >= min_denom` and
/// returns `q`.
fn unit_fraction(delta: &BigRational, min_denom: u64) -> Result<u64> {
    if !delta.numer().is_one() {
        return Err(Error::InvalidInput(format!(
            "1/δ must be an integer, got δ = {delta}"
        )));
    }
    let q = delta
        .denom()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("δ denominator out of range".into()))?;
    if q < min_denom {
        return Err(Error::InvalidInput(format!(
            "δ must be at most 1/{min_denom}"
        )));
    }
    Ok(q)
}

pub fn structural_decompose(
    a: &PointSet,
    n: u64,
    eps: &BigRational,
    delta: &BigRational,
) -> Result<DecompositionResult> {
    let q = unit_fraction(delta, 2)?;
    if eps <= &BigRational::zero() || eps > &BigRational::one() {
        return Err(Error::InvalidInput("ε must be in (0, 1]".into()));
    }
    // N must be a power of 1/δ so every level divides exactly
    let mut levels = 0u32;
    let mut pow = 1u64;
    while pow < n {
        pow = pow
            .checked_mul(q)
            .ok_or_else(|| Error::InvalidInput("N overflows".into()))?;
        levels += 1;
    }
    if pow != n {
        return Err(Error::InvalidInput(format!(
            "N = {n} is not a power of 1/δ = {q}"
        )));
    }
    let d = a.dim();
    let flat = a.to_i64_flat().ok_or_else(|| {
        Error::InvalidInput("points must lie in [0, N)^d".into())
    })?;
    if flat.iter().any(|&c| c < 0 || c as u64 >= n) {
        return Err(Error::InvalidInput("points must lie in [0, N)^d".into()));
    }
    // density precondition |A| >= ε N^d
    let volume = BigInt::from(n).pow(d as u32);
    if BigRational::from_integer(BigInt::from(a.len() as u64)) < eps * BigRational::from_integer(volume) {
        return Err(Error::InvalidInput(format!(
            "|A| = {} is below ε·N^d",
            a.len()
        )));
    }

    // loss threshold per level: δ^(d+1)·ε
    let loss = delta.pow((d + 1) as i32) * eps;
    let one_minus_loss = BigRational::one() - loss;

    let occupied = |level: u32| -> HashSet<Vec<i64>> {
        let side = n / q.pow(level).max(1);
        let side = side as i64;
        flat.chunks(d)
            .map(|p| p.iter().map(|&c| c / side).collect())
            .collect()
    };

    let measure = |level: u32, count: usize| -> BigInt {
        let side = BigInt::from(n / q.pow(level));
        BigInt::from(count as u64) * side.pow(d as u32)
    };

    let mut level = 0u32;
    let mut occ = occupied(0);
    loop {
        if level == levels {
            break; // unit cells: no further refinement is possible
        }
        let next = occupied(level + 1);
        // stop at the first level with small measure loss
        let m_this = measure(level, occ.len());
        let m_next = measure(level + 1, next.len());
        if BigRational::from_integer(m_next) >= &one_minus_loss * BigRational::from_integer(m_this)
        {
            // retained cells: all q^d subcells occupied
            let full = q.pow(d as u32) as usize;
            let mut sub_count: HashMap<Vec<i64>, usize> = HashMap::new();
            for sub in &next {
                let parent: Vec<i64> = sub.iter().map(|&c| c.div_euclid(q as i64)).collect();
                *sub_count.entry(parent).or_insert(0) += 1;
            }
            let retained: HashSet<Vec<i64>> = occ
                .iter()
                .filter(|cell| sub_count.get(*cell).copied().unwrap_or(0) == full)
                .cloned()
                .collect();
            return Ok(assemble(a, &flat, d, n, level, q, &retained));
        }
        occ = next;
        level += 1;
    }
    // terminal level: cells are single lattice points, trivially retained
    Ok(assemble(a, &flat, d, n, levels, q, &occ))
}

fn assemble(
    a: &PointSet,
    flat: &[i64],
    d: usize,
    n: u64,
    level: u32,
    q: u64,
    retained: &HashSet<Vec<i64>>,
) -> DecompositionResult {
    let b = q.pow(level);
    let side = n / b;
    let mut cells: Vec<CubeCell> = retained
        .iter()
        .map(|coords| CubeCell {
            side,
            corner: coords.iter().map(|&c| c * side as i64).collect(),
        })
        .collect();
    cells.sort_by(|x, y| x.corner.cmp(&y.corner));
    let kept: Vec<Vec<BigInt>> = flat
        .chunks(d)
        .filter(|p| {
            let cell: Vec<i64> = p.iter().map(|&c| c / side as i64).collect();
            retained.contains(&cell)
        })
        .map(|p| p.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let a_prime = PointSet::new(a.dim(), kept).expect("subset of a valid set");
    DecompositionResult {
        refinement: b,
        level,
        cells,
        a_prime,
    }
}

/// True iff every lattice point of the cell has a point of
/// `a_prime ∩ cell` within L∞ distance `δ·side`.
pub fn is_delta_dense(a_prime: &PointSet, cell: &CubeCell, delta: &BigRational) -> Result<bool> {
    let q = unit_fraction(delta, 1)?;
    if cell.side % q != 0 {
        return Err(Error::InvalidInput(format!(
            "cell side {} not divisible by 1/δ = {q}",
            cell.side
        )));
    }
    let d = cell.corner.len();
    if a_prime.dim() != d {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let t = (cell.side / q) as i64; // radius δ·side, an exact integer

    // points of A' inside the cell, bucketed at resolution t
    let Some(flat) = a_prime.to_i64_flat() else {
        // coordinates beyond i64 cannot lie in the (i64) cell
        return Ok(cell.side == 0);
    };
    let mut buckets: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
    for p in flat.chunks(d) {
        if cell.contains(p) {
            let key: Vec<i64> = p
                .iter()
                .zip(&cell.corner)
                .map(|(&x, &c)| (x - c) / t)
                .collect();
            buckets.entry(key).or_default().push(p.to_vec());
        }
    }
    if buckets.is_empty() {
        return Ok(false);
    }
    if buckets.len() as u64 == q.pow(d as u32) {
        // every bucket occupied: within-bucket distance <= t-1 < t
        return Ok(true);
    }

    // exact scan: lattice points of unoccupied buckets must be covered from
    // the 3^d bucket neighborhood
    let mut bucket_coord = vec![0i64; d];
    loop {
        if !buckets.contains_key(&bucket_coord) {
            if !bucket_points_covered(cell, &bucket_coord, t, d, &buckets) {
                return Ok(false);
            }
        }
        // odometer over bucket coordinates
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(true);
            }
            k -= 1;
            if bucket_coord[k] + 1 < q as i64 {
                bucket_coord[k] += 1;
                break;
            }
            bucket_coord[k] = 0;
        }
    }
}

fn bucket_points_covered(
    cell: &CubeCell,
    bucket: &[i64],
    t: i64,
    d: usize,
    buckets: &HashMap<Vec<i64>, Vec<Vec<i64>>>,
) -> bool {
    // candidate witnesses from the 3^d neighborhood
    let mut candidates: Vec<&Vec<i64>> = Vec::new();
    let mut offset = vec![-1i64; d];
    loop {
        let key: Vec<i64> = bucket.iter().zip(&offset).map(|(&b, &o)| b + o).collect();
        if let Some(pts) = buckets.get(&key) {
            candidates.extend(pts.iter());
        }
        let mut k = d;
        loop {
            if k == 0 {
                if candidates.is_empty() {
                    return false;
                }
                return all_lattice_points_covered(cell, bucket, t, d, &candidates);
            }
            k -= 1;
            if offset[k] < 1 {
                offset[k] += 1;
                break;
            }
            offset[k] = -1;
        }
    }
}

fn all_lattice_points_covered(
    cell: &CubeCell,
    bucket: &[i64],
    t: i64,
    d: usize,
    candidates: &[&Vec<i64>],
) -> bool {
    // iterate lattice points of this bucket
    let base: Vec<i64> = cell
        .corner
        .iter()
        .zip(bucket)
        .map(|(&c, &b)| c + b * t)
        .collect();
    let mut rel = vec![0i64; d];
    loop {
        let x: Vec<i64> = base.iter().zip(&rel).map(|(&b, &r)| b + r).collect();
        let covered = candidates
            .iter()
            .any(|y| x.iter().zip(y.iter()).all(|(&xc, &yc)| (xc - yc).abs() <= t));
        if !covered {
            return false;
        }
        let mut k = d;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            if rel[k] + 1 < t {
                rel[k] += 1;
                break;
            }
            rel[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn full_cube_stops_immediately() {
        let a = full_box(16, 2);
        let r = structural_decompose(&a, 16, &rat(1, 2), &rat(1, 4)).unwrap();
        assert_eq!(r.level, 0);
        assert_eq!(r.refinement, 1);
        assert_eq!(r.cells.len(), 1);
        assert_eq!(r.cells[0], CubeCell { side: 16, corner: vec![0, 0] });
        assert_eq!(r.a_prime, a);
    }

    #[test]
    fn concentrated_corner_descends_one_level() {
        // A = [0,4)^2 inside N = 16, ε = 1/16, δ = 1/4
        let a = full_box(4, 2);
        let r = structural_decompose(&a, 16, &rat(1, 16), &rat(1, 4)).unwrap();
        assert_eq!(r.level, 1);
        assert_eq!(r.refinement, 4);
        assert_eq!(r.cells, vec![CubeCell { side: 4, corner: vec![0, 0] }]);
        assert_eq!(r.a_prime, a);
    }

    #[test]
    fn non_unit_fraction_delta_rejected() {
        let a = full_box(16, 2);
        assert!(matches!(
            structural_decompose(&a, 16, &rat(1, 2), &rat(3, 10)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn n_must_be_power_of_inverse_delta() {
        let a = full_box(12, 2);
        assert!(matches!(
            structural_decompose(&a, 12, &rat(1, 2), &rat(1, 4)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn density_precondition_enforced() {
        let a = PointSet::from_i64_rows(2, &[vec![0, 0]]).unwrap();
        assert!(matches!(
            structural_decompose(&a, 16, &rat(1, 2), &rat(1, 4)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn delta_density_basics() {
        let cell = CubeCell { side: 4, corner: vec![0, 0] };
        let quarter = rat(1, 4);
        // all lattice points of the cell: dense
        let full = full_box(4, 2);
        assert!(is_delta_dense(&full, &cell, &quarter).unwrap());
        // empty intersection: not dense
        let far = PointSet::from_i64_rows(2, &[vec![100, 100]]).unwrap();
        assert!(!is_delta_dense(&far, &cell, &quarter).unwrap());
        // single corner point at radius 1: cannot cover the far corner
        let one = PointSet::from_i64_rows(2, &[vec![0, 0]]).unwrap();
        assert!(!is_delta_dense(&one, &cell, &quarter).unwrap());
    }

    #[test]
    fn delta_one_is_whole_cell_radius() {
        // δ = 1: the radius covers the whole cell, any nonempty
        // intersection is dense
        let cell = CubeCell { side: 4, corner: vec![0, 0] };
        let one = PointSet::from_i64_rows(2, &[vec![3, 0]]).unwrap();
        assert!(is_delta_dense(&one, &cell, &rat(1, 1)).unwrap());
        let far = PointSet::from_i64_rows(2, &[vec![9, 9]]).unwrap();
        assert!(!is_delta_dense(&far, &cell, &rat(1, 1)).unwrap());
        // δ = 1/2: one point within side/2 of everything
        let cell = CubeCell { side: 2, corner: vec![0] };
        let corner = PointSet::from_i64_rows(1, &[vec![0]]).unwrap();
        assert!(is_delta_dense(&corner, &cell, &rat(1, 2)).unwrap());
        // but structural decomposition still requires δ <= 1/2
        let full = full_box(16, 2);
        assert!(structural_decompose(&full, 16, &rat(1, 2), &rat(1, 1)).is_err());
    }

    #[test]
    fn decomposition_postconditions_on_random_sets() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let n = 64u64;
        let eps = rat(1, 10);
        let delta = rat(1, 4);
        for _ in 0..10 {
            let mut all: Vec<Vec<i64>> = (0..n as i64)
                .flat_map(|x| (0..n as i64).map(move |y| vec![x, y]))
                .collect();
            all.shuffle(&mut rng);
            let take = 410usize; // ceil(0.1 * 64^2)
            let a = PointSet::from_i64_rows(2, &all[..take]).unwrap();
            let r = structural_decompose(&a, n, &eps, &delta).unwrap();
            // |A'| >= (1-δ)|A|
            assert!(4 * r.a_prime.len() >= 3 * a.len());
            // every returned cell is δ-dense in A'
            for cell in &r.cells {
                assert!(is_delta_dense(&r.a_prime, cell, &delta).unwrap());
            }
            // every retained point is inside some cell
            let flat = r.a_prime.to_i64_flat().unwrap();
            for p in flat.chunks(2) {
                assert!(r.cells.iter().any(|c| c.contains(p)));
            }
        }
    }

    fn full_box(side: i64, d: usize) -> PointSet {
        PointSet::box_nd(d, 0, side - 1)
    }
}
