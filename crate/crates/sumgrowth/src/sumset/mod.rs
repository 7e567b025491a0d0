//! Exact sumsets `A + T·A` over the integer lattice and `A + λ·A` inside
//! number rings.
//!
//! The kernel picks one of three exact strategies:
//!   * dense packed sets with a bounded coordinate box: indicator
//!     convolution by number-theoretic transform (support only);
//!   * machine-word coordinates: parallel hash merging of packed sums over
//!     block pairs;
//!   * anything else: big-integer tuples through an ordered set.
//! All three produce the identical set; the choice only affects speed.

mod ntt;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::heights::h_circ_of_operator_tol;
use crate::interval::RealInterval;
use crate::matrix::LatticeOperator;
use crate::points::PointSet;
use crate::poly::IntPolynomial;

/// Exact sumset `{a + T b : a, b ∈ A}`.
pub fn t_sumset(a: &PointSet, t: &LatticeOperator) -> Result<PointSet> {
    if a.dim() != t.dim() {
        return Err(Error::InvalidInput(format!(
            "set dimension {} does not match operator dimension {}",
            a.dim(),
            t.dim()
        )));
    }
    if a.is_empty() {
        return Ok(a.clone());
    }
    if let (Some(af), Some(tf)) = (a.to_i64_flat(), t.entries_i64()) {
        if let Some(out) = sumset_i64(&af, &tf, a.dim()) {
            return Ok(out);
        }
    }
    Ok(sumset_big(a, t))
}

/// Multiplication by the ring generator in the power basis: the companion
/// matrix of the minimal polynomial, wrapped so experiments can speak in
/// `A + λA` terms.
#[derive(Clone, Debug)]
pub struct NumberRingContext {
    minimal_polynomial: IntPolynomial,
    companion: LatticeOperator,
}

impl NumberRingContext {
    /// Requires a monic irreducible polynomial (the minimal polynomial of
    /// an algebraic integer).
    pub fn new(f: IntPolynomial) -> Result<Self> {
        if f.is_zero() || f.is_constant() {
            return Err(Error::InvalidInput(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if !f.is_monic() {
            return Err(Error::InvalidInput(format!(
                "`{f}` is not monic, so its root is not an algebraic integer"
            )));
        }
        if !crate::factor::is_irreducible(&f)? {
            return Err(Error::InvalidInput(format!("`{f}` is not irreducible")));
        }
        let companion = LatticeOperator::companion(&f)?;
        debug_assert_eq!(companion.char_poly(), f);
        Ok(NumberRingContext {
            minimal_polynomial: f,
            companion,
        })
    }

    pub fn degree(&self) -> usize {
        self.companion.dim()
    }

    pub fn minimal_polynomial(&self) -> &IntPolynomial {
        &self.minimal_polynomial
    }

    pub fn companion(&self) -> &LatticeOperator {
        &self.companion
    }
}

/// `A + λA` for coordinates in the power basis `1, λ, ..., λ^(d-1)`.
pub fn ring_sumset(a: &PointSet, ctx: &NumberRingContext) -> Result<PointSet> {
    if a.dim() != ctx.degree() {
        return Err(Error::InvalidInput(format!(
            "set dimension {} does not match ring degree {}",
            a.dim(),
            ctx.degree()
        )));
    }
    t_sumset(a, ctx.companion())
}

/// Comparison of the achieved growth ratio against the reference invariant.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub set_size: u64,
    pub sumset_size: u64,
    /// `sumset_size / set_size` as an exact rational.
    pub ratio: BigRational,
    /// Certified enclosure of `H°(T)`.
    pub reference_height: RealInterval,
    /// `ratio - midpoint(reference_height)`.
    pub gap: f64,
}

pub fn ratio_report(a: &PointSet, t: &LatticeOperator, tol: f64) -> Result<RatioReport> {
    if a.is_empty() {
        return Err(Error::InvalidInput("ratio of an empty set".into()));
    }
    let sumset = t_sumset(a, t)?;
    let reference_height = h_circ_of_operator_tol(t, tol)?;
    let ratio = BigRational::new(BigInt::from(sumset.len()), BigInt::from(a.len()));
    let gap = ratio.to_f64().unwrap_or(f64::NAN) - reference_height.midpoint();
    Ok(RatioReport {
        set_size: a.len() as u64,
        sumset_size: sumset.len() as u64,
        ratio,
        reference_height,
        gap,
    })
}

/// Quadratic-loop recount through an ordered set; deliberately independent
/// of the production kernel so it can serve as its oracle.
pub fn naive_sumset_card(a: &PointSet, t: &LatticeOperator) -> Result<u64> {
    if a.dim() != t.dim() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for b in a.iter() {
        let tb = t.apply(b);
        for p in a.iter() {
            let sum: Vec<BigInt> = p.iter().zip(&tb).map(|(x, y)| x + y).collect();
            seen.insert(sum);
        }
    }
    Ok(seen.len() as u64)
}

/// Exhaustive minimum of `|A + TA|` over all `n`-element subsets of `box_set`,
/// with the lexicographically first minimizing witness.
pub fn brute_force_min(
    n: usize,
    box_set: &PointSet,
    t: &LatticeOperator,
    budget: u64,
) -> Result<(u64, PointSet)> {
    if n == 0 || n > box_set.len() {
        return Err(Error::InvalidInput(format!(
            "subset size {n} out of range for a box of {} points",
            box_set.len()
        )));
    }
    if box_set.dim() != t.dim() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let count = binomial(box_set.len() as u64, n as u64);
    if count > BigInt::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "C({}, {n}) = {count} subsets exceeds budget {budget}",
            box_set.len()
        )));
    }

    let counter = SubsetCounter::new(box_set, t);
    let mut best_size = u64::MAX;
    let mut best: Vec<usize> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let size = counter.sumset_size(&idx)?;
        if size < best_size {
            best_size = size;
            best = idx.clone();
        }
        // advance to the next lexicographic combination
        let m = box_set.len();
        let mut i = n;
        loop {
            if i == 0 {
                let witness_points = best
                    .iter()
                    .map(|&i| box_set.point(i).to_vec())
                    .collect();
                return Ok((best_size, PointSet::new(box_set.dim(), witness_points)?));
            }
            i -= 1;
            if idx[i] != i + m - n {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Per-subset sumset counter for the brute-force oracle: packed machine
/// arithmetic when the box permits, big integers otherwise.
enum SubsetCounter {
    Packed {
        keys_a: Vec<i64>, // flattened points
        keys_t: Vec<i64>, // flattened images
        dim: usize,
        lo: Vec<i64>,
        bits: Vec<u32>,
    },
    Big {
        points: Vec<Vec<BigInt>>,
        images: Vec<Vec<BigInt>>,
    },
}

impl SubsetCounter {
    fn new(box_set: &PointSet, t: &LatticeOperator) -> Self {
        let d = box_set.dim();
        if let (Some(pf), Some(tf)) = (box_set.to_i64_flat(), t.entries_i64()) {
            if let Some(imgs) = apply_all_i64(&pf, &tf, d) {
                if let Some((lo, bits)) = sum_packing(&pf, &imgs, d) {
                    return SubsetCounter::Packed {
                        keys_a: pf,
                        keys_t: imgs,
                        dim: d,
                        lo,
                        bits,
                    };
                }
            }
        }
        let points: Vec<Vec<BigInt>> = box_set.iter().map(|p| p.to_vec()).collect();
        let images = points.iter().map(|p| t.apply(p)).collect();
        SubsetCounter::Big { points, images }
    }

    fn sumset_size(&self, idx: &[usize]) -> Result<u64> {
        match self {
            SubsetCounter::Packed {
                keys_a,
                keys_t,
                dim,
                lo,
                bits,
            } => {
                let mut keys = Vec::with_capacity(idx.len() * idx.len());
                for &i in idx {
                    let a = &keys_a[i * dim..(i + 1) * dim];
                    for &j in idx {
                        let tb = &keys_t[j * dim..(j + 1) * dim];
                        let mut key = 0u64;
                        for k in 0..*dim {
                            key = (key << bits[k]) | ((a[k] + tb[k] - lo[k]) as u64);
                        }
                        keys.push(key);
                    }
                }
                keys.sort_unstable();
                keys.dedup();
                Ok(keys.len() as u64)
            }
            SubsetCounter::Big { points, images } => {
                let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
                for &i in idx {
                    for &j in idx {
                        let sum: Vec<BigInt> = points[i]
                            .iter()
                            .zip(&images[j])
                            .map(|(x, y)| x + y)
                            .collect();
                        seen.insert(sum);
                    }
                }
                Ok(seen.len() as u64)
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Applies the operator to every flattened point; `None` on i64 overflow.
fn apply_all_i64(points: &[i64], t_entries: &[i64], d: usize) -> Option<Vec<i64>> {
    let n = points.len() / d;
    let mut out = Vec::with_capacity(points.len());
    for p in 0..n {
        let v = &points[p * d..(p + 1) * d];
        for i in 0..d {
            let mut acc: i128 = 0;
            for j in 0..d {
                acc += t_entries[i * d + j] as i128 * v[j] as i128;
            }
            out.push(i64::try_from(acc).ok()?);
        }
    }
    Some(out)
}

/// Offsets and bit widths packing every possible coordinate sum into a u64
/// key (most significant dimension first, so key order is lex order).
fn sum_packing(a: &[i64], b: &[i64], d: usize) -> Option<(Vec<i64>, Vec<u32>)> {
    let bounds_a = flat_bounds(a, d)?;
    let bounds_b = flat_bounds(b, d)?;
    let mut lo = Vec::with_capacity(d);
    let mut bits = Vec::with_capacity(d);
    let mut total_bits = 0u32;
    for k in 0..d {
        let low = bounds_a[k].0 as i128 + bounds_b[k].0 as i128;
        let high = bounds_a[k].1 as i128 + bounds_b[k].1 as i128;
        if low < i64::MIN as i128 || high > i64::MAX as i128 {
            return None;
        }
        let span = (high - low + 1) as u128;
        let width = 128 - (span - 1).leading_zeros().min(127);
        let width = if span == 1 { 1 } else { width };
        total_bits += width;
        if total_bits > 63 {
            return None;
        }
        lo.push(low as i64);
        bits.push(width);
    }
    Some((lo, bits))
}

fn flat_bounds(flat: &[i64], d: usize) -> Option<Vec<(i64, i64)>> {
    if flat.is_empty() {
        return None;
    }
    let mut out: Vec<(i64, i64)> = flat[..d].iter().map(|&c| (c, c)).collect();
    for p in flat.chunks(d) {
        for (k, &c) in p.iter().enumerate() {
            out[k].0 = out[k].0.min(c);
            out[k].1 = out[k].1.max(c);
        }
    }
    Some(out)
}

/// i64 kernel: computes `T·A` once, then dispatches to the NTT or packed
/// hash strategy. `None` when coordinates leave the i64 range.
fn sumset_i64(af: &[i64], tf: &[i64], d: usize) -> Option<PointSet> {
    let imgs = apply_all_i64(af, tf, d)?;
    // deduplicate images (T may be singular)
    let n = af.len() / d;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| imgs[x * d..(x + 1) * d].cmp(&imgs[y * d..(y + 1) * d]));
    let mut taf = Vec::with_capacity(imgs.len());
    for (pos, &i) in order.iter().enumerate() {
        let img = &imgs[i * d..(i + 1) * d];
        if pos == 0 || taf[taf.len() - d..] != *img {
            taf.extend_from_slice(img);
        }
    }
    let m = taf.len() / d;

    let bounds_a = flat_bounds(af, d)?;
    let bounds_t = flat_bounds(&taf, d)?;
    let mut lo = Vec::with_capacity(d);
    let mut spans: Vec<u128> = Vec::with_capacity(d);
    for k in 0..d {
        let low = bounds_a[k].0 as i128 + bounds_t[k].0 as i128;
        let high = bounds_a[k].1 as i128 + bounds_t[k].1 as i128;
        if low < i64::MIN as i128 || high > i64::MAX as i128 {
            return None;
        }
        lo.push(low as i64);
        spans.push((high - low + 1) as u128);
    }
    let mut total: u128 = 1;
    for &s in &spans {
        total = total.checked_mul(s)?;
        if total > u64::MAX as u128 {
            break;
        }
    }

    let pairs = n as u128 * m as u128;
    if total <= (1u128 << ntt::MAX_LEN_LOG2)
        && pairs >= total
        && (n.min(m) as u64) < ntt::P
    {
        return Some(sumset_ntt(af, &taf, d, &lo, &spans));
    }
    Some(sumset_hash(af, &taf, d))
}

/// Dense path: pack both sets into mixed-radix indices over the sum box and
/// take the support of the indicator convolution.
fn sumset_ntt(af: &[i64], taf: &[i64], d: usize, lo: &[i64], spans: &[u128]) -> PointSet {
    // strides, last dimension fastest
    let mut strides = vec![1u128; d];
    for k in (0..d.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * spans[k + 1];
    }
    let total = strides[0] * spans[0];
    // per-set offsets: use each set's own minima so indices stay small and
    // index sums land at (sum - lo) by construction
    let amin: Vec<i64> = flat_bounds(af, d).unwrap().iter().map(|b| b.0).collect();
    let tmin: Vec<i64> = flat_bounds(taf, d).unwrap().iter().map(|b| b.0).collect();
    debug_assert!((0..d).all(|k| amin[k] + tmin[k] == lo[k]));
    let pack = |flat: &[i64], mins: &[i64]| -> Vec<usize> {
        flat.chunks(d)
            .map(|p| {
                let mut idx = 0u128;
                for k in 0..d {
                    idx += (p[k] - mins[k]) as u128 * strides[k];
                }
                idx as usize
            })
            .collect()
    };
    let a_idx = pack(af, &amin);
    let t_idx = pack(taf, &tmin);
    let support = ntt::convolve_support(&a_idx, &t_idx, total as usize);
    let mut flat = Vec::with_capacity(support.len() * d);
    for idx in support {
        let mut rem = idx as u128;
        for k in 0..d {
            let q = rem / strides[k];
            rem %= strides[k];
            flat.push(BigInt::from(lo[k] + q as i64));
        }
    }
    PointSet::from_sorted_flat(d, flat)
}

/// Packed-word path: shard image points across the worker pool, each worker
/// deduplicating locally; the merged union is sorted for canonical output.
fn sumset_hash(af: &[i64], taf: &[i64], d: usize) -> PointSet {
    let n = af.len() / d;
    let m = taf.len() / d;
    let packing = sum_packing(af, taf, d);
    match packing {
        Some((lo, bits)) => {
            let chunk_points = (m / (rayon::current_num_threads() * 4).max(1)).max(1);
            let sets: Vec<HashSet<u64>> = taf
                .par_chunks(chunk_points * d)
                .map(|tchunk| {
                    let mut local = HashSet::with_capacity(n);
                    for tb in tchunk.chunks(d) {
                        for a in af.chunks(d) {
                            let mut key = 0u64;
                            for k in 0..d {
                                key = (key << bits[k]) | ((a[k] + tb[k] - lo[k]) as u64);
                            }
                            local.insert(key);
                        }
                    }
                    local
                })
                .collect();
            let mut keys: Vec<u64> = sets.into_iter().flatten().collect();
            keys.sort_unstable();
            keys.dedup();
            let mut flat = Vec::with_capacity(keys.len() * d);
            for key in keys {
                let mut coords = vec![0i64; d];
                let mut rest = key;
                for k in (0..d).rev() {
                    let mask = (1u64 << bits[k]) - 1;
                    coords[k] = (rest & mask) as i64 + lo[k];
                    rest >>= bits[k];
                }
                flat.extend(coords.into_iter().map(BigInt::from));
            }
            PointSet::from_sorted_flat(d, flat)
        }
        None => {
            // coordinates fit i64 but keys exceed one word: tuple sets
            let chunk_points = (m / (rayon::current_num_threads() * 4).max(1)).max(1);
            let sets: Vec<HashSet<Vec<i64>>> = taf
                .par_chunks(chunk_points * d)
                .map(|tchunk| {
                    let mut local = HashSet::with_capacity(n);
                    for tb in tchunk.chunks(d) {
                        for a in af.chunks(d) {
                            let sum: Vec<i64> =
                                (0..d).map(|k| a[k] + tb[k]).collect();
                            local.insert(sum);
                        }
                    }
                    local
                })
                .collect();
            let mut points: Vec<Vec<i64>> = sets.into_iter().flatten().collect();
            points.sort_unstable();
            points.dedup();
            let flat = points
                .into_iter()
                .flatten()
                .map(BigInt::from)
                .collect();
            PointSet::from_sorted_flat(d, flat)
        }
    }
}

/// Arbitrary-precision fallback.
fn sumset_big(a: &PointSet, t: &LatticeOperator) -> PointSet {
    let images: BTreeSet<Vec<BigInt>> = a.iter().map(|b| t.apply(b)).collect();
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for tb in &images {
        for p in a.iter() {
            let sum: Vec<BigInt> = p.iter().zip(tb).map(|(x, y)| x + y).collect();
            seen.insert(sum);
        }
    }
    let dim = a.dim();
    let flat = seen.into_iter().flatten().collect();
    PointSet::from_sorted_flat(dim, flat)
}
