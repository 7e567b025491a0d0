//! Finite sets of integer lattice points.
//!
//! Points are stored flattened in lexicographically sorted order, which
//! makes set equality, file output and parallel merges deterministic.
//! Coordinates are arbitrary-precision; kernels downshift to machine
//! integers when everything fits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Finite set of distinct points of `Z^d`, lexicographically sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<BigInt>, // flattened, len = dim * len
}

impl PointSet {
    /// Builds a set from points, sorting them; duplicate points are an
    /// error (they signal data bugs upstream).
    pub fn new(dim: usize, points: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be >= 1".into()));
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, expected {dim}",
                bad.len()
            )));
        }
        let mut points = points;
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate point in set".into()));
        }
        Ok(PointSet {
            dim,
            coords: points.into_iter().flatten().collect(),
        })
    }

    /// Builds a set collapsing duplicates (for enumerations whose image may
    /// repeat).
    pub fn from_dedup(dim: usize, mut points: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be >= 1".into()));
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, expected {dim}",
                bad.len()
            )));
        }
        points.sort();
        points.dedup();
        Ok(PointSet {
            dim,
            coords: points.into_iter().flatten().collect(),
        })
    }

    /// Internal fast constructor: `flat` must already be sorted
    /// lexicographically by point with no duplicates.
    pub(crate) fn from_sorted_flat(dim: usize, flat: Vec<BigInt>) -> Self {
        debug_assert_eq!(flat.len() % dim, 0);
        debug_assert!({
            let pts: Vec<&[BigInt]> = flat.chunks(dim).collect();
            pts.windows(2).all(|w| w[0] < w[1])
        });
        PointSet { dim, coords: flat }
    }

    pub fn from_i64_rows(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        PointSet::new(
            dim,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// `{lo, ..., hi}` on the line.
    pub fn range_1d(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        PointSet {
            dim: 1,
            coords: (lo..=hi).map(BigInt::from).collect(),
        }
    }

    /// Full integer box `[lo, hi]^d` (inclusive), lexicographic order.
    pub fn box_nd(dim: usize, lo: i64, hi: i64) -> Self {
        assert!(dim >= 1 && lo <= hi);
        let side = (hi - lo + 1) as usize;
        let n = side.pow(dim as u32);
        let mut coords = Vec::with_capacity(n * dim);
        for idx in 0..n {
            let mut rem = idx;
            let mut point = vec![0i64; dim];
            for k in (0..dim).rev() {
                point[k] = lo + (rem % side) as i64;
                rem /= side;
            }
            coords.extend(point.into_iter().map(BigInt::from));
        }
        PointSet { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[BigInt] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[BigInt]> {
        self.coords.chunks(self.dim)
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        assert_eq!(p.len(), self.dim);
        let mut lo = 0usize;
        let mut hi = self.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// All coordinates as i64 when each one fits.
    pub fn to_i64_flat(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(BigInt::to_i64).collect()
    }

    /// Per-coordinate (min, max); `None` for the empty set.
    pub fn bounds(&self) -> Option<Vec<(BigInt, BigInt)>> {
        if self.is_empty() {
            return None;
        }
        let mut out: Vec<(BigInt, BigInt)> = self.point(0)
            .iter()
            .map(|c| (c.clone(), c.clone()))
            .collect();
        for p in self.iter() {
            for (k, c) in p.iter().enumerate() {
                if *c < out[k].0 {
                    out[k].0 = c.clone();
                }
                if *c > out[k].1 {
                    out[k].1 = c.clone();
                }
            }
        }
        Some(out)
    }

    pub fn translate(&self, x: &[BigInt]) -> PointSet {
        assert_eq!(x.len(), self.dim);
        let points = self
            .iter()
            .map(|p| p.iter().zip(x).map(|(a, b)| a - b).collect())
            .collect();
        PointSet::new(self.dim, points).expect("translation preserves distinctness")
    }

    pub fn dilate(&self, s: &BigInt) -> Result<PointSet> {
        use num_traits::Zero;
        if s.is_zero() {
            return Err(Error::InvalidInput("dilation factor must be nonzero".into()));
        }
        let points = self
            .iter()
            .map(|p| p.iter().map(|a| a * s).collect())
            .collect();
        PointSet::new(self.dim, points)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(d={}, n={})", self.dim, self.len())
    }
}

impl fmt::Display for PointSet {
    /// Point-set file format: one point per line, space-separated integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.iter() {
            let row: Vec<String> = p.iter().map(BigInt::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for PointSet {
    type Err = Error;

    /// Parses the point-set file format; `#` starts a comment, duplicate
    /// points are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let mut points: Vec<Vec<BigInt>> = Vec::new();
        let mut dim: Option<usize> = None;
        for (ln, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let point: Vec<BigInt> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>().map_err(|_| {
                        Error::InvalidInput(format!("bad integer `{tok}` on line {}", ln + 1))
                    })
                })
                .collect::<Result<_>>()?;
            match dim {
                None => dim = Some(point.len()),
                Some(d) if d != point.len() => {
                    return Err(Error::InvalidInput(format!(
                        "point on line {} has {} coordinates, expected {d}",
                        ln + 1,
                        point.len()
                    )));
                }
                _ => {}
            }
            points.push(point);
        }
        let dim = dim.ok_or_else(|| Error::InvalidInput("empty point set file".into()))?;
        PointSet::new(dim, points)
    }
}
