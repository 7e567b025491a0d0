//! Integer lattice operators and exact rational linear algebra.
//!
//! `LatticeOperator` is a square integer matrix, i.e. an endomorphism of the
//! integer lattice. Characteristic polynomials are computed exactly by
//! Faddeev-LeVerrier (the interior divisions are exact over the integers),
//! minimal polynomials by Krylov chains over the rationals, kernels by
//! reduced row echelon form for deterministic bases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Exact rational vector; entries are kept in lowest terms by the rational
/// type itself.
pub type RationalVector = Vec<BigRational>;

/// Square integer matrix `T` with `T(Z^d) ⊆ Z^d`, row-major entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeOperator {
    dim: usize,
    entries: Vec<BigInt>,
}

impl LatticeOperator {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("operator dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(LatticeOperator { dim, entries })
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
            .collect();
        LatticeOperator { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        LatticeOperator { dim, entries }
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let dim = diag.len();
        let mut entries = vec![BigInt::zero(); dim * dim];
        for (i, &x) in diag.iter().enumerate() {
            entries[i * dim + i] = BigInt::from(x);
        }
        LatticeOperator { dim, entries }
    }

    /// Companion matrix of a monic polynomial: multiplication by a root in
    /// the power basis `1, λ, ..., λ^(d-1)`.
    pub fn companion(f: &IntPolynomial) -> Result<Self> {
        if f.is_zero() || f.is_constant() {
            return Err(Error::InvalidInput(
                "companion matrix needs degree >= 1".into(),
            ));
        }
        if !f.is_monic() {
            return Err(Error::InvalidInput("companion matrix needs a monic polynomial".into()));
        }
        let d = f.degree();
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d.saturating_sub(1) {
            // column i sends basis vector i to basis vector i+1
            entries[(i + 1) * d + i] = BigInt::one();
        }
        for row in 0..d {
            entries[row * d + (d - 1)] = -f.coeff(row);
        }
        LatticeOperator::new(d, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Entries as i64 when every one fits.
    pub fn entries_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(BigInt::to_i64).collect()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.entry(i, i).clone()).sum()
    }

    pub fn mat_mul(&self, other: &LatticeOperator) -> LatticeOperator {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.entry(k, j);
                }
            }
        }
        LatticeOperator { dim: d, entries }
    }

    pub fn add(&self, other: &LatticeOperator) -> LatticeOperator {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        LatticeOperator { dim: self.dim, entries }
    }

    pub fn scale(&self, c: &BigInt) -> LatticeOperator {
        LatticeOperator {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Applies `T` to an integer vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.entry(i, j) * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Applies `T` to a rational vector.
    pub fn apply_rational(&self, v: &[BigRational]) -> RationalVector {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| BigRational::from_integer(self.entry(i, j).clone()) * &v[j])
                    .sum::<BigRational>()
            })
            .collect()
    }

    /// Evaluates an integer polynomial at the matrix (Horner).
    pub fn poly_at(&self, g: &IntPolynomial) -> LatticeOperator {
        let d = self.dim;
        let mut acc = LatticeOperator {
            dim: d,
            entries: vec![BigInt::zero(); d * d],
        };
        for c in g.coeffs().iter().rev() {
            acc = acc.mat_mul(self);
            for i in 0..d {
                acc.entries[i * d + i] += c;
            }
        }
        acc
    }

    /// Characteristic polynomial `det(xI - T)`, monic of degree `dim`,
    /// computed exactly by Faddeev-LeVerrier.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.dim;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = LatticeOperator {
            dim: n,
            entries: vec![BigInt::zero(); n * n],
        };
        let mut c_prev = BigInt::one();
        for k in 1..=n {
            // M_k = A*M_(k-1) + c_(n-k+1)*I
            m = self.mat_mul(&m);
            for i in 0..n {
                m.entries[i * n + i] += &c_prev;
            }
            let am = self.mat_mul(&m);
            let t = am.trace();
            let (q, r) = num_integer::Integer::div_rem(&(-t), &BigInt::from(k as i64));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division is exact");
            coeffs[n - k] = q.clone();
            c_prev = q;
        }
        IntPolynomial::new(coeffs)
    }

    /// Minimal polynomial: the monic least-degree integer polynomial
    /// annihilating `T`. Computed as the lcm of the Krylov polynomials of
    /// the standard basis vectors.
    pub fn minimal_poly(&self) -> IntPolynomial {
        let d = self.dim;
        let mut lcm = IntPolynomial::one();
        for i in 0..d {
            let mut e = vec![BigRational::zero(); d];
            e[i] = BigRational::one();
            let local = self.krylov_min_poly(&e);
            let g = lcm.gcd(&local);
            lcm = lcm.mul(&local.exact_div(&g).expect("gcd divides"));
            if lcm.degree() == d {
                break;
            }
        }
        debug_assert!(self.poly_at(&lcm).is_zero());
        lcm
    }

    /// Least monic polynomial with `p(T)v = 0`; integral because it divides
    /// the (monic, integer) minimal polynomial.
    pub fn krylov_min_poly(&self, v: &[BigRational]) -> IntPolynomial {
        let d = self.dim;
        let mut chain: Vec<RationalVector> = vec![v.to_vec()];
        loop {
            let next = self.apply_rational(chain.last().unwrap());
            let m = RationalMatrix::from_columns(d, &chain);
            if let Some(x) = m.solve(&next) {
                let k = chain.len();
                let mut coeffs = vec![BigRational::zero(); k + 1];
                coeffs[k] = BigRational::one();
                for (j, c) in x.iter().enumerate() {
                    coeffs[j] = -c.clone();
                }
                let ints: Vec<BigInt> = coeffs
                    .iter()
                    .map(|c| {
                        debug_assert!(c.is_integer(), "Krylov polynomial must be integral");
                        c.to_integer()
                    })
                    .collect();
                return IntPolynomial::new(ints);
            }
            if chain.len() == d {
                unreachable!("Krylov chain cannot exceed the ambient dimension");
            }
            chain.push(next);
        }
    }

    /// Rational basis, in reduced echelon form, of `Ker(g(T))`.
    pub fn kernel_of_poly(&self, g: &IntPolynomial) -> Result<Vec<RationalVector>> {
        if g.is_zero() {
            return Err(Error::InvalidInput(
                "kernel of the zero polynomial is not defined".into(),
            ));
        }
        let gt = self.poly_at(g);
        Ok(RationalMatrix::from_integer(&gt).kernel_basis())
    }
}

impl fmt::Debug for LatticeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LatticeOperator({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for LatticeOperator {
    /// Matrix file format: one row per line, space-separated integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LatticeOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (ln, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>().map_err(|_| {
                        Error::InvalidInput(format!("bad integer `{tok}` on line {}", ln + 1))
                    })
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "matrix must be square: {dim} rows but row lengths differ"
            )));
        }
        LatticeOperator::new(dim, rows.into_iter().flatten().collect())
    }
}

/// Dense exact rational matrix; the workhorse behind kernels, solves and
/// restriction matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_integer(m: &LatticeOperator) -> Self {
        RationalMatrix {
            rows: m.dim(),
            cols: m.dim(),
            entries: m
                .entries()
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }

    pub fn from_columns(dim: usize, cols: &[RationalVector]) -> Self {
        let mut m = RationalMatrix::zero(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim);
            for i in 0..dim {
                m.entries[i * cols.len() + j] = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> RationalVector {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.entry(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.entries.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.entry(r, c).recip();
            for j in c..self.cols {
                let v = self.entry(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.entry(i, c).is_zero() {
                    continue;
                }
                let factor = self.entry(i, c).clone();
                for j in c..self.cols {
                    let v = self.entry(i, j) - &factor * self.entry(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Deterministic kernel basis in reduced echelon form: one vector per
    /// free column, in ascending column order, with a 1 in the free slot.
    pub fn kernel_basis(&self) -> Vec<RationalVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![usize::MAX; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = r;
        }
        for free in 0..self.cols {
            if pivot_of_col[free] != usize::MAX {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.entry(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b` exactly; `None` when inconsistent. When the
    /// system is underdetermined the free variables are set to zero.
    pub fn solve(&self, b: &[BigRational]) -> Option<RationalVector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RationalMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.entry(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.entry(r, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial over the rationals via Faddeev-LeVerrier;
    /// returns an integer polynomial when, as for restrictions of integer
    /// operators, the coefficients are integral.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a square matrix");
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = RationalMatrix::zero(n, n);
        let mut c_prev = BigRational::one();
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                let v = m.entry(i, i) + &c_prev;
                m.set(i, i, v);
            }
            let am = self.mul(&m);
            let t: BigRational = (0..n).map(|i| am.entry(i, i).clone()).sum();
            let c = -t / BigRational::from_integer(BigInt::from(k as i64));
            coeffs[n - k] = c.clone();
            c_prev = c;
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::InvalidInput(
                        "matrix has non-integral characteristic polynomial".into(),
                    ))
                }
            })
            .collect::<Result<_>>()?;
        Ok(IntPolynomial::new(ints))
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.entry(i, j) + a * other.entry(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigRational]) -> RationalVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect()
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(LatticeOperator::identity(2).char_poly(), poly("x^2-2*x+1"));
        let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
        assert_eq!(t.char_poly(), poly("x^2-2"));
        assert_eq!(LatticeOperator::diagonal(&[2, 3]).char_poly(), poly("x^2-5*x+6"));
    }

    #[test]
    fn minimal_poly_examples() {
        assert_eq!(LatticeOperator::diagonal(&[2, 2]).minimal_poly(), poly("x-2"));
        let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
        assert_eq!(t.minimal_poly(), poly("x^2-2"));
        assert_eq!(LatticeOperator::identity(3).minimal_poly(), poly("x-1"));
    }

    #[test]
    fn minimal_poly_divides_char_poly() {
        // Jordan block at 1 plus eigenvalue 2: minimal = characteristic
        let t = LatticeOperator::from_rows_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(t.minimal_poly(), poly("x^3-4*x^2+5*x-2"));
        assert!(t.char_poly().exact_div(&t.minimal_poly()).is_some());
        // derogatory matrix: repeated eigenvalue with full eigenspace
        let t = LatticeOperator::diagonal(&[2, 2, 3]);
        assert_eq!(t.minimal_poly(), poly("x^2-5*x+6"));
        assert_eq!(t.char_poly(), poly("x^2-5*x+6").mul(&poly("x-2")));
    }

    #[test]
    fn cayley_hamilton() {
        let t = LatticeOperator::from_rows_i64(&[&[3, -1, 2], &[0, 4, 1], &[-2, 5, 0]]);
        assert!(t.poly_at(&t.char_poly()).is_zero());
    }

    #[test]
    fn kernel_examples() {
        let t = LatticeOperator::diagonal(&[2, 3]);
        let k = t.kernel_of_poly(&poly("x-2")).unwrap();
        assert_eq!(k, vec![vec![BigRational::one(), BigRational::zero()]]);
        // Cayley-Hamilton: kernel of char poly is everything
        let k = t.kernel_of_poly(&t.char_poly()).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0][0], BigRational::one());
        assert_eq!(k[1][1], BigRational::one());
        // 5 is not an eigenvalue
        let k = t.kernel_of_poly(&poly("x-5")).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let t = LatticeOperator::from_rows_i64(&[&[2, 1], &[0, 2]]);
        let g = poly("x-2");
        let gt = t.poly_at(&g);
        for v in t.kernel_of_poly(&g).unwrap() {
            let image = RationalMatrix::from_integer(&gt).apply(&v);
            assert!(image.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn companion_matrix_of_x2_minus_2() {
        let c = LatticeOperator::companion(&poly("x^2-2")).unwrap();
        assert_eq!(c, LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]));
        assert_eq!(c.char_poly(), poly("x^2-2"));
        let c3 = LatticeOperator::companion(&poly("x^3-x-1")).unwrap();
        assert_eq!(c3.char_poly(), poly("x^3-x-1"));
    }

    #[test]
    fn matrix_text_round_trip() {
        let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
        let text = t.to_string();
        assert_eq!(text, "0 2\n1 0\n");
        assert_eq!(text.parse::<LatticeOperator>().unwrap(), t);
        assert!("1 2\n3".parse::<LatticeOperator>().is_err());
        assert!("".parse::<LatticeOperator>().is_err());
    }

    #[test]
    fn solve_and_rank() {
        let m = RationalMatrix::from_integer(&LatticeOperator::from_rows_i64(&[
            &[1, 2],
            &[2, 4],
        ]));
        assert_eq!(m.rank(), 1);
        let b = vec![
            BigRational::from_integer(BigInt::from(3)),
            BigRational::from_integer(BigInt::from(6)),
        ];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad = vec![
            BigRational::from_integer(BigInt::from(3)),
            BigRational::from_integer(BigInt::from(7)),
        ];
        assert!(m.solve(&bad).is_none());
    }
}
