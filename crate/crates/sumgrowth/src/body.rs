//! Near-extremal convex product bodies and the weighted grid-function
//! inequality harness.
//!
//! For a diagonalizable lattice operator the body is a product of unit
//! intervals (one per real eigenvalue) and unit disks (one per complex
//! conjugate pair) assembled in a real spectral basis. Componentwise,
//! `interval + λ·interval` scales length by `1 + |λ|` and
//! `disk + λ·disk` scales radius by `1 + |λ|`, so the measure ratio
//! `μ(Ω + TΩ)/μ(Ω)` is exactly `prod (1 + |λ_i|)` over all eigenvalues —
//! the operator growth invariant. Counts of lattice points stay exact
//! integers; floating point only decides membership near the boundary,
//! with a fixed outward tolerance.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use num_bigint::BigInt;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factor::factor_over_integers;
use crate::heights::h_of_operator_tol;
use crate::interval::RealInterval;
use crate::matrix::{LatticeOperator, RationalMatrix, RationalVector};
use crate::points::PointSet;
use crate::sumset::t_sumset;

/// Outward membership tolerance: boundary points are included, and the
/// O(M^(d-1)) boundary cannot affect ratio limits.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// One factor of the product body, attached to its eigenvalue data.
#[derive(Clone, Debug)]
pub enum BodyComponent {
    /// `[-half_width, half_width]` along one real spectral direction.
    Interval { eigenvalue: f64, half_width: f64 },
    /// Disk of the given radius in the plane of a complex-conjugate pair
    /// (the representative with positive imaginary part is stored).
    Disk { eigenvalue: Complex64, radius: f64 },
}

impl BodyComponent {
    fn dims(&self) -> usize {
        match self {
            BodyComponent::Interval { .. } => 1,
            BodyComponent::Disk { .. } => 2,
        }
    }

    fn growth(&self) -> f64 {
        match self {
            BodyComponent::Interval { eigenvalue, .. } => 1.0 + eigenvalue.abs(),
            BodyComponent::Disk { eigenvalue, .. } => (1.0 + eigenvalue.norm()).powi(2),
        }
    }

    fn extent(&self) -> f64 {
        match self {
            BodyComponent::Interval { half_width, .. } => *half_width,
            BodyComponent::Disk { radius, .. } => *radius,
        }
    }

    fn scaled(&self, factor: f64) -> BodyComponent {
        match self {
            BodyComponent::Interval {
                eigenvalue,
                half_width,
            } => BodyComponent::Interval {
                eigenvalue: *eigenvalue,
                half_width: half_width * factor,
            },
            BodyComponent::Disk { eigenvalue, radius } => BodyComponent::Disk {
                eigenvalue: *eigenvalue,
                radius: radius * factor,
            },
        }
    }
}

/// Convex body `P · (product of components)` in a real spectral basis `P`
/// of the operator it was built for.
#[derive(Clone, Debug)]
pub struct SpectralProductBody {
    dim: usize,
    /// Column-major spectral basis (column = spectral direction).
    basis: Vec<f64>,
    basis_inv: Vec<f64>,
    components: Vec<BodyComponent>,
    /// 1-norm condition estimate of the basis, reported for diagnostics.
    pub condition: f64,
    /// `max |(TP - PΛ)_ij|`, reported for diagnostics.
    pub residual: f64,
}

impl SpectralProductBody {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[BodyComponent] {
        &self.components
    }

    /// Basis entry at (row, col).
    pub fn basis_entry(&self, row: usize, col: usize) -> f64 {
        self.basis[col * self.dim + row]
    }

    /// The body `Ω + TΩ`, which is the same product with each component
    /// scaled by `1 + |λ|`.
    pub fn sum_body(&self) -> SpectralProductBody {
        let components = self
            .components
            .iter()
            .map(|c| match c {
                BodyComponent::Interval { eigenvalue, .. } => {
                    c.scaled(1.0 + eigenvalue.abs())
                }
                BodyComponent::Disk { eigenvalue, .. } => c.scaled(1.0 + eigenvalue.norm()),
            })
            .collect();
        SpectralProductBody {
            components,
            ..self.clone()
        }
    }

    /// Spectral coordinates `P^-1 x`.
    fn spectral_coords(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.basis_inv[j * d + i] * x[j]).sum())
            .collect()
    }

    /// Membership of `x` in `scale · Ω`, with outward boundary tolerance
    /// and optional extra slack per spectral coordinate.
    pub fn contains_scaled(&self, x: &[f64], scale: f64, slack: Option<&[f64]>) -> bool {
        let c = self.spectral_coords(x);
        let mut k = 0usize;
        for comp in &self.components {
            match comp {
                BodyComponent::Interval { half_width, .. } => {
                    let bound = scale * half_width * (1.0 + BOUNDARY_TOL)
                        + slack.map_or(0.0, |s| s[k]);
                    if c[k].abs() > bound {
                        return false;
                    }
                    k += 1;
                }
                BodyComponent::Disk { radius, .. } => {
                    let extra = slack.map_or(0.0, |s| s[k] + s[k + 1]);
                    let bound = scale * radius * (1.0 + BOUNDARY_TOL) + extra;
                    if c[k].hypot(c[k + 1]) > bound {
                        return false;
                    }
                    k += 2;
                }
            }
        }
        true
    }

    /// Closed-form measure ratio `μ(Ω + TΩ)/μ(Ω)`, the product of component
    /// growth factors. Fails when the body was not built for this operator.
    pub fn exact_measure_ratio(&self, t: &LatticeOperator) -> Result<f64> {
        self.check_built_for(t)?;
        Ok(self.components.iter().map(BodyComponent::growth).product())
    }

    fn check_built_for(&self, t: &LatticeOperator) -> Result<()> {
        if t.dim() != self.dim {
            return Err(Error::InvalidInput(
                "body and operator dimensions differ".into(),
            ));
        }
        let resid = basis_residual(t, &self.basis, &self.components);
        let scale = 1.0 + self.basis.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if !(resid <= 1e-6 * scale) {
            return Err(Error::InvalidInput(format!(
                "body was not built for this operator (residual {resid:.3e})"
            )));
        }
        Ok(())
    }

    /// `Z^d ∩ M·Ω`: all integer points of the M-dilate, boundary included.
    pub fn lattice_realization(&self, m: u64) -> Result<PointSet> {
        if m == 0 {
            return Err(Error::InvalidInput("dilation factor M must be >= 1".into()));
        }
        let d = self.dim;
        let mf = m as f64;
        // bounding box: |x_j| <= M * sum_i |P_ji| * extent_i
        let mut hi = vec![0i64; d];
        for j in 0..d {
            let mut bound = 0.0f64;
            let mut k = 0usize;
            for comp in &self.components {
                for _ in 0..comp.dims() {
                    bound += self.basis_entry(j, k).abs() * comp.extent();
                    k += 1;
                }
            }
            hi[j] = (mf * bound * (1.0 + 2.0 * BOUNDARY_TOL)).ceil() as i64 + 1;
        }
        // scan outer slabs in parallel; slab order keeps output sorted
        let slabs: Vec<Vec<i64>> = (-hi[0]..=hi[0])
            .into_par_iter()
            .map(|x0| {
                let mut out = Vec::new();
                let mut x = vec![0i64; d];
                x[0] = x0;
                scan_rest(self, &mut x, 1, &hi, mf, &mut out);
                out
            })
            .collect();
        let mut flat = Vec::new();
        for slab in slabs {
            flat.extend(slab.into_iter().map(BigInt::from));
        }
        Ok(PointSet::from_sorted_flat(d, flat))
    }

    /// Rasterizes the body indicator on a grid of the given cell size:
    /// cells whose center lies in the body (with optional extra outward
    /// slack of `outward` in L∞ distance) get value 1.
    pub fn rasterize_indicator(&self, cell: f64, outward: f64) -> Result<GridFunction> {
        if !(cell > 0.0) {
            return Err(Error::InvalidInput("cell size must be positive".into()));
        }
        let d = self.dim;
        // transformed slack per spectral coordinate: |P^-1| row sums x outward
        let slack: Vec<f64> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.basis_inv[j * d + i].abs())
                    .sum::<f64>()
                    * outward
            })
            .collect();
        let mut hi = vec![0i64; d];
        for j in 0..d {
            let mut bound = 0.0f64;
            let mut k = 0usize;
            for comp in &self.components {
                for _ in 0..comp.dims() {
                    bound += self.basis_entry(j, k).abs() * comp.extent();
                    k += 1;
                }
            }
            hi[j] = ((bound + outward) / cell).ceil() as i64 + 2;
        }
        let mut grid = GridFunction::new(d, cell)?;
        let mut idx = vec![-hi[0]; d];
        for k in 1..d {
            idx[k] = -hi[k];
        }
        loop {
            let center: Vec<f64> = idx.iter().map(|&i| (i as f64 + 0.5) * cell).collect();
            if self.contains_scaled(&center, 1.0, Some(&slack)) {
                grid.set(idx.clone(), 1.0)?;
            }
            let mut k = d;
            loop {
                if k == 0 {
                    return Ok(grid);
                }
                k -= 1;
                if idx[k] < hi[k] {
                    idx[k] += 1;
                    break;
                }
                idx[k] = -hi[k];
            }
        }
    }
}

fn scan_rest(
    body: &SpectralProductBody,
    x: &mut Vec<i64>,
    pos: usize,
    hi: &[i64],
    m: f64,
    out: &mut Vec<i64>,
) {
    if pos == x.len() {
        let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        if body.contains_scaled(&xf, m, None) {
            out.extend_from_slice(x);
        }
        return;
    }
    for v in -hi[pos]..=hi[pos] {
        x[pos] = v;
        scan_rest(body, x, pos + 1, hi, m, out);
    }
}

/// Builds the extremal product body for a diagonalizable operator: unit
/// interval per real eigenvalue, unit disk per conjugate pair, in the real
/// spectral basis assembled from exact rational Krylov chains.
pub fn build_extremal_body(t: &LatticeOperator) -> Result<SpectralProductBody> {
    let d = t.dim();
    let min_poly = t.minimal_poly();
    if !min_poly.gcd(&min_poly.derivative()).is_constant() {
        return Err(Error::NotDiagonalizable(format!(
            "minimal polynomial {min_poly} is not square-free"
        )));
    }
    let char_poly = t.char_poly();
    let factors = factor_over_integers(&char_poly)?;

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut components: Vec<BodyComponent> = Vec::new();
    for (g, mult) in &factors.factors {
        let m = g.degree();
        // exact rational kernel of g(T): dimension m * mult
        let kernel = t.kernel_of_poly(g)?;
        // split into `mult` Krylov chains
        let chains = krylov_chains(t, &kernel, m, *mult as usize)?;
        // roots of g once per factor
        let roots = crate::roots::complex_roots_certified(g, 1e-12)?;
        for chain in &chains {
            let chain_f64: Vec<Vec<f64>> = chain
                .iter()
                .map(|v| v.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
                .collect();
            for root in &roots {
                if root.im() < 0.0 {
                    continue; // conjugate handled by its partner
                }
                let lambda = Complex64::new(root.re(), root.im());
                // eigenvector coefficients in the chain basis: g(x)/(x - λ)
                let quot = synthetic_division(g, lambda);
                let mut re = vec![0.0f64; d];
                let mut im = vec![0.0f64; d];
                for (j, q) in quot.iter().enumerate() {
                    for k in 0..d {
                        re[k] += q.re * chain_f64[j][k];
                        im[k] += q.im * chain_f64[j][k];
                    }
                }
                if root.is_real() {
                    columns.push(re);
                    components.push(BodyComponent::Interval {
                        eigenvalue: root.re(),
                        half_width: 1.0,
                    });
                } else {
                    columns.push(re);
                    columns.push(im);
                    components.push(BodyComponent::Disk {
                        eigenvalue: lambda,
                        radius: 1.0,
                    });
                }
            }
        }
    }
    debug_assert_eq!(columns.len(), d);
    let mut basis = vec![0.0f64; d * d];
    for (c, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            basis[c * d + r] = v;
        }
    }
    let basis_inv = invert(d, &basis).ok_or_else(|| {
        Error::NotDiagonalizable("spectral basis is numerically singular".into())
    })?;
    let condition = one_norm(d, &basis) * one_norm(d, &basis_inv);
    let residual = basis_residual(t, &basis, &components);
    Ok(SpectralProductBody {
        dim: d,
        basis,
        basis_inv,
        components,
        condition,
        residual,
    })
}

/// Splits a rational kernel basis into `count` Krylov chains of length `m`.
fn krylov_chains(
    t: &LatticeOperator,
    kernel: &[RationalVector],
    m: usize,
    count: usize,
) -> Result<Vec<Vec<RationalVector>>> {
    let d = t.dim();
    let mut chains: Vec<Vec<RationalVector>> = Vec::with_capacity(count);
    let mut span: Vec<RationalVector> = Vec::new();
    for seed in kernel {
        if chains.len() == count {
            break;
        }
        // skip seeds already inside the accumulated span
        let mut trial = span.clone();
        trial.push(seed.clone());
        if RationalMatrix::from_columns(d, &trial).rank() == span.len() {
            continue;
        }
        let mut chain = vec![seed.clone()];
        for _ in 1..m {
            let next = t.apply_rational(chain.last().unwrap());
            chain.push(next);
        }
        span.extend(chain.iter().cloned());
        if RationalMatrix::from_columns(d, &span).rank() != span.len() {
            return Err(Error::NotDiagonalizable(
                "kernel does not split into independent cyclic chains".into(),
            ));
        }
        chains.push(chain);
    }
    if chains.len() != count {
        return Err(Error::NotDiagonalizable(
            "not enough independent kernel vectors".into(),
        ));
    }
    Ok(chains)
}

/// Coefficients of `g(x) / (x - λ)` for monic `g`, ascending order.
fn synthetic_division(g: &crate::poly::IntPolynomial, lambda: Complex64) -> Vec<Complex64> {
    let m = g.degree();
    let mut q = vec![Complex64::new(0.0, 0.0); m];
    q[m - 1] = Complex64::new(1.0, 0.0);
    for j in (1..m).rev() {
        let gj = g.coeff(j).to_f64().unwrap_or(f64::NAN);
        q[j - 1] = Complex64::new(gj, 0.0) + lambda * q[j];
    }
    q
}



fn one_norm(d: usize, m: &[f64]) -> f64 {
    (0..d)
        .map(|c| (0..d).map(|r| m[c * d + r].abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
}

fn invert(d: usize, m: &[f64]) -> Option<Vec<f64>> {
    // Gauss-Jordan with partial pivoting on [M | I], column-major
    let mut a = vec![0.0f64; d * 2 * d];
    for c in 0..d {
        for r in 0..d {
            a[c * d + r] = m[c * d + r];
        }
        a[(d + c) * d + c] = 1.0;
    }
    let at = |a: &Vec<f64>, r: usize, c: usize| a[c * d + r];
    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&i, &j| at(&a, i, col).abs().total_cmp(&at(&a, j, col).abs()))?;
        if at(&a, pivot, col).abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for c in 0..2 * d {
                a.swap(c * d + pivot, c * d + col);
            }
        }
        let p = at(&a, col, col);
        for c in 0..2 * d {
            a[c * d + col] /= p;
        }
        for r in 0..d {
            if r == col {
                continue;
            }
            let f = at(&a, r, col);
            if f == 0.0 {
                continue;
            }
            for c in 0..2 * d {
                a[c * d + r] -= f * a[c * d + col];
            }
        }
    }
    Some((0..d * d).map(|i| a[d * d + i]).collect())
}

/// `max |(TP - PΛ)_ij|` where Λ is the block-diagonal spectral action.
fn basis_residual(t: &LatticeOperator, basis: &[f64], components: &[BodyComponent]) -> f64 {
    let d = t.dim();
    let tf: Vec<f64> = t
        .entries()
        .iter()
        .map(|e| e.to_f64().unwrap_or(f64::NAN))
        .collect();
    let col = |c: usize| -> Vec<f64> { (0..d).map(|r| basis[c * d + r]).collect() };
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..d)
            .map(|i| (0..d).map(|j| tf[i * d + j] * v[j]).sum())
            .collect()
    };
    let mut resid = 0.0f64;
    let mut k = 0usize;
    for comp in components {
        match comp {
            BodyComponent::Interval { eigenvalue, .. } => {
                let tu = apply(&col(k));
                for r in 0..d {
                    resid = resid.max((tu[r] - eigenvalue * basis[k * d + r]).abs());
                }
                k += 1;
            }
            BodyComponent::Disk { eigenvalue, .. } => {
                let (alpha, beta) = (eigenvalue.re, eigenvalue.im);
                let tu = apply(&col(k));
                let tw = apply(&col(k + 1));
                for r in 0..d {
                    let u = basis[k * d + r];
                    let w = basis[(k + 1) * d + r];
                    resid = resid.max((tu[r] - (alpha * u - beta * w)).abs());
                    resid = resid.max((tw[r] - (beta * u + alpha * w)).abs());
                }
                k += 2;
            }
        }
    }
    resid
}

/// One row of a convergence experiment.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub m: u64,
    pub count: u64,
    pub sumset_count: u64,
    pub ratio: BigRational,
    pub h_circ: RealInterval,
}

/// Realizes `Ω_M = Z^d ∩ M·Ω` for each `M` and reports
/// `|Ω_M + T·Ω_M| / |Ω_M|` against `H°(T)`. Requires an irreducible
/// characteristic polynomial (restrict to the minimizing invariant subspace
/// first otherwise).
pub fn convergence_experiment(
    t: &LatticeOperator,
    ms: &[u64],
    tol: f64,
) -> Result<Vec<ConvergenceRow>> {
    let char_poly = t.char_poly();
    if !crate::factor::is_irreducible(&char_poly)? {
        return Err(Error::InvalidInput(format!(
            "characteristic polynomial {char_poly} is reducible; restrict to the minimizing invariant subspace first"
        )));
    }
    let body = build_extremal_body(t)?;
    let h_circ = crate::heights::h_circ_of_operator_tol(t, tol)?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let omega = body.lattice_realization(m)?;
        let sum = t_sumset(&omega, t)?;
        rows.push(ConvergenceRow {
            m,
            count: omega.len() as u64,
            sumset_count: sum.len() as u64,
            ratio: BigRational::new(BigInt::from(sum.len() as u64), BigInt::from(omega.len() as u64)),
            h_circ,
        });
    }
    Ok(rows)
}

/// Nonnegative function sampled on a cubical grid with finite support.
#[derive(Clone, Debug)]
pub struct GridFunction {
    dim: usize,
    cell: f64,
    // ordered so that integrals and scans are deterministic
    values: BTreeMap<Vec<i64>, f64>,
}

impl GridFunction {
    pub fn new(dim: usize, cell: f64) -> Result<Self> {
        if dim == 0 || !(cell > 0.0) {
            return Err(Error::InvalidInput(
                "grid function needs dim >= 1 and a positive cell size".into(),
            ));
        }
        Ok(GridFunction {
            dim,
            cell,
            values: BTreeMap::new(),
        })
    }

    /// Indicator of an axis box `[lo, hi)^d`: cells whose center is inside.
    pub fn indicator_box(cell: f64, lo: &[f64], hi: &[f64]) -> Result<Self> {
        let dim = lo.len();
        let mut g = GridFunction::new(dim, cell)?;
        let lo_idx: Vec<i64> = lo.iter().map(|&x| (x / cell).floor() as i64 - 1).collect();
        let hi_idx: Vec<i64> = hi.iter().map(|&x| (x / cell).ceil() as i64 + 1).collect();
        let mut idx = lo_idx.clone();
        loop {
            let center: Vec<f64> = idx.iter().map(|&i| (i as f64 + 0.5) * cell).collect();
            if center.iter().zip(lo.iter().zip(hi)).all(|(&c, (&l, &h))| c >= l && c < h) {
                g.set(idx.clone(), 1.0)?;
            }
            let mut k = dim;
            loop {
                if k == 0 {
                    return Ok(g);
                }
                k -= 1;
                if idx[k] < hi_idx[k] {
                    idx[k] += 1;
                    break;
                }
                idx[k] = lo_idx[k];
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn set(&mut self, idx: Vec<i64>, value: f64) -> Result<()> {
        if idx.len() != self.dim {
            return Err(Error::InvalidInput("cell index dimension mismatch".into()));
        }
        if !(value >= 0.0) {
            return Err(Error::InvalidInput("grid values must be nonnegative".into()));
        }
        self.values.insert(idx, value);
        Ok(())
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<i64>, &f64)> {
        self.values.iter()
    }

    /// Value of the cell containing the point.
    pub fn value_at(&self, x: &[f64]) -> f64 {
        let idx: Vec<i64> = x.iter().map(|&v| (v / self.cell).floor() as i64).collect();
        self.values.get(&idx).copied().unwrap_or(0.0)
    }

    fn center(&self, idx: &[i64]) -> Vec<f64> {
        idx.iter().map(|&i| (i as f64 + 0.5) * self.cell).collect()
    }

    /// `Σ value · cell^d`, the grid approximation of the integral.
    pub fn integral(&self) -> f64 {
        let cell_vol = self.cell.powi(self.dim as i32);
        self.values.values().sum::<f64>() * cell_vol
    }
}

/// Result of the grid-sampled inequality check. The hypothesis and the
/// integrals are sampled evidence at cell-center resolution, not a proof.
#[derive(Clone, Debug)]
pub struct DominationReport {
    /// All sampled pairs satisfied `h(x + Ty) >= f(x)`.
    pub hypothesis_ok: bool,
    /// Grid integral of `h` (the side the inequality bounds from below).
    pub lhs: f64,
    /// `midpoint(H(T)) ·` grid integral of `f`.
    pub rhs: f64,
    /// Measured `H(T)` enclosure used in `rhs`.
    pub h_operator: RealInterval,
    /// Reminder that this is a sampled evidence harness.
    pub note: &'static str,
}

/// Checks the weighted inequality hypothesis on cell centers and compares
/// the grid integrals: for valid instances `lhs >= H(T) · ∫f` up to
/// rasterization error.
pub fn domination_check(
    f: &GridFunction,
    h: &GridFunction,
    t: &LatticeOperator,
) -> Result<DominationReport> {
    if f.cell() != h.cell() {
        return Err(Error::InvalidInput(format!(
            "grid functions must share a cell size ({} vs {})",
            f.cell(),
            h.cell()
        )));
    }
    if f.dim() != t.dim() || h.dim() != t.dim() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let tf: Vec<f64> = t
        .entries()
        .iter()
        .map(|e| e.to_f64().unwrap_or(f64::NAN))
        .collect();
    let d = t.dim();
    let mut hypothesis_ok = true;
    'outer: for (x_idx, &fx) in f.support() {
        if fx == 0.0 {
            continue;
        }
        let x = f.center(x_idx);
        for (y_idx, _) in f.support() {
            let y = f.center(y_idx);
            let mut z = x.clone();
            for i in 0..d {
                for j in 0..d {
                    z[i] += tf[i * d + j] * y[j];
                }
            }
            if h.value_at(&z) < fx {
                hypothesis_ok = false;
                break 'outer;
            }
        }
    }
    let h_operator = h_of_operator_tol(t, 1e-9)?;
    let lhs = h.integral();
    let rhs = h_operator.midpoint() * f.integral();
    Ok(DominationReport {
        hypothesis_ok,
        lhs,
        rhs,
        h_operator,
        note: "grid-sampled evidence at cell-center resolution, not a proof",
    })
}

/// Builds the indicator pair (Ω, Ω + TΩ) rasterized at the given cell size
/// and runs the inequality check: the standard harness instance.
pub fn domination_harness(t: &LatticeOperator, cell: f64) -> Result<DominationReport> {
    let body = build_extremal_body(t)?;
    let f = body.rasterize_indicator(cell, 0.0)?;
    // half-cell outward slack guarantees every sampled x + Ty lands in a
    // marked cell of the sum raster
    let h = body.sum_body().rasterize_indicator(cell, cell / 2.0 + cell * 1e-9)?;
    domination_check(&f, &h, t)
}
