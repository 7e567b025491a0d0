//! Certified growth invariants of polynomials and lattice operators.
//!
//! For an irreducible primitive `g` with full complex factorization
//! `g = prod (a_i x + b_i)` every linear factor satisfies `b_i = -a_i λ_i`
//! with `λ_i` the corresponding root, so `|a_i| + |b_i| = |a_i|(1 + |λ_i|)`
//! and, since the `a_i` multiply to the leading coefficient,
//!
//! ```text
//! H(g) = |lc(g)| * prod_i (1 + |λ_i|).
//! ```
//!
//! That identity is how every height here is computed: certified root
//! enclosures feed exact interval products, and results are reported as
//! enclosures that are escalated until they meet the requested width.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::factor::factor_over_integers;
use crate::interval::{RatInterval, RealInterval};
use crate::matrix::{LatticeOperator, RationalMatrix, RationalVector};
use crate::poly::IntPolynomial;
use crate::roots::complex_roots_certified_exact;

/// Default target width for height enclosures.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Hard floor for argmin escalation: below this width remaining overlaps are
/// treated as exact ties and broken deterministically.
const TIE_FLOOR_LOG2: i64 = -128;

/// Invariant subspace realizing the minimum of `H` over restrictions.
#[derive(Clone, Debug)]
pub struct InvariantSubspaceResult {
    /// Basis `v, Tv, ..., T^(m-1)v` of the subspace, exact rational vectors.
    pub basis: Vec<RationalVector>,
    /// Matrix of the restriction of `T` in that basis (exact; integral for
    /// monic divisors).
    pub restriction: RationalMatrix,
    /// The irreducible divisor of the characteristic polynomial achieving
    /// the minimum.
    pub divisor: IntPolynomial,
    /// `H(divisor)`, which equals `H°(T)`.
    pub height: RealInterval,
}

/// `H(g)` for irreducible primitive `g`, enclosure width below `1e-9`.
pub fn height_irreducible(g: &IntPolynomial) -> Result<RealInterval> {
    height_irreducible_tol(g, DEFAULT_TOL)
}

/// `H(g)` with a caller-chosen enclosure width.
pub fn height_irreducible_tol(g: &IntPolynomial, tol: f64) -> Result<RealInterval> {
    let target = width_target(tol)?;
    if g.is_zero() || g.is_constant() {
        return Err(Error::InvalidInput(
            "height of an irreducible polynomial needs degree >= 1".into(),
        ));
    }
    let fac = factor_over_integers(g)?;
    if !fac.content.abs().is_one() || fac.factors.len() != 1 || fac.factors[0].1 != 1 {
        return Err(Error::InvalidInput(format!(
            "`{g}` is not irreducible over the integers"
        )));
    }
    Ok(irreducible_enclosure(&fac.factors[0].0, &target)?.to_real())
}

/// `H(f) = min H(g)` over irreducible integer divisors `g` of `f`.
pub fn height_poly(f: &IntPolynomial) -> Result<RealInterval> {
    height_poly_tol(f, DEFAULT_TOL)
}

pub fn height_poly_tol(f: &IntPolynomial, tol: f64) -> Result<RealInterval> {
    let target = width_target(tol)?;
    let (_, enc) = min_height_factor(f, &target)?;
    Ok(enc.to_real())
}

/// `H(T) = prod (1 + |λ_i|)` over the eigenvalues of `T` with algebraic
/// multiplicity.
pub fn h_of_operator(t: &LatticeOperator) -> Result<RealInterval> {
    h_of_operator_tol(t, DEFAULT_TOL)
}

pub fn h_of_operator_tol(t: &LatticeOperator, tol: f64) -> Result<RealInterval> {
    let target = width_target(tol)?;
    let char_poly = t.char_poly();
    let sf = char_poly.squarefree_decomposition()?;
    let mut root_target = &target / BigRational::from_integer(BigInt::from(16 * t.dim() as i64));
    loop {
        let mut acc = RatInterval::point(BigRational::one());
        for (part, mult) in &sf {
            let per_root = roots_factor_enclosure(part, &root_target)?;
            acc = acc.mul_nonneg(&per_root.pow_nonneg(*mult));
        }
        if acc.width() <= target {
            return Ok(acc.to_real());
        }
        root_target /= BigRational::from_integer(BigInt::from(1u64 << 20));
    }
}

/// `H°(T) = H(char_poly(T))`.
pub fn h_circ_of_operator(t: &LatticeOperator) -> Result<RealInterval> {
    h_circ_of_operator_tol(t, DEFAULT_TOL)
}

pub fn h_circ_of_operator_tol(t: &LatticeOperator, tol: f64) -> Result<RealInterval> {
    height_poly_tol(&t.char_poly(), tol)
}

/// Constructs the invariant subspace realizing `H°(T)`: for the minimizing
/// irreducible divisor `g` (smallest degree, then lexicographically smallest
/// coefficients among ties), take the first reduced-echelon basis vector `v`
/// of `Ker(g(T))` and the cyclic subspace spanned by `v, Tv, ..., T^(m-1)v`.
pub fn minimizing_invariant_subspace(t: &LatticeOperator) -> Result<InvariantSubspaceResult> {
    minimizing_invariant_subspace_tol(t, DEFAULT_TOL)
}

pub fn minimizing_invariant_subspace_tol(
    t: &LatticeOperator,
    tol: f64,
) -> Result<InvariantSubspaceResult> {
    let target = width_target(tol)?;
    let char_poly = t.char_poly();
    let (g, enc) = min_height_factor(&char_poly, &target)?;
    let kernel = t.kernel_of_poly(&g)?;
    let v = kernel
        .first()
        .expect("divisor of the characteristic polynomial has nontrivial kernel")
        .clone();
    let m = g.degree();
    let mut chain: Vec<RationalVector> = Vec::with_capacity(m);
    chain.push(v);
    for _ in 1..m {
        let next = t.apply_rational(chain.last().unwrap());
        chain.push(next);
    }
    let span = RationalMatrix::from_columns(t.dim(), &chain);
    let last_image = t.apply_rational(chain.last().unwrap());
    let coords = span
        .solve(&last_image)
        .expect("T maps the cyclic subspace into itself");
    let mut restriction = RationalMatrix::zero(m, m);
    for i in 0..m.saturating_sub(1) {
        restriction.set(i + 1, i, BigRational::one());
    }
    for (i, c) in coords.iter().enumerate() {
        restriction.set(i, m - 1, c.clone());
    }
    debug_assert_eq!(restriction.char_poly()?, g);
    Ok(InvariantSubspaceResult {
        basis: chain,
        restriction,
        divisor: g,
        height: enc.to_real(),
    })
}

/// Minimizing irreducible divisor of `f` together with a certified enclosure
/// of `H(f)`. Escalates precision until the argmin is unambiguous, then
/// breaks remaining (exact) ties by degree and coefficient order.
pub(crate) fn min_height_factor(
    f: &IntPolynomial,
    target: &BigRational,
) -> Result<(IntPolynomial, RatInterval)> {
    if f.is_zero() {
        return Err(Error::InvalidInput("height of the zero polynomial".into()));
    }
    let fac = factor_over_integers(f)?;
    let divisors = fac.distinct_factors();
    if divisors.is_empty() {
        return Err(Error::InfiniteHeight(format!(
            "`{f}` has no nonconstant integer divisors"
        )));
    }
    let mut width = target.clone();
    let floor = BigRational::new(BigInt::one(), BigInt::one() << (-TIE_FLOOR_LOG2 as usize));
    let mut encs: Vec<RatInterval> = divisors
        .iter()
        .map(|g| irreducible_enclosure(g, &width))
        .collect::<Result<_>>()?;
    loop {
        let min_hi = encs.iter().map(|e| e.hi.clone()).min().unwrap();
        let overlapping: Vec<usize> = (0..encs.len())
            .filter(|&i| encs[i].lo <= min_hi)
            .collect();
        if overlapping.len() == 1 || width <= floor {
            let min_lo = encs.iter().map(|e| e.lo.clone()).min().unwrap();
            let hull = RatInterval::new(min_lo, min_hi);
            // divisors are already sorted by (degree, coefficients)
            let chosen = overlapping[0];
            return Ok((divisors[chosen].clone(), hull));
        }
        width /= BigRational::from_integer(BigInt::from(1u64 << 24));
        for &i in &overlapping {
            encs[i] = irreducible_enclosure(&divisors[i], &width)?;
        }
    }
}

/// Enclosure of `H(g)` for primitive irreducible `g` (positive leading
/// coefficient), reaching the requested width.
fn irreducible_enclosure(g: &IntPolynomial, target: &BigRational) -> Result<RatInterval> {
    let lc = BigRational::from_integer(g.leading_coeff().abs());
    let mut root_target =
        target / (BigRational::from_integer(BigInt::from(16 * g.degree() as i64)) * &lc);
    loop {
        let per_root = roots_factor_enclosure(g, &root_target)?;
        let acc = per_root.scale_nonneg(&lc);
        if acc.width() <= *target {
            return Ok(acc);
        }
        root_target /= BigRational::from_integer(BigInt::from(1u64 << 20));
    }
}

/// `prod (1 + |λ|)` over the roots of a square-free polynomial, as an exact
/// interval, with root enclosures of radius at most `root_target`.
fn roots_factor_enclosure(sf: &IntPolynomial, root_target: &BigRational) -> Result<RatInterval> {
    let bits = bits_for(root_target);
    let roots = complex_roots_certified_exact(sf, root_target)?;
    let one = BigRational::one();
    let mut acc = RatInterval::point(BigRational::one());
    for r in &roots {
        let factor = r.abs_enclosure(bits).clamp_nonneg().add_scalar(&one);
        acc = acc.mul_nonneg(&factor);
    }
    Ok(acc)
}

fn bits_for(granularity: &BigRational) -> u64 {
    // enough dyadic bits that sqrt rounding is finer than the target
    let mut bits = 64u64;
    let mut q = BigRational::new(BigInt::one(), BigInt::one() << 64);
    while &q > granularity && bits < (1 << 15) {
        bits += 64;
        q /= BigRational::from_integer(BigInt::from(1u64 << 32));
        q /= BigRational::from_integer(BigInt::from(1u64 << 32));
    }
    bits
}

fn width_target(tol: f64) -> Result<BigRational> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    // aim at half the requested width so the final outward f64 rounding
    // cannot push the reported interval over the tolerance
    Ok(BigRational::from_float(tol).expect("finite") / BigRational::from_integer(BigInt::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use num_traits::Zero;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn linear_heights_are_exact_rationals() {
        // H(x-2) = 1 + 2 = 3
        let h = height_irreducible(&poly("x-2")).unwrap();
        assert!(h.contains(3.0) && h.width() < 1e-9);
        // H(2x-3) = 2 + 3 = 5 (= |lc| * (1 + 3/2))
        let h = height_irreducible(&poly("2*x-3")).unwrap();
        assert!(h.contains(5.0) && h.width() < 1e-9);
    }

    #[test]
    fn sqrt_two_height() {
        // H(x^2-2) = (1+sqrt(2))^2 = 3 + 2*sqrt(2)
        let expected = 3.0 + 2.0 * std::f64::consts::SQRT_2;
        let h = height_irreducible(&poly("x^2-2")).unwrap();
        assert!(h.contains(expected), "{h:?}");
        assert!(h.width() < 1e-9);
    }

    #[test]
    fn reducible_input_rejected() {
        assert!(matches!(
            height_irreducible(&poly("x^2-1")),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn height_poly_takes_minimum_over_divisors() {
        // (x-2)(x-3): min(3, 4) = 3
        let h = height_poly(&poly("x^2-5*x+6")).unwrap();
        assert!(h.contains(3.0) && h.width() < 1e-9);
        let h = height_poly(&poly("x^2-2")).unwrap();
        assert!(h.contains(3.0 + 2.0 * std::f64::consts::SQRT_2));
    }

    #[test]
    fn constant_has_infinite_height() {
        assert!(matches!(
            height_poly(&poly("5")),
            Err(Error::InfiniteHeight(_))
        ));
    }

    #[test]
    fn operator_heights() {
        let t = LatticeOperator::diagonal(&[2, 3]);
        let h = h_of_operator(&t).unwrap();
        assert!(h.contains(12.0) && h.width() < 1e-9);
        let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
        let h = h_of_operator(&t).unwrap();
        assert!(h.contains(3.0 + 2.0 * std::f64::consts::SQRT_2));
        let z = LatticeOperator::new(2, vec![BigInt::zero(); 4]).unwrap();
        let h = h_of_operator(&z).unwrap();
        assert!(h.contains(1.0) && h.width() < 1e-9);
    }

    #[test]
    fn h_circ_examples() {
        let h = h_circ_of_operator(&LatticeOperator::diagonal(&[2, 3])).unwrap();
        assert!(h.contains(3.0) && h.width() < 1e-9);
        let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
        let h = h_circ_of_operator(&t).unwrap();
        assert!(h.contains(3.0 + 2.0 * std::f64::consts::SQRT_2));
        // identity: char poly (x-1)^2, divisor x-1, H = 2
        let h = h_circ_of_operator(&LatticeOperator::identity(2)).unwrap();
        assert!(h.contains(2.0) && h.width() < 1e-9);
    }

    #[test]
    fn negative_identity_has_h_circ_exactly_two() {
        let t = LatticeOperator::diagonal(&[-1, -1, -1]);
        let h = h_circ_of_operator(&t).unwrap();
        assert_eq!(h.lo, 2.0);
        assert_eq!(h.hi, 2.0);
    }

    #[test]
    fn invariant_subspace_diag() {
        let t = LatticeOperator::diagonal(&[2, 3]);
        let r = minimizing_invariant_subspace(&t).unwrap();
        assert_eq!(r.divisor, poly("x-2"));
        assert_eq!(r.basis.len(), 1);
        assert_eq!(r.basis[0][0].to_f64().unwrap(), 1.0);
        assert_eq!(r.basis[0][1].to_f64().unwrap(), 0.0);
        assert_eq!(r.restriction.entry(0, 0).to_f64().unwrap(), 2.0);
        assert!(r.height.contains(3.0));
    }

    #[test]
    fn invariant_subspace_irreducible_char_poly_takes_whole_space() {
        let t = LatticeOperator::from_rows_i64(&[&[0, 2], &[1, 0]]);
        let r = minimizing_invariant_subspace(&t).unwrap();
        assert_eq!(r.divisor, poly("x^2-2"));
        assert_eq!(r.basis.len(), 2);
        assert_eq!(r.restriction.char_poly().unwrap(), poly("x^2-2"));
    }

    #[test]
    fn invariant_subspace_identity() {
        let r = minimizing_invariant_subspace(&LatticeOperator::identity(2)).unwrap();
        assert_eq!(r.divisor, poly("x-1"));
        assert_eq!(r.basis.len(), 1);
        assert!(r.height.contains(2.0));
        assert_eq!(r.restriction.entry(0, 0).to_f64().unwrap(), 1.0);
    }

    #[test]
    fn tie_between_mirror_divisors_breaks_lexicographically() {
        // x^2-4 = (x-2)(x+2), both have height 3; x-2 sorts first
        let (g, enc) = min_height_factor(
            &poly("x^2-4"),
            &BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64)),
        )
        .unwrap();
        assert_eq!(g, poly("x-2"));
        assert!(enc.to_real().contains(3.0));
    }

    #[test]
    fn tie_between_equal_irrational_heights_terminates() {
        // x^3-x-1 and its mirror x^3-x+1 have identical (irrational)
        // heights; escalation must hit the tie floor and break by the
        // coefficient order rather than diverge
        let f = poly("x^3-x-1").mul(&poly("x^3-x+1"));
        let (g, enc) = min_height_factor(
            &f,
            &BigRational::new(BigInt::one(), BigInt::from(1u64 << 40)),
        )
        .unwrap();
        assert_eq!(g, poly("x^3-x-1"));
        let h = enc.to_real();
        assert!(h.contains(8.119197397672374), "{h:?}");
        assert!(h.width() < 1e-9);
    }

    #[test]
    fn height_of_irreducible_is_at_least_one() {
        for s in ["x-2", "x+5", "2*x-3", "x^2-2", "x^2+1", "x^3-x-1", "x"] {
            let h = height_irreducible(&poly(s)).unwrap();
            assert!(h.hi >= 1.0, "H({s}) = {h:?}");
        }
    }
}
