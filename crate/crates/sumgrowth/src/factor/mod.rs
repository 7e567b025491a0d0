//! Factorization of integer polynomials into primitive irreducibles:
//! square-free decomposition, factorization modulo a small prime, quadratic
//! Hensel lifting, and subset recombination. A rational-root based check
//! doubles as an independent irreducibility oracle for degree <= 3.

mod hensel;
mod modp;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

use hensel::lift_factorization;
use modp::{factor_squarefree_monic, is_squarefree_mod_p, PolyP};

/// Complete factorization over the integers: a signed integer content and
/// primitive irreducible factors with multiplicities, in deterministic order
/// (degree, then coefficient sequence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> IntPolynomial {
        let mut out = IntPolynomial::constant(self.content.clone());
        for (g, mult) in &self.factors {
            out = out.mul(&g.pow(*mult));
        }
        out
    }

    /// The distinct irreducible factors, without multiplicities.
    pub fn distinct_factors(&self) -> Vec<IntPolynomial> {
        self.factors.iter().map(|(g, _)| g.clone()).collect()
    }
}

/// Factors a nonzero integer polynomial into content times primitive
/// irreducible factors (positive leading coefficients), deterministically
/// ordered.
pub fn factor_over_integers(f: &IntPolynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let (content, prim) = f.primitive_parts();
    let mut factors: Vec<(IntPolynomial, u32)> = Vec::new();
    if !prim.is_constant() {
        for (sf, mult) in prim.squarefree_decomposition()? {
            for g in factor_primitive_squarefree(&sf) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp_factor_order(&b.0).then(a.1.cmp(&b.1)));
    let result = Factorization { content, factors };
    debug_assert_eq!(result.reconstruct(), *f);
    Ok(result)
}

/// True when `f` is irreducible over the integers (up to sign), i.e. equals
/// `±g` for a primitive irreducible `g` of degree >= 1.
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() || f.is_constant() {
        return Ok(false);
    }
    let fac = factor_over_integers(f)?;
    Ok(fac.content.abs().is_one() && fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Independent irreducibility oracle for degree <= 3: a primitive polynomial
/// of degree 2 or 3 is reducible over the integers iff it has a rational
/// root. Only intended for small coefficients (divisor enumeration).
pub fn is_irreducible_deg_le3_naive(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() || f.is_constant() {
        return Ok(false);
    }
    let d = f.degree();
    if d > 3 {
        return Err(Error::InvalidInput(
            "naive irreducibility oracle only handles degree <= 3".into(),
        ));
    }
    if !f.content().is_one() {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() {
        return Ok(false); // x divides
    }
    for p in positive_divisors(&f.coeff(0)) {
        for q in positive_divisors(f.leading_coeff()) {
            for sign in [1i64, -1] {
                let root = BigRational::new(&p * BigInt::from(sign), q.clone());
                if f.eval_rational(&root).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Factors a primitive square-free polynomial of degree >= 1 into primitive
/// irreducibles with positive leading coefficients.
fn factor_primitive_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    debug_assert!(f.content().is_one() && f.leading_coeff().is_positive());
    if f.degree() == 1 {
        return vec![f.clone()];
    }
    let lc = f.leading_coeff().clone();
    if lc.is_one() {
        return factor_monic_squarefree(f);
    }
    // Monicize: F(x) = lc^(d-1) * f(x/lc), factor, substitute back.
    let d = f.degree();
    let mut coeffs = Vec::with_capacity(d + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        if i == d {
            coeffs.push(BigInt::one());
        } else {
            coeffs.push(c * lc.pow((d - 1 - i) as u32));
        }
    }
    let monic = IntPolynomial::new(coeffs);
    let mut out = Vec::new();
    for g in factor_monic_squarefree(&monic) {
        // g(lc * x), made primitive, is the matching factor of f
        let mapped = IntPolynomial::new(
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect(),
        )
        .primitive_part();
        out.push(mapped);
    }
    debug_assert_eq!(
        out.iter().fold(IntPolynomial::one(), |acc, g| acc.mul(g)),
        *f
    );
    out
}

/// Zassenhaus on a monic square-free polynomial of degree >= 2.
fn factor_monic_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    // Pick a few odd primes keeping f square-free mod p; use the one with
    // the fewest modular factors.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 4 {
        if is_prime_u64(p) {
            let fp = reduce_mod_p(f, p);
            if fp.coeffs.len() == f.coeffs().len() && is_squarefree_mod_p(&fp) {
                let factors = factor_squarefree_monic(&fp.make_monic());
                tried += 1;
                let better = match &best {
                    None => true,
                    Some((_, fs)) => factors.len() < fs.len(),
                };
                if better {
                    best = Some((p, factors));
                }
                if best.as_ref().is_some_and(|(_, fs)| fs.len() == 1) {
                    break;
                }
            }
        }
        p += 2;
    }
    let (p, modular) = best.expect("some prime keeps a square-free poly square-free");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Landau-Mignotte: any factor g of monic f has
    // |g|_inf <= 2^deg(f) * sqrt(deg(f)+1) * |f|_inf.
    let d = f.degree() as u32;
    let bound = (BigInt::one() << d)
        * int_sqrt_ceil(&BigUint::from(d as u64 + 1))
        * f.max_abs_coeff();
    let target = BigInt::from(2) * &bound + BigInt::one();
    let (lifted, modulus) = lift_factorization(f, &modular, p, &target);

    recombine(f, lifted, &modulus)
}

/// Subset recombination of lifted modular factors.
fn recombine(
    f: &IntPolynomial,
    lifted: Vec<IntPolynomial>,
    modulus: &BigInt,
) -> Vec<IntPolynomial> {
    let mut remaining: Vec<IntPolynomial> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut progressed = false;
        let combos = combinations(remaining.len(), size);
        for idx in combos {
            let mut cand = IntPolynomial::one();
            for &i in &idx {
                cand = mul_mod(&cand, &remaining[i], modulus);
            }
            let cand = centered(&cand, modulus);
            if cand.is_constant() {
                continue;
            }
            if let Some(q) = current.exact_div(&cand) {
                found.push(cand);
                current = q;
                // drop used modular factors, restart at the same size
                let mut keep = Vec::new();
                for (i, g) in remaining.into_iter().enumerate() {
                    if !idx.contains(&i) {
                        keep.push(g);
                    }
                }
                remaining = keep;
                progressed = true;
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if !current.is_constant() {
        found.push(current);
    }
    found
}

fn mul_mod(a: &IntPolynomial, b: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let prod = a.mul(b);
    IntPolynomial::new(
        prod.coeffs()
            .iter()
            .map(|c| {
                let r = c % m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn centered(a: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m / BigInt::from(2);
    IntPolynomial::new(
        a.coeffs()
            .iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect(),
    )
}

fn reduce_mod_p(f: &IntPolynomial, p: u64) -> PolyP {
    let pm = BigInt::from(p);
    PolyP::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c % &pm;
                let r = if r.is_negative() { r + &pm } else { r };
                r.to_u64().unwrap()
            })
            .collect(),
        p,
    )
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// ceil(sqrt(n)) for nonnegative big integers.
fn int_sqrt_ceil(n: &BigUint) -> BigInt {
    let s = n.sqrt();
    let s = if &(&s * &s) < n { s + BigUint::one() } else { s };
    BigInt::from(s)
}

/// All index subsets of `{0..n}` of the given size, lexicographic.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn p(s: &str) -> IntPolynomial {
        IntPolynomial::from_str(s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let fac = factor_over_integers(&p("x^2-1")).unwrap();
        assert_eq!(fac.content, BigInt::one());
        assert_eq!(fac.factors, vec![(p("x-1"), 1), (p("x+1"), 1)]);
    }

    #[test]
    fn content_extraction() {
        let fac = factor_over_integers(&p("6*x^2-6")).unwrap();
        assert_eq!(fac.content, BigInt::from(6));
        assert_eq!(fac.factors, vec![(p("x-1"), 1), (p("x+1"), 1)]);
    }

    #[test]
    fn x2_minus_2_is_irreducible() {
        // independent oracle first: no rational root and degree 2
        assert!(is_irreducible_deg_le3_naive(&p("x^2-2")).unwrap());
        let fac = factor_over_integers(&p("x^2-2")).unwrap();
        assert_eq!(fac.content, BigInt::one());
        assert_eq!(fac.factors, vec![(p("x^2-2"), 1)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            factor_over_integers(&IntPolynomial::zero()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn multiplicities_and_sign() {
        // -2 (x-1)^2 (x^2+1)
        let f = p("x-1").pow(2).mul(&p("x^2+1")).scale(&BigInt::from(-2));
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(-2));
        assert_eq!(fac.factors, vec![(p("x-1"), 2), (p("x^2+1"), 1)]);
        assert_eq!(fac.reconstruct(), f);
    }

    #[test]
    fn nonmonic_irreducible() {
        let fac = factor_over_integers(&p("2*x-3")).unwrap();
        assert_eq!(fac.content, BigInt::one());
        assert_eq!(fac.factors, vec![(p("2*x-3"), 1)]);
        // 2x^2 - 3 is irreducible (roots +- sqrt(3/2))
        let fac = factor_over_integers(&p("2*x^2-3")).unwrap();
        assert_eq!(fac.factors, vec![(p("2*x^2-3"), 1)]);
        // 6x^2 - x - 2 = (2x+1)(3x-2); 3x-2 sorts first (constant -2 < 1)
        let fac = factor_over_integers(&p("6*x^2-x-2")).unwrap();
        assert_eq!(fac.factors, vec![(p("3*x-2"), 1), (p("2*x+1"), 1)]);
    }

    #[test]
    fn degree_four_split() {
        // (x^2-2)(x^2-3); x^2-3 sorts first (constant -3 < -2)
        let f = p("x^2-2").mul(&p("x^2-3"));
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.factors, vec![(p("x^2-3"), 1), (p("x^2-2"), 1)]);
        // x^4+1 is irreducible over Z though reducible mod every prime
        let fac = factor_over_integers(&p("x^4+1")).unwrap();
        assert_eq!(fac.factors, vec![(p("x^4+1"), 1)]);
    }

    #[test]
    fn agrees_with_naive_oracle_up_to_degree_3() {
        let polys = [
            "x^2-2", "x^2-4", "x^2+x+1", "x^3-x-1", "x^3-1", "x^3+8",
            "2*x^2-3", "3*x^2+5*x+2", "x^2", "x^3-2*x", "5*x^3-5",
        ];
        for s in polys {
            let f = p(s);
            let naive_sf = {
                // oracle needs primitive square-free input to mean anything
                let prim = f.primitive_part();
                prim.squarefree_decomposition().unwrap().len() == 1
                    && prim.squarefree_decomposition().unwrap()[0].1 == 1
                    && is_irreducible_deg_le3_naive(&prim).unwrap()
            };
            let full = is_irreducible(&f).unwrap();
            assert_eq!(naive_sf, full, "disagreement on {s}");
        }
    }

    #[test]
    fn low_degree_output_factors_pass_the_naive_oracle() {
        let products = [
            "x^6-1", "x^4-5*x^2+6", "6*x^3-6*x", "x^5-x", "12*x^4-3",
        ];
        for s in products {
            let fac = factor_over_integers(&p(s)).unwrap();
            for (g, _) in &fac.factors {
                if g.degree() <= 3 {
                    assert!(
                        is_irreducible_deg_le3_naive(g).unwrap(),
                        "{s}: factor {g} fails the rational-root oracle"
                    );
                }
            }
        }
    }

    #[test]
    fn cyclotomic_like_products() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let fac = factor_over_integers(&p("x^6-1")).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (p("x-1"), 1),
                (p("x+1"), 1),
                (p("x^2-x+1"), 1),
                (p("x^2+x+1"), 1),
            ]
        );
    }
}
