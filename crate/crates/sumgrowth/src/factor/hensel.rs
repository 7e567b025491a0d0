//! Quadratic Hensel lifting of a monic modular factorization, multifactor
//! via a balanced product tree.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::modp::{extended_gcd, PolyP};
use crate::poly::IntPolynomial;

/// Polynomial with coefficients reduced into `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyM {
    pub coeffs: Vec<BigInt>,
    pub m: BigInt,
}

impl PolyM {
    pub fn new(mut coeffs: Vec<BigInt>, m: &BigInt) -> Self {
        for c in &mut coeffs {
            *c = c.mod_floor(m);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyM { coeffs, m: m.clone() }
    }

    pub fn from_int_poly(f: &IntPolynomial, m: &BigInt) -> Self {
        PolyM::new(f.coeffs().to_vec(), m)
    }

    pub fn from_poly_p(f: &PolyP, m: &BigInt) -> Self {
        PolyM::new(f.coeffs.iter().map(|&c| BigInt::from(c)).collect(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn reduce(&self, m: &BigInt) -> PolyM {
        PolyM::new(self.coeffs.clone(), m)
    }

    pub fn add(&self, other: &PolyM) -> PolyM {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i) + other.coeff(i))
            .collect();
        PolyM::new(coeffs, &self.m)
    }

    pub fn sub(&self, other: &PolyM) -> PolyM {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i) - other.coeff(i))
            .collect();
        PolyM::new(coeffs, &self.m)
    }

    fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn mul(&self, other: &PolyM) -> PolyM {
        if self.is_zero() || other.is_zero() {
            return PolyM::new(vec![], &self.m);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyM::new(coeffs, &self.m)
    }

    /// Division with remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &PolyM) -> (PolyM, PolyM) {
        assert!(d.is_monic(), "divisor must be monic");
        if self.is_zero() || self.coeffs.len() < d.coeffs.len() {
            return (PolyM::new(vec![], &self.m), self.clone());
        }
        let dn = d.coeffs.len();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dn + 1];
        for k in (0..quo.len()).rev() {
            let q = rem[k + dn - 1].mod_floor(&self.m);
            if q.is_zero() {
                rem[k + dn - 1] = BigInt::zero();
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quo[k] = q;
        }
        (PolyM::new(quo, &self.m), PolyM::new(rem, &self.m))
    }

    /// Lifts to integer coefficients in the symmetric range `(-m/2, m/2]`.
    pub fn centered(&self) -> IntPolynomial {
        let half = &self.m / BigInt::from(2);
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| {
                    if c > &half {
                        c - &self.m
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }
}

trait ModFloor {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// One quadratic Hensel step: from `f = g*h (mod m)`, `s*g + t*h = 1 (mod m)`
/// with everything monic, produce the same data mod `m^2`.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &PolyM,
    g: &PolyM,
    h: &PolyM,
    s: &PolyM,
    t: &PolyM,
) -> (PolyM, PolyM, PolyM, PolyM) {
    let m2 = &f.m * &f.m;
    let f2 = f.reduce(&m2);
    let g2 = g.reduce(&m2);
    let h2 = h.reduce(&m2);
    let s2 = s.reduce(&m2);
    let t2 = t.reduce(&m2);

    let e = f2.sub(&g2.mul(&h2));
    let (q, r) = s2.mul(&e).divrem_monic(&h2);
    let g_new = g2.add(&t2.mul(&e)).add(&q.mul(&g2));
    let h_new = h2.add(&r);

    let e2 = s2.mul(&g_new).add(&t2.mul(&h_new)).sub(&PolyM::new(vec![BigInt::one()], &m2));
    let (q2, r2) = s2.mul(&e2).divrem_monic(&h_new);
    let s_new = s2.sub(&r2);
    let t_new = t2.sub(&t2.mul(&e2)).sub(&q2.mul(&g_new));

    (g_new, h_new, s_new, t_new)
}

/// Lifts the monic factorization `f = prod factors (mod p)` to modulus
/// `p^(2^j) >= target`, returning monic lifted factors reduced mod that
/// modulus. `f` must be monic and square-free mod p.
pub fn lift_factorization(
    f: &IntPolynomial,
    factors: &[PolyP],
    p: u64,
    target: &BigInt,
) -> (Vec<IntPolynomial>, BigInt) {
    // modulus p^(2^j) >= target
    let mut modulus = BigInt::from(p);
    while &modulus < target {
        modulus = &modulus * &modulus;
    }
    let fm = PolyM::from_int_poly(f, &modulus);
    let mut out = Vec::with_capacity(factors.len());
    lift_tree(&fm, factors, p, &mut out);
    let lifted = out.iter().map(PolyM::centered).collect();
    (lifted, modulus)
}

fn lift_tree(f: &PolyM, factors: &[PolyP], p: u64, out: &mut Vec<PolyM>) {
    if factors.len() == 1 {
        out.push(f.clone());
        return;
    }
    let mid = factors.len() / 2;
    let mut gp = PolyP::one(p);
    for fac in &factors[..mid] {
        gp = gp.mul(fac);
    }
    let mut hp = PolyP::one(p);
    for fac in &factors[mid..] {
        hp = hp.mul(fac);
    }
    let (one, s, t) = extended_gcd(&gp, &hp);
    assert!(one.is_one(), "tree halves must be coprime mod p");

    let pm = BigInt::from(p);
    let mut g = PolyM::from_poly_p(&gp, &pm);
    let mut h = PolyM::from_poly_p(&hp, &pm);
    let mut sm = PolyM::from_poly_p(&s, &pm);
    let mut tm = PolyM::from_poly_p(&t, &pm);
    let mut fm = f.reduce(&pm);
    while fm.m < f.m {
        let next = &fm.m * &fm.m;
        fm = f.reduce(&next);
        let (g2, h2, s2, t2) = hensel_step(&fm, &g, &h, &sm, &tm);
        g = g2;
        h = h2;
        sm = s2;
        tm = t2;
    }
    lift_tree(&g.reduce(&f.m), &factors[..mid], p, out);
    lift_tree(&h.reduce(&f.m), &factors[mid..], p, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn lifts_x2_minus_1_mod_7_to_high_power() {
        let f = IntPolynomial::from_str("x^2-1").unwrap();
        let p = 7u64;
        let factors = vec![PolyP::new(vec![6, 1], p), PolyP::new(vec![1, 1], p)];
        let target = BigInt::from(10_000_000u64);
        let (lifted, modulus) = lift_factorization(&f, &factors, p, &target);
        assert!(modulus >= target);
        assert_eq!(lifted.len(), 2);
        // centered lifts of x-1 and x+1 are exactly those polynomials
        assert_eq!(lifted[0], IntPolynomial::from_str("x-1").unwrap());
        assert_eq!(lifted[1], IntPolynomial::from_str("x+1").unwrap());
    }

    #[test]
    fn lifted_product_matches_mod_modulus() {
        // f = (x^2+1)(x-3)(x+4) has three coprime factors mod 13
        let f = IntPolynomial::from_str("x^2+1")
            .unwrap()
            .mul(&IntPolynomial::from_str("x-3").unwrap())
            .mul(&IntPolynomial::from_str("x+4").unwrap());
        let p = 13u64;
        let fp = PolyP::new(
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = c % BigInt::from(p);
                    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
                    u64::try_from(r).unwrap()
                })
                .collect(),
            p,
        );
        let factors = super::super::modp::factor_squarefree_monic(&fp);
        assert_eq!(factors.len(), 4); // x^2+1 splits mod 13
        let target = BigInt::from(1_000_000_007u64);
        let (lifted, modulus) = lift_factorization(&f, &factors, p, &target);
        let mut prod = IntPolynomial::one();
        for g in &lifted {
            prod = prod.mul(g);
        }
        let pm = PolyM::from_int_poly(&prod.sub(&f), &modulus);
        assert!(pm.is_zero(), "product must equal f mod modulus");
    }
}
