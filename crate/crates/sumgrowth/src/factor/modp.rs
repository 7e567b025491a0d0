//! Dense univariate polynomial arithmetic over a small prime field, plus
//! distinct-degree and Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polynomial over F_p, ascending coefficients, normalized (no top zeros).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyP {
    pub coeffs: Vec<u64>,
    pub p: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

impl PolyP {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyP { coeffs, p }
    }

    pub fn zero(p: u64) -> Self {
        PolyP { coeffs: vec![], p }
    }

    pub fn one(p: u64) -> Self {
        PolyP { coeffs: vec![1], p }
    }

    pub fn x(p: u64) -> Self {
        PolyP { coeffs: vec![0, 1], p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn make_monic(&self) -> PolyP {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        PolyP::new(
            self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect(),
            self.p,
        )
    }

    #[cfg(test)]
    pub fn add(&self, other: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        PolyP::new(coeffs, p)
    }

    pub fn sub(&self, other: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        PolyP::new(coeffs, p)
    }

    pub fn mul(&self, other: &PolyP) -> PolyP {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return PolyP::zero(p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ((coeffs[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        PolyP::new(coeffs, p)
    }

    /// Division with remainder; divisor must be nonzero.
    pub fn divrem(&self, d: &PolyP) -> (PolyP, PolyP) {
        let p = self.p;
        assert!(!d.is_zero());
        if self.is_zero() || self.coeffs.len() < d.coeffs.len() {
            return (PolyP::zero(p), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        let mut quo = vec![0u64; rem.len() - dn + 1];
        let dl_inv = invmod(d.lc(), p);
        for k in (0..quo.len()).rev() {
            let top = rem[k + dn - 1];
            if top == 0 {
                continue;
            }
            let q = mulmod(top, dl_inv, p);
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let sub = mulmod(q, dc, p);
                rem[k + i] = (rem[k + i] + p - sub) % p;
            }
            quo[k] = q;
        }
        (PolyP::new(quo, p), PolyP::new(rem, p))
    }

    pub fn rem(&self, d: &PolyP) -> PolyP {
        self.divrem(d).1
    }

    pub fn gcd(&self, other: &PolyP) -> PolyP {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> PolyP {
        let p = self.p;
        if self.coeffs.len() <= 1 {
            return PolyP::zero(p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect();
        PolyP::new(coeffs, p)
    }

    /// `self^e mod m` with a big-integer exponent.
    pub fn powmod_big(&self, e: &BigUint, m: &PolyP) -> PolyP {
        let p = self.p;
        let mut acc = PolyP::one(p);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn powmod(&self, e: u64, m: &PolyP) -> PolyP {
        self.powmod_big(&BigUint::from(e), m)
    }
}

/// Extended Euclid: returns monic `g = gcd(a, b)` and `(s, t)` with
/// `s*a + t*b = g` in F_p[x].
pub fn extended_gcd(a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
    let p = a.p;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (PolyP::one(p), PolyP::zero(p));
    let (mut t0, mut t1) = (PolyP::zero(p), PolyP::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    // normalize to monic gcd
    if !r0.is_zero() && r0.lc() != 1 {
        let inv = invmod(r0.lc(), p);
        let scale = PolyP::new(vec![inv], p);
        r0 = r0.mul(&scale);
        s0 = s0.mul(&scale);
        t0 = t0.mul(&scale);
    }
    (r0, s0, t0)
}

/// True when `f mod p` is square-free (and keeps its degree mod p).
pub fn is_squarefree_mod_p(f: &PolyP) -> bool {
    !f.is_zero() && f.gcd(&f.derivative()).is_one()
}

/// Factors a monic square-free polynomial over F_p into monic irreducibles,
/// sorted for determinism. p must be odd.
pub fn factor_squarefree_monic(f: &PolyP) -> Vec<PolyP> {
    let p = f.p;
    assert!(p % 2 == 1, "equal-degree splitting requires odd p");
    let mut out = Vec::new();
    // distinct-degree stage
    let mut g = f.clone();
    let mut h = PolyP::x(p);
    let mut k = 0usize;
    while !g.is_one() {
        k += 1;
        if 2 * k > g.degree() {
            out.push((g.clone(), g.degree()));
            break;
        }
        h = h.powmod(p, &g);
        let d = h.sub(&PolyP::x(p)).gcd(&g);
        if !d.is_one() {
            out.push((d.clone(), k));
            g = g.divrem(&d).0;
            h = h.rem(&g);
        }
    }
    // equal-degree stage
    let mut factors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_ac70_u64 ^ p);
    for (prod, deg) in out {
        equal_degree_split(&prod, deg, &mut factors, &mut rng);
    }
    factors.sort_by(|a, b| a.coeffs.len().cmp(&b.coeffs.len()).then(a.coeffs.cmp(&b.coeffs)));
    factors
}

fn equal_degree_split(f: &PolyP, deg: usize, out: &mut Vec<PolyP>, rng: &mut ChaCha8Rng) {
    let p = f.p;
    if f.degree() == deg {
        out.push(f.make_monic());
        return;
    }
    // exponent (p^deg - 1) / 2
    let e = (BigUint::from(p).pow(deg as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = PolyP::new(
            (0..f.degree()).map(|_| rng.gen_range(0..p)).collect(),
            p,
        );
        if a.is_zero() || a.is_one() {
            continue;
        }
        let b = a.powmod_big(&e, f).sub(&PolyP::one(p));
        let d = b.gcd(f);
        if !d.is_one() && d.degree() < f.degree() {
            equal_degree_split(&d, deg, out, rng);
            equal_degree_split(&f.divrem(&d).0, deg, out, rng);
            return;
        }
    }
}
