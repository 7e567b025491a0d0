//! Certified complex root enclosures.
//!
//! Approximations come from Aberth-Ehrlich simultaneous iteration in f64;
//! certification is exact: with Weierstrass corrections
//! `W_i = p(z_i) / (lc * prod_{j!=i} (z_i - z_j))` evaluated in rational
//! arithmetic, every root of `p` lies in the union of the disks
//! `D(z_i, n*|W_i|)`, and when those disks are pairwise disjoint each one
//! contains exactly one root. Centers are refined by Newton steps in dyadic
//! rational arithmetic with doubling working precision until every radius
//! meets the requested tolerance.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{rat_to_f64_up, sqrt_bounds, RatInterval};
use crate::poly::IntPolynomial;

/// Complex number with exact rational components.
#[derive(Clone, Debug, PartialEq)]
struct QC {
    re: BigRational,
    im: BigRational,
}

impl QC {
    fn new(re: BigRational, im: BigRational) -> Self {
        QC { re, im }
    }

    fn from_f64(z: Complex64) -> Option<Self> {
        Some(QC {
            re: BigRational::from_float(z.re)?,
            im: BigRational::from_float(z.im)?,
        })
    }

    fn zero() -> Self {
        QC::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Self {
        QC::new(self.re.clone(), -self.im.clone())
    }

    fn sub(&self, o: &QC) -> QC {
        QC::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &QC) -> QC {
        QC::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn mul_int(&self, c: &BigInt) -> QC {
        let c = BigRational::from_integer(c.clone());
        QC::new(&self.re * &c, &self.im * &c)
    }

    fn div(&self, o: &QC) -> QC {
        let d = o.norm_sqr();
        assert!(!d.is_zero(), "complex division by zero");
        QC::new(
            (&self.re * &o.re + &self.im * &o.im) / &d,
            (&self.im * &o.re - &self.re * &o.im) / &d,
        )
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Rounds both components to `bits` fractional dyadic bits.
    fn truncate(&self, bits: u64) -> QC {
        QC::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }
}

fn round_dyadic(q: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (q * BigRational::from_integer(scale.clone())).floor().to_integer();
    BigRational::new(scaled, scale)
}

fn eval_qc(f: &IntPolynomial, z: &QC) -> QC {
    let mut acc = QC::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += BigRational::from_integer(c.clone());
    }
    acc
}

/// Certified enclosure of one complex root: an exact dyadic center and an
/// exact radius bounding the distance to the true root.
#[derive(Clone, Debug)]
pub struct ComplexEnclosure {
    center_re: BigRational,
    center_im: BigRational,
    radius: BigRational,
}

impl ComplexEnclosure {
    pub fn re(&self) -> f64 {
        self.center_re.to_f64().unwrap_or(f64::NAN)
    }

    pub fn im(&self) -> f64 {
        self.center_im.to_f64().unwrap_or(f64::NAN)
    }

    /// Certified radius, rounded up.
    pub fn radius(&self) -> f64 {
        rat_to_f64_up(&self.radius)
    }

    pub fn center_exact(&self) -> (&BigRational, &BigRational) {
        (&self.center_re, &self.center_im)
    }

    pub fn radius_exact(&self) -> &BigRational {
        &self.radius
    }

    /// The center lies exactly on the real axis (so, post-certification,
    /// the enclosed root is real).
    pub fn is_real(&self) -> bool {
        self.center_im.is_zero()
    }

    /// Exact enclosure of `|root|`.
    pub fn abs_enclosure(&self, bits: u64) -> RatInterval {
        let center_abs = sqrt_bounds(
            &(&self.center_re * &self.center_re + &self.center_im * &self.center_im),
            bits,
        );
        RatInterval::new(
            (&center_abs.lo - &self.radius).max(BigRational::zero()),
            &center_abs.hi + &self.radius,
        )
    }
}

/// Certified enclosures of all complex roots of a square-free polynomial,
/// each radius at most `tol`, pairwise disjoint, conjugate-symmetric.
pub fn complex_roots_certified(f: &IntPolynomial, tol: f64) -> Result<Vec<ComplexEnclosure>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let target = BigRational::from_float(tol)
        .ok_or_else(|| Error::InvalidInput("tolerance must be finite".into()))?;
    complex_roots_certified_exact(f, &target)
}

/// Same as [`complex_roots_certified`] with an exact rational radius target.
pub fn complex_roots_certified_exact(
    f: &IntPolynomial,
    target: &BigRational,
) -> Result<Vec<ComplexEnclosure>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "root enclosures of the zero polynomial".into(),
        ));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    if !f.gcd(&f.derivative()).is_constant() {
        return Err(Error::InvalidInput(
            "polynomial must be square-free (apply square-free decomposition first)".into(),
        ));
    }
    if f.degree() == 1 {
        // exact rational root -b/a, radius zero
        let root = BigRational::new(-f.coeff(0), f.coeff(1));
        return Ok(vec![ComplexEnclosure {
            center_re: root,
            center_im: BigRational::zero(),
            radius: BigRational::zero(),
        }]);
    }

    for attempt in 0..3 {
        if let Some(out) = try_certify(f, target, attempt)? {
            return Ok(out);
        }
    }
    Err(Error::PrecisionFailure(format!(
        "could not certify roots of {f} to radius {}",
        rat_to_f64_up(target)
    )))
}

fn try_certify(
    f: &IntPolynomial,
    target: &BigRational,
    attempt: u32,
) -> Result<Option<Vec<ComplexEnclosure>>> {
    let n = f.degree();
    let approx = aberth(f, attempt);
    let Some(mut centers) = pair_conjugates(&approx) else {
        return Ok(None);
    };
    let deriv = f.derivative();

    // sqrt granularity for the certified radius bound must sit below the
    // requested radius or the bound can never reach it
    let cert_bits = (bits_below(target) + 32).max(128);
    let mut bits: u64 = 192;
    let max_bits: u64 = 1 << 14;
    loop {
        if let Some(radii) = certify(f, &centers, cert_bits) {
            let ok = radii.iter().all(|r| r <= target) && disks_disjoint(&centers, &radii);
            if ok {
                let mut out: Vec<ComplexEnclosure> = centers
                    .into_iter()
                    .zip(radii)
                    .map(|(c, radius)| ComplexEnclosure {
                        center_re: c.re,
                        center_im: c.im,
                        radius,
                    })
                    .collect();
                out.sort_by(|a, b| {
                    a.center_re
                        .cmp(&b.center_re)
                        .then_with(|| a.center_im.cmp(&b.center_im))
                });
                debug_assert_eq!(out.len(), n);
                return Ok(Some(out));
            }
        }
        if bits > max_bits {
            return Ok(None);
        }
        newton_round(f, &deriv, &mut centers, bits);
        bits *= 2;
    }
}

/// One Newton step per representative center at the given dyadic precision,
/// mirroring conjugate pairs and keeping snapped-real centers real.
fn newton_round(f: &IntPolynomial, deriv: &IntPolynomial, centers: &mut [QC], bits: u64) {
    let m = centers.len();
    let mut done = vec![false; m];
    for i in 0..m {
        if done[i] {
            continue;
        }
        if centers[i].im.is_zero() {
            let p = eval_qc(f, &centers[i]);
            let dp = eval_qc(deriv, &centers[i]);
            if !dp.re.is_zero() {
                let step = &p.re / &dp.re;
                centers[i].re = round_dyadic(&(&centers[i].re - step), bits);
            }
            done[i] = true;
        } else {
            let p = eval_qc(f, &centers[i]);
            let dp = eval_qc(deriv, &centers[i]);
            if !dp.is_zero() {
                centers[i] = centers[i].sub(&p.div(&dp)).truncate(bits);
            }
            done[i] = true;
            // mirror the matching conjugate center
            let conj = centers[i].conj();
            if let Some(j) = (0..m).find(|&j| j != i && !done[j] && centers[j].im.is_negative() != centers[i].im.is_negative()) {
                // nearest unfinished center of opposite imaginary sign
                let mut best = j;
                let mut best_d = conj.sub(&centers[j]).norm_sqr();
                for k in j + 1..m {
                    if k != i && !done[k] {
                        let d = conj.sub(&centers[k]).norm_sqr();
                        if d < best_d {
                            best_d = d;
                            best = k;
                        }
                    }
                }
                centers[best] = conj;
                done[best] = true;
            }
        }
    }
}

/// Dyadic bits needed to resolve quantities of the target's magnitude.
fn bits_below(target: &BigRational) -> u64 {
    let mut bits = 0u64;
    let mut q = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while &q > target && bits < (1 << 15) {
        q *= &half;
        bits += 1;
    }
    bits
}

/// Exact Weierstrass radii `n * |W_i|` (rounded up dyadically); `None` when
/// two centers coincide.
fn certify(f: &IntPolynomial, centers: &[QC], bits: u64) -> Option<Vec<BigRational>> {
    let n = centers.len();
    let lc = f.leading_coeff();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut den = QC::new(BigRational::one(), BigRational::zero()).mul_int(lc);
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = centers[i].sub(&centers[j]);
            if d.is_zero() {
                return None;
            }
            den = den.mul(&d);
        }
        let num = eval_qc(f, &centers[i]);
        // |W|^2 exactly, then a tight upper bound on n*|W|
        let w2 = num.norm_sqr() / den.norm_sqr();
        let bound = sqrt_bounds(&w2, bits).hi * BigRational::from_integer(BigInt::from(n as i64));
        radii.push(bound);
    }
    Some(radii)
}

fn disks_disjoint(centers: &[QC], radii: &[BigRational]) -> bool {
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            let d2 = centers[i].sub(&centers[j]).norm_sqr();
            let rr = &radii[i] + &radii[j];
            if d2 <= &rr * &rr {
                return false;
            }
        }
    }
    true
}

/// Matches approximations into conjugate-symmetric exact centers: snapped
/// real representatives and exact conjugate pairs. `None` when the pairing
/// is inconsistent (caller restarts the f64 stage).
fn pair_conjugates(approx: &[Complex64]) -> Option<Vec<QC>> {
    let n = approx.len();
    let snap_tol = 1e-7;
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut order: Vec<usize> = (0..n).collect();
    // deterministic processing order: by (re, im)
    order.sort_by(|&a, &b| {
        approx[a]
            .re
            .total_cmp(&approx[b].re)
            .then(approx[a].im.total_cmp(&approx[b].im))
    });
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = approx[i];
        if z.im.abs() <= snap_tol * (1.0 + z.norm()) {
            let q = QC::from_f64(Complex64::new(z.re, 0.0))?;
            out.push(q);
            continue;
        }
        // nearest unused conjugate partner
        let zc = z.conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, zj) in approx.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (zj - zc).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best?;
        if d > 1e-4 * (1.0 + z.norm()) {
            return None; // no credible partner: pairing failed
        }
        used[j] = true;
        let rep = if z.im > 0.0 { z } else { zc };
        let q = QC::from_f64(rep)?;
        out.push(q.conj());
        out.push(q);
    }
    (out.len() == n).then_some(out)
}

/// Aberth-Ehrlich simultaneous iteration in f64. Best effort: quality is
/// enforced later by exact certification.
fn aberth(f: &IntPolynomial, attempt: u32) -> Vec<Complex64> {
    let n = f.degree();
    let scale = f.max_abs_coeff().to_f64().unwrap_or(f64::MAX).max(1.0);
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0) / scale)
        .collect();
    let lead = coeffs[n];
    // Cauchy bound on root magnitudes
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0f64, f64::max);
    let offset = 0.43 + 0.71 * attempt as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset;
            Complex64::from_polar(radius * (0.5 + 0.3 * ((k % 3) as f64) / 3.0), theta)
        })
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };

    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() == 0.0 {
                Complex64::new(1e-12, 1e-12)
            } else {
                p / dp
            };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        continue;
                    }
                    s += d.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() == 0.0 { w } else { w / denom };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn poly(s: &str) -> IntPolynomial {
        IntPolynomial::from_str(s).unwrap()
    }

    #[test]
    fn sqrt_two_enclosures() {
        let roots = complex_roots_certified(&poly("x^2-2"), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.is_real()));
        assert!((roots[0].re() + std::f64::consts::SQRT_2).abs() < 1e-11);
        assert!((roots[1].re() - std::f64::consts::SQRT_2).abs() < 1e-11);
        for r in &roots {
            assert!(r.radius() <= 1e-12);
        }
    }

    #[test]
    fn imaginary_pair() {
        let roots = complex_roots_certified(&poly("x^2+1"), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].im() + 1.0).abs() < 1e-11);
        assert!((roots[1].im() - 1.0).abs() < 1e-11);
        // exactly conjugate centers
        assert_eq!(roots[0].center_exact().1, &-roots[1].center_exact().1.clone());
        assert!((roots[0].re()).abs() < 1e-11);
    }

    #[test]
    fn linear_is_exact() {
        let roots = complex_roots_certified(&poly("x-7"), 1e-12).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].radius(), 0.0);
        assert_eq!(roots[0].re(), 7.0);
        // nonmonic: 2x-3 has root 3/2
        let roots = complex_roots_certified(&poly("2*x-3"), 1e-12).unwrap();
        assert_eq!(roots[0].re(), 1.5);
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = poly("x-1").mul(&poly("x-1"));
        assert!(matches!(
            complex_roots_certified(&f, 1e-9),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn cubic_with_one_real_root() {
        // x^3 - x - 1: real root ~1.3247 (plastic number), complex pair
        let roots = complex_roots_certified(&poly("x^3-x-1"), 1e-13).unwrap();
        assert_eq!(roots.len(), 3);
        let real_count = roots.iter().filter(|r| r.is_real()).count();
        assert_eq!(real_count, 1);
        let plastic = roots.iter().find(|r| r.is_real()).unwrap();
        assert!((plastic.re() - 1.3247179572447458).abs() < 1e-12);
    }

    #[test]
    fn vieta_product_matches_constant_term() {
        // product of |roots| of x^4 - 10x^2 + 1 equals |constant| = 1
        let f = poly("x^4-10*x^2+1");
        let roots = complex_roots_certified(&f, 1e-12).unwrap();
        let prod: f64 = roots.iter().map(|r| {
            let (re, im) = r.center_exact();
            (re.to_f64().unwrap().powi(2) + im.to_f64().unwrap().powi(2)).sqrt()
        }).product();
        assert!((prod - 1.0).abs() < 1e-9);
    }

    #[test]
    fn enclosures_really_contain_roots() {
        // check sqrt(2) against the exact dyadic enclosure
        let roots = complex_roots_certified(&poly("x^2-2"), 1e-15).unwrap();
        let pos = &roots[1];
        let abs = pos.abs_enclosure(128);
        // |root| = sqrt(2): interval must contain it
        let two = BigRational::from_integer(BigInt::from(2));
        assert!(&abs.lo * &abs.lo <= two);
        assert!(&abs.hi * &abs.hi >= two);
    }
}
