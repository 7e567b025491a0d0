//! Certified real intervals.
//!
//! Heights are typically irrational, so every height-like quantity is
//! computed as an exact rational enclosure (`RatInterval`) and only rounded
//! outward to `f64` endpoints (`RealInterval`) at the public boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Exact enclosure with rational endpoints. Internal workhorse.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        RatInterval::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn add_scalar(&self, c: &BigRational) -> RatInterval {
        RatInterval::new(&self.lo + c, &self.hi + c)
    }

    /// Product of intervals with nonnegative endpoints.
    pub fn mul_nonneg(&self, other: &RatInterval) -> RatInterval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RatInterval::new(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    /// Integer power of an interval with nonnegative endpoints.
    pub fn pow_nonneg(&self, k: u32) -> RatInterval {
        debug_assert!(!self.lo.is_negative());
        let mut out = RatInterval::point(BigRational::one());
        for _ in 0..k {
            out = out.mul_nonneg(self);
        }
        out
    }

    pub fn scale_nonneg(&self, c: &BigRational) -> RatInterval {
        debug_assert!(!c.is_negative());
        RatInterval::new(&self.lo * c, &self.hi * c)
    }

    /// Clamp the lower endpoint up to zero (for magnitudes).
    pub fn clamp_nonneg(&self) -> RatInterval {
        if self.lo.is_negative() {
            RatInterval::new(BigRational::zero(), self.hi.clone().max(BigRational::zero()))
        } else {
            self.clone()
        }
    }

    pub fn overlaps(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `self` certainly below `other` (no overlap).
    pub fn strictly_below(&self, other: &RatInterval) -> bool {
        self.hi < other.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo <= *q && *q <= self.hi
    }

    /// Outward-rounded f64 interval.
    pub fn to_real(&self) -> RealInterval {
        RealInterval {
            lo: rat_to_f64_down(&self.lo),
            hi: rat_to_f64_up(&self.hi),
        }
    }
}

/// Two-sided enclosure `[lo, hi]` of a real quantity, endpoints rounded
/// outward so the true value is always inside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RealInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        RealInterval { lo: x, hi: x }
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn radius(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &RealInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Renders `midpoint ± radius` with the given number of significant
    /// digits on the midpoint (CLI default is 10).
    pub fn render(&self, sig_digits: usize) -> String {
        let mid = self.midpoint();
        let rad = self.radius();
        if rad == 0.0 {
            format!("{} ± 0", format_significant(mid, sig_digits))
        } else {
            format!("{} ± {:.2e}", format_significant(mid, sig_digits), rad)
        }
    }
}

impl std::fmt::Display for RealInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render(10))
    }
}

/// Formats with a fixed number of significant digits, plain notation for
/// moderate magnitudes.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", sig.saturating_sub(1))
    }
}

/// Next f64 toward +infinity.
pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

/// Next f64 toward -infinity.
pub fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// Largest f64 that is <= q.
pub fn rat_to_f64_down(q: &BigRational) -> f64 {
    let mut x = q.to_f64().unwrap_or(f64::MAX);
    if !x.is_finite() {
        return if x > 0.0 { f64::MAX } else { f64::MIN };
    }
    // to_f64 is approximate; nudge until provably on the correct side
    while exceeds(x, q) {
        x = next_down(x);
    }
    while !exceeds(next_up(x), q) && next_up(x).is_finite() {
        let up = next_up(x);
        if exceeds(up, q) {
            break;
        }
        x = up;
    }
    x
}

/// Smallest f64 that is >= q.
pub fn rat_to_f64_up(q: &BigRational) -> f64 {
    -rat_to_f64_down(&-q.clone())
}

fn exceeds(x: f64, q: &BigRational) -> bool {
    match BigRational::from_float(x) {
        Some(r) => r > *q,
        None => x > 0.0, // infinite x exceeds any rational
    }
}

/// Dyadic enclosure `[s/2^k, (s+1)/2^k]` of `sqrt(q)` for `q >= 0`, with
/// `2^-k` below the requested granularity.
pub fn sqrt_bounds(q: &BigRational, bits: u64) -> RatInterval {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    if q.is_zero() {
        return RatInterval::point(BigRational::zero());
    }
    let two_k = BigInt::one() << bits;
    let prod = q * BigRational::from_integer(&two_k * &two_k);
    let scaled = prod.floor().to_integer();
    let s = BigInt::from(scaled.to_biguint().expect("nonnegative").sqrt());
    if prod.is_integer() && &s * &s == scaled {
        // exact square: collapse to a point
        return RatInterval::point(BigRational::new(s, two_k));
    }
    let lo = BigRational::new(s.clone(), two_k.clone());
    let hi = BigRational::new(s + BigInt::one(), two_k);
    RatInterval::new(lo, hi)
}

/// Floor square root of a nonnegative big integer.
pub fn int_sqrt(n: &BigInt) -> BigInt {
    BigInt::from(n.to_biguint().expect("nonnegative").sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_enclosure_is_tight_and_correct() {
        let enc = sqrt_bounds(&rat(2, 1), 80);
        // 2 is inside [lo^2, hi^2]
        assert!(&enc.lo * &enc.lo <= rat(2, 1));
        assert!(&enc.hi * &enc.hi >= rat(2, 1));
        let width = enc.width();
        assert!(width < rat(1, 1_000_000_000_000_000_000));
        let r = enc.to_real();
        assert!(r.contains(std::f64::consts::SQRT_2));
    }

    #[test]
    fn directed_rounding_brackets_exact_rationals() {
        for (n, d) in [(1, 3), (2, 3), (22, 7), (-1, 3), (355, 113), (1, 1)] {
            let q = rat(n, d);
            let lo = rat_to_f64_down(&q);
            let hi = rat_to_f64_up(&q);
            assert!(BigRational::from_float(lo).unwrap() <= q);
            assert!(BigRational::from_float(hi).unwrap() >= q);
            assert!(hi - lo <= (hi.abs() + 1.0) * f64::EPSILON * 2.0);
        }
    }

    #[test]
    fn interval_products_stay_ordered() {
        let a = RatInterval::new(rat(1, 1), rat(3, 2));
        let b = RatInterval::new(rat(2, 1), rat(5, 2));
        let p = a.mul_nonneg(&b);
        assert_eq!(p.lo, rat(2, 1));
        assert_eq!(p.hi, rat(15, 4));
        assert!(a.pow_nonneg(3).hi == rat(27, 8));
    }

    #[test]
    fn rendering_has_ten_significant_digits() {
        let i = RealInterval::new(5.828427124, 5.828427125);
        let s = i.render(10);
        assert!(s.starts_with("5.82842712"), "{s}");
        assert_eq!(format_significant(3.0, 10), "3.000000000");
        assert_eq!(format_significant(0.0, 10), "0");
    }
}
