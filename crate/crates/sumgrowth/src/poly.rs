//! Exact integer-coefficient polynomials.
//!
//! Coefficients are arbitrary-precision integers stored in ascending degree
//! order (index `i` holds the coefficient of `x^i`). The zero polynomial is
//! the empty sequence; otherwise the top coefficient is nonzero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial::new(coeffs)
    }

    /// Convenience constructor from machine integers, ascending degree.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monic `x - r`.
    pub fn linear(r: i64) -> Self {
        IntPolynomial::from_i64(&[-r, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of a nonzero polynomial. Panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading_coeff().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(coeffs)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
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
        IntPolynomial::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> IntPolynomial {
        let mut base = self.clone();
        let mut acc = IntPolynomial::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division over the integers: returns `Some(q)` with `self = q*d`
    /// iff `d` divides `self` in `Z[x]`.
    pub fn exact_div(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        let mut quo = vec![BigInt::zero(); rem.len() - dn + 1];
        let dl = d.leading_coeff();
        for k in (0..quo.len()).rev() {
            let top = std::mem::take(&mut rem[k + dn - 1]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dl);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate().take(dn - 1) {
                rem[k + i] -= &q * dc;
            }
            quo[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPolynomial::new(quo))
        } else {
            None
        }
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg f - deg d + 1) * f`
    /// divided by `d`.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        assert!(!d.is_zero());
        if self.is_zero() || self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let dl = d.leading_coeff().clone();
        let mut rem = self.clone();
        let mut steps = self.degree() as i64 - d.degree() as i64 + 1;
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let shift = rem.degree() - d.degree();
            let top = rem.leading_coeff().clone();
            rem = rem
                .scale(&dl)
                .sub(&d.mul(&IntPolynomial::monomial(top, shift)));
            steps -= 1;
        }
        // Keep the pseudo-remainder normalization uniform regardless of how
        // many reduction steps actually fired.
        while steps > 0 {
            rem = rem.scale(&dl);
            steps -= 1;
        }
        rem
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient, paired with the
    /// signed content so that `content * primitive = self`.
    pub fn primitive_parts(&self) -> (BigInt, IntPolynomial) {
        if self.is_zero() {
            return (BigInt::zero(), IntPolynomial::zero());
        }
        let mut content = self.content();
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let prim = IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| c.div_rem(&content).0)
                .collect(),
        );
        (content, prim)
    }

    pub fn primitive_part(&self) -> IntPolynomial {
        self.primitive_parts().1
    }

    /// Primitive gcd with positive leading coefficient, via the primitive
    /// polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.primitive_part().abs_content_scaled(other);
        }
        if other.is_zero() {
            return self.primitive_part().abs_content_scaled(self);
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.scale(&content)
    }

    // gcd(f, 0) carries |content(f)|, not just the primitive part.
    fn abs_content_scaled(&self, original: &IntPolynomial) -> IntPolynomial {
        self.scale(&original.content())
    }

    /// Square-free decomposition by Yun's algorithm: returns pairs
    /// `(a_i, i)` with `self = content * prod a_i^i`, each `a_i` primitive,
    /// square-free, of positive leading coefficient and degree >= 1.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(IntPolynomial, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "square-free decomposition of the zero polynomial".into(),
            ));
        }
        let f = self.primitive_part();
        if f.is_constant() {
            return Ok(Vec::new());
        }
        let fp = f.derivative();
        let g = f.gcd(&fp);
        let mut out = Vec::new();
        let mut c = f.exact_div(&g).expect("gcd divides");
        let mut d = fp.exact_div(&g).expect("gcd divides").sub(&c.derivative());
        let mut mult = 1u32;
        while !c.is_constant() {
            let a = c.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), mult));
            }
            c = c.exact_div(&a).expect("gcd divides");
            d = d.exact_div(&a).expect("gcd divides").sub(&c.derivative());
            mult += 1;
        }
        Ok(out)
    }

    /// Square-free part: product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<IntPolynomial> {
        let mut out = IntPolynomial::one();
        for (a, _) in self.squarefree_decomposition()? {
            out = out.mul(&a);
        }
        Ok(out)
    }

    /// Reverses coefficients: `x^deg * f(1/x)`.
    pub fn reversed(&self) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPolynomial::new(coeffs)
    }

    /// `f(-x)`.
    pub fn compose_neg(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Deterministic factor ordering: degree first, then the coefficient
    /// sequence compared lexicographically from the constant term up.
    pub fn cmp_factor_order(&self, other: &IntPolynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders in the text grammar the parser accepts, descending powers:
    /// `x^2-5*x+6`, `6*x^2-6`, `-x+3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the polynomial text grammar: signed integer coefficients with
    /// optional `*` and `x^k` terms, whitespace-insensitive.
    fn from_str(s: &str) -> Result<IntPolynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        let bytes = compact.as_bytes();
        let mut pos = 0usize;
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bad = |pos: usize| {
            Error::InvalidInput(format!(
                "malformed polynomial `{compact_for_err}` at byte {pos}",
                compact_for_err = compact.clone()
            ))
        };
        while pos < bytes.len() {
            let mut sign = 1i32;
            // sign run
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            if pos >= bytes.len() {
                return Err(bad(pos));
            }
            // optional integer literal
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let has_digits = pos > start;
            let mag: BigInt = if has_digits {
                compact[start..pos]
                    .parse()
                    .map_err(|_| bad(start))?
            } else {
                BigInt::one()
            };
            // optional '*'
            let mut saw_star = false;
            if pos < bytes.len() && bytes[pos] == b'*' {
                if !has_digits {
                    return Err(bad(pos));
                }
                saw_star = true;
                pos += 1;
            }
            // optional variable with power
            let mut power = 0usize;
            if pos < bytes.len() && (bytes[pos] == b'x' || bytes[pos] == b'X') {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let pstart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == pstart {
                        return Err(bad(pos));
                    }
                    power = compact[pstart..pos]
                        .parse()
                        .map_err(|_| bad(pstart))?;
                }
            } else {
                if saw_star {
                    return Err(bad(pos));
                }
                if !has_digits {
                    return Err(bad(pos));
                }
            }
            if power >= coeffs.len() {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += BigInt::from(sign) * mag;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}
