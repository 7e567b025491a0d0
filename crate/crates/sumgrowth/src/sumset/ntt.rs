//! Number-theoretic transform over F_998244353 for exact indicator
//! convolutions. Counts never reach the modulus for desk-scale sets, so a
//! coefficient is nonzero mod p iff the true representation count is.

/// NTT-friendly prime: 119 * 2^23 + 1, primitive root 3.
pub const P: u64 = 998244353;
/// Transforms support lengths up to 2^23.
pub const MAX_LEN_LOG2: u32 = 23;

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    a %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % P;
        }
        a = a * a % P;
        e >>= 1;
    }
    acc
}

fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut ws: Vec<u64> = Vec::with_capacity(n / 2);
    let mut len = 2usize;
    while len <= n {
        let root = if invert {
            pow_mod(pow_mod(3, (P - 1) / len as u64), P - 2)
        } else {
            pow_mod(3, (P - 1) / len as u64)
        };
        let half = len / 2;
        ws.clear();
        ws.push(1);
        for i in 1..half {
            ws.push(ws[i - 1] * root % P);
        }
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = a[start + k];
                let v = a[start + k + half] * ws[k] % P;
                let s = u + v;
                a[start + k] = if s >= P { s - P } else { s };
                let d = u + P - v;
                a[start + k + half] = if d >= P { d - P } else { d };
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = pow_mod(n as u64, P - 2);
        for x in a.iter_mut() {
            *x = *x * n_inv % P;
        }
    }
}

/// Support of the convolution of two 0/1 indicator vectors given by their
/// index sets. `result_len` bounds every possible index sum plus one.
/// Returns the sorted indices with nonzero representation count.
///
/// Exactness requires `min(|a|, |b|) < P`, which bounds every true count.
pub fn convolve_support(a_idx: &[usize], b_idx: &[usize], result_len: usize) -> Vec<usize> {
    assert!(a_idx.len().min(b_idx.len()) < P as usize);
    let n = result_len.next_power_of_two();
    assert!(n <= 1 << MAX_LEN_LOG2, "convolution length over NTT limit");
    let mut fa = vec![0u64; n];
    for &i in a_idx {
        fa[i] = 1;
    }
    let mut fb = vec![0u64; n];
    for &i in b_idx {
        fb[i] = 1;
    }
    rayon::join(|| transform(&mut fa, false), || transform(&mut fb, false));
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * *y % P;
    }
    drop(fb);
    transform(&mut fa, true);
    fa.iter()
        .enumerate()
        .filter_map(|(i, &c)| (c != 0).then_some(i))
        .collect()
}
