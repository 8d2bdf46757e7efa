//! Exact integer polynomial multiplication for the cross-block pair tables.

use serde::{Deserialize, Serialize};

const NTT_MOD: u64 = 998_244_353;
const NTT_ROOT: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Convolution {
    #[default]
    Schoolbook,
    /// Number-theoretic transform modulo 998244353. Exact while every
    /// product coefficient stays below the modulus.
    Ntt,
}

impl Convolution {
    pub fn multiply(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        match self {
            Convolution::Schoolbook => schoolbook(a, b),
            Convolution::Ntt => ntt_multiply(a, b),
        }
    }
}

/// Abstract cost of one product in the transform model: `s * log2(s)` for
/// the padded transform size `s`.
pub fn model_cost(len_a: usize, len_b: usize) -> u64 {
    if len_a == 0 || len_b == 0 {
        return 0;
    }
    let s = (len_a + len_b - 1).next_power_of_two().max(2) as u64;
    s * s.trailing_zeros() as u64
}

pub fn schoolbook(a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    a %= NTT_MOD;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % NTT_MOD;
        }
        a = a * a % NTT_MOD;
        e >>= 1;
    }
    r
}

fn ntt(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(NTT_ROOT, (NTT_MOD - 1) / len as u64);
        if invert {
            w = pow_mod(w, NTT_MOD - 2);
        }
        for start in (0..n).step_by(len) {
            let mut wn = 1;
            for k in 0..len / 2 {
                let u = a[start + k];
                let v = a[start + k + len / 2] * wn % NTT_MOD;
                a[start + k] = (u + v) % NTT_MOD;
                a[start + k + len / 2] = (u + NTT_MOD - v) % NTT_MOD;
                wn = wn * w % NTT_MOD;
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, NTT_MOD - 2);
        for x in a.iter_mut() {
            *x = *x * inv % NTT_MOD;
        }
    }
}

pub fn ntt_multiply(a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let mut fa: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let mut fb: Vec<u64> = b.iter().map(|&x| x as u64).collect();
    fa.resize(size, 0);
    fb.resize(size, 0);
    ntt(&mut fa, false);
    ntt(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % NTT_MOD;
    }
    ntt(&mut fa, true);
    fa.truncate(out_len);
    fa.into_iter().map(|x| x as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_products() {
        assert_eq!(schoolbook(&[1, 1], &[1, 1]), vec![1, 2, 1]);
        assert_eq!(ntt_multiply(&[1, 1], &[1, 1]), vec![1, 2, 1]);
        assert!(schoolbook(&[], &[1]).is_empty());
        assert_eq!(
            ntt_multiply(&[0, 1, 0, 1], &[1, 0, 1]),
            vec![0, 1, 0, 2, 0, 1]
        );
    }

    proptest! {
        #[test]
        fn backends_agree(a in proptest::collection::vec(0u32..2, 1..70),
                          b in proptest::collection::vec(0u32..2, 1..70)) {
            prop_assert_eq!(schoolbook(&a, &b), ntt_multiply(&a, &b));
        }
    }
}
