#![allow(dead_code)]

use rand::Rng;

pub const WILDCARD: u8 = b'?';

/// Two-sided wildcard test of `p` against `t[s..s + m]`.
pub fn matches_at(t: &[u8], p: &[u8], s: usize) -> bool {
    p.iter()
        .zip(&t[s..s + p.len()])
        .all(|(&a, &b)| a == WILDCARD || b == WILDCARD || a == b)
}

pub fn occurrences(t: &[u8], p: &[u8]) -> Vec<usize> {
    if p.len() > t.len() {
        return Vec::new();
    }
    (0..=t.len() - p.len())
        .filter(|&s| matches_at(t, p, s))
        .collect()
}

pub fn exists(t: &[u8], p: &[u8]) -> bool {
    !occurrences(t, p).is_empty()
}

/// Number of `i` in `[l, r - d - 1]` with `x[i] = a` and `x[i + d + 1] = b`.
pub fn pair_count(x: &[u32], l: usize, r: usize, a: u32, b: u32, d: usize) -> u64 {
    if r < l + d + 1 {
        return 0;
    }
    (l..=r - d - 1)
        .filter(|&i| x[i] == a && x[i + d + 1] == b)
        .count() as u64
}

pub fn letters(sigma: usize) -> Vec<u8> {
    (b'a'..b'a' + sigma as u8).collect()
}

pub fn random_string(rng: &mut impl Rng, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect()
}

/// Places `count` wildcards at distinct random positions.
pub fn sprinkle_wildcards(rng: &mut impl Rng, s: &mut [u8], count: usize) {
    let count = count.min(s.len());
    for i in rand::seq::index::sample(rng, s.len(), count) {
        s[i] = WILDCARD;
    }
}
