//! Polynomial rolling hashes over byte strings.
//!
//! A string `s` hashes to `sum(code(s[i]) * base^(len - 1 - i)) mod p`.
//! Symbol codes are never zero, so strings of different content collide only
//! when `base` is a root of their difference polynomial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::{PLACEHOLDER, WILDCARD};

/// 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Code reserved for the rare-symbol placeholder `#`.
pub const PLACEHOLDER_CODE: u64 = 257;

/// Symbol map: byte `v` hashes as `v + 1`, the placeholder as 257.
#[inline]
pub fn symbol_code(sym: u8) -> u64 {
    if sym == PLACEHOLDER {
        PLACEHOLDER_CODE
    } else {
        sym as u64 + 1
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Base, prime modulus and the power table `base^e` for `e <= max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashContext {
    base: u64,
    modulus: u64,
    powers: Vec<u64>,
}

impl HashContext {
    /// Seeded context over the fixed Mersenne prime. Requires `n^3 < p`.
    pub fn choose(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("maximum length must be positive".into()));
        }
        let cube = (n as u128).pow(3);
        if cube >= MERSENNE_61 as u128 {
            return Err(Error::Parameter(format!(
                "length {n} too large: n^3 must stay below the modulus"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = rng.gen_range(1..MERSENNE_61);
        Self::from_parts(base, MERSENNE_61, n)
    }

    pub fn from_parts(base: u64, modulus: u64, max_len: usize) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::Parameter(format!("modulus {modulus} is not prime")));
        }
        if base == 0 || base >= modulus {
            return Err(Error::Parameter(format!("base {base} not in [1, p-1]")));
        }
        let mut powers = Vec::with_capacity(max_len + 1);
        powers.push(1);
        for e in 1..=max_len {
            powers.push(mul_mod(powers[e - 1], base, modulus));
        }
        Ok(Self {
            base,
            modulus,
            powers,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn max_len(&self) -> usize {
        self.powers.len() - 1
    }

    /// `base^e mod p`; panics past the table, which callers size up front.
    #[inline]
    pub fn power(&self, e: usize) -> u64 {
        self.powers[e]
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len > self.max_len() {
            Err(Error::Capacity {
                len,
                max: self.max_len(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        add_mod(a, self.modulus - b % self.modulus, self.modulus)
    }

    /// Hash of a sequence of raw codes.
    pub fn hash_codes<I: IntoIterator<Item = u64>>(&self, codes: I) -> u64 {
        codes.into_iter().fold(0, |acc, c| {
            add_mod(
                mul_mod(acc, self.base, self.modulus),
                c % self.modulus,
                self.modulus,
            )
        })
    }

    /// Full hash of `s` under [`symbol_code`].
    pub fn hash(&self, s: &[u8]) -> u64 {
        self.hash_codes(s.iter().map(|&c| symbol_code(c)))
    }

    /// Hash of `u . v` from `hash(u)` and `hash(v)`, `|v| = len2`.
    #[inline]
    pub fn concat(&self, h1: u64, h2: u64, len2: usize) -> u64 {
        add_mod(
            mul_mod(h1, self.powers[len2], self.modulus),
            h2,
            self.modulus,
        )
    }

    /// Hash of `s` with the coordinates in `wildcards` deleted.
    ///
    /// Built block by block from the maximal wildcard-free intervals.
    pub fn masked_hash(&self, s: &[u8], wildcards: &[usize]) -> u64 {
        let mut acc = 0;
        let mut start = 0;
        for &w in wildcards.iter().chain(std::iter::once(&s.len())) {
            if w > start {
                let block = &s[start..w];
                acc = self.concat(acc, self.hash(block), block.len());
            }
            start = w + 1;
        }
        acc
    }
}

/// Segment tree of `(length, hash)` pairs supporting point updates and
/// range hashes. Capacity is rounded up to a power of two; padding leaves are
/// empty strings.
#[derive(Debug, Clone)]
pub struct RangeHashTree {
    len: usize,
    cap: usize,
    nodes: Vec<(usize, u64)>,
}

impl RangeHashTree {
    pub fn build(s: &[u8], ctx: &HashContext) -> Self {
        Self::build_codes(s.iter().map(|&c| symbol_code(c)), s.len(), ctx)
    }

    pub fn build_codes<I: IntoIterator<Item = u64>>(
        codes: I,
        len: usize,
        ctx: &HashContext,
    ) -> Self {
        let cap = len.next_power_of_two().max(1);
        let mut nodes = vec![(0usize, 0u64); 2 * cap];
        for (i, c) in codes.into_iter().take(len).enumerate() {
            nodes[cap + i] = (1, c % ctx.modulus());
        }
        for v in (1..cap).rev() {
            nodes[v] = Self::combine(nodes[2 * v], nodes[2 * v + 1], ctx);
        }
        Self { len, cap, nodes }
    }

    #[inline]
    fn combine(left: (usize, u64), right: (usize, u64), ctx: &HashContext) -> (usize, u64) {
        (left.0 + right.0, ctx.concat(left.1, right.1, right.0))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn root_hash(&self) -> u64 {
        self.nodes[1].1
    }

    pub fn update(&mut self, i: usize, sym: u8, ctx: &HashContext) -> Result<()> {
        self.update_code(i, symbol_code(sym), ctx)
    }

    pub fn update_code(&mut self, i: usize, code: u64, ctx: &HashContext) -> Result<()> {
        if i >= self.len {
            return Err(Error::OutOfRange {
                pos: i,
                len: self.len,
            });
        }
        let mut v = self.cap + i;
        self.nodes[v] = (1, code % ctx.modulus());
        v /= 2;
        while v >= 1 {
            self.nodes[v] = Self::combine(self.nodes[2 * v], self.nodes[2 * v + 1], ctx);
            v /= 2;
        }
        Ok(())
    }

    /// Hash of the half-open range `[l, r)`. Empty ranges hash to 0.
    pub fn range_hash(&self, l: usize, r: usize, ctx: &HashContext) -> Result<u64> {
        if l > r || r > self.len {
            return Err(Error::InvalidRange {
                l,
                r,
                len: self.len,
            });
        }
        Ok(self.range_hash_unchecked(l, r, ctx))
    }

    pub(crate) fn range_hash_unchecked(&self, l: usize, r: usize, ctx: &HashContext) -> u64 {
        // Canonical segments are visited left to right on the left side and
        // right to left on the right side, so the two accumulators are kept
        // apart and joined at the end.
        let (mut lo, mut hi) = (l + self.cap, r + self.cap);
        let mut left = (0usize, 0u64);
        let mut right = (0usize, 0u64);
        while lo < hi {
            if lo & 1 == 1 {
                left = Self::combine(left, self.nodes[lo], ctx);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                right = Self::combine(self.nodes[hi], right, ctx);
            }
            lo /= 2;
            hi /= 2;
        }
        Self::combine(left, right, ctx).1
    }
}

pub(crate) fn check_symbol(sym: u8) -> Result<()> {
    if sym == PLACEHOLDER {
        Err(Error::ReservedSymbol(PLACEHOLDER as char))
    } else {
        Ok(())
    }
}

pub(crate) fn check_solid(sym: u8) -> Result<()> {
    check_symbol(sym)?;
    if sym == WILDCARD {
        Err(Error::WildcardNotAllowed)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> HashContext {
        HashContext::from_parts(3, 101, 16).unwrap()
    }

    #[test]
    fn toy_polynomials() {
        let ctx = toy();
        assert_eq!(ctx.hash_codes([]), 0);
        assert_eq!(ctx.hash_codes([1, 2]), 5);
        assert_eq!(ctx.hash_codes([1, 2, 1]), 16);
    }

    #[test]
    fn concat_identities() {
        let ctx = toy();
        let a = ctx.hash_codes([1]);
        let b = ctx.hash_codes([2]);
        assert_eq!(ctx.concat(a, b, 1), 5);
        assert_eq!(ctx.concat(a, 0, 0), a);
        assert_eq!(ctx.concat(0, b, 1), b);
    }

    #[test]
    fn primality() {
        assert!(is_prime(MERSENNE_61));
        assert!(is_prime(101));
        assert!(!is_prime(MERSENNE_61 - 2));
        assert!(!is_prime(1));
        assert!(HashContext::from_parts(3, 100, 4).is_err());
    }

    #[test]
    fn choose_is_deterministic() {
        let a = HashContext::choose(1000, 7).unwrap();
        let b = HashContext::choose(1000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), MERSENNE_61);
        assert!((1_000_000u128).pow(3) < a.modulus() as u128);
        assert!(HashContext::choose(1_000_000, 1).is_ok());
        assert!(HashContext::choose(2_000_000, 1).is_err());
        assert!(HashContext::choose(0, 1).is_err());
    }

    #[test]
    fn distinct_seeds_give_distinct_bases() {
        let mut bases: Vec<u64> = (0..100)
            .map(|s| HashContext::choose(10, s).unwrap().base())
            .collect();
        bases.sort_unstable();
        bases.dedup();
        assert_eq!(bases.len(), 100);
    }

    #[test]
    fn power_table() {
        let ctx = HashContext::choose(50, 3).unwrap();
        assert_eq!(ctx.power(0), 1);
        for e in 1..=50 {
            assert_eq!(ctx.power(e), ctx.mul(ctx.power(e - 1), ctx.base()));
        }
    }

    #[test]
    fn masked_examples() {
        let ctx = HashContext::choose(16, 5).unwrap();
        assert_eq!(ctx.masked_hash(b"abc", &[]), ctx.hash(b"abc"));
        assert_eq!(ctx.masked_hash(b"abc", &[0, 1, 2]), 0);
        assert_eq!(ctx.masked_hash(b"?b??a", &[0, 2, 3]), ctx.hash(b"ba"));
    }

    #[test]
    fn tree_basics() {
        let ctx = HashContext::choose(16, 9).unwrap();
        let t = RangeHashTree::build(b"abc", &ctx);
        assert_eq!(t.root_hash(), ctx.hash(b"abc"));
        assert_eq!(t.range_hash(1, 2, &ctx).unwrap(), symbol_code(b'b'));
        let empty = RangeHashTree::build(b"", &ctx);
        assert!(empty.is_empty());
        assert!(empty.range_hash(0, 1, &ctx).is_err());
        assert_eq!(empty.range_hash(0, 0, &ctx).unwrap(), 0);
    }

    #[test]
    fn tree_update_errors_and_noops() {
        let ctx = HashContext::choose(16, 9).unwrap();
        let mut t = RangeHashTree::build(b"abcab", &ctx);
        assert!(t.update(5, b'a', &ctx).is_err());
        let before = t.root_hash();
        t.update(2, b'c', &ctx).unwrap();
        assert_eq!(t.root_hash(), before);
        let mut u = t.clone();
        t.update(0, b'x', &ctx).unwrap();
        t.update(4, b'y', &ctx).unwrap();
        u.update(4, b'y', &ctx).unwrap();
        u.update(0, b'x', &ctx).unwrap();
        assert_eq!(t.root_hash(), u.root_hash());
        assert_eq!(t.root_hash(), ctx.hash(b"xbcay"));
    }
}
