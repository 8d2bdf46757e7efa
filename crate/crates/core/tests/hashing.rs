mod common;

use std::collections::HashMap;

use dynwild_core::hashing::symbol_code;
use dynwild_core::{HashContext, RangeHashTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{letters, random_string};

#[test]
fn every_range_agrees_with_direct_hash() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ctx = HashContext::choose(128, 11).unwrap();
    for len in [1, 2, 3, 17, 64, 127, 128] {
        let s = random_string(&mut rng, len, &letters(4));
        let tree = RangeHashTree::build(&s, &ctx);
        assert_eq!(tree.root_hash(), ctx.hash(&s));
        for l in 0..=len {
            for r in l..=len {
                assert_eq!(
                    tree.range_hash(l, r, &ctx).unwrap(),
                    ctx.hash(&s[l..r]),
                    "[{l},{r}) of {len}"
                );
            }
        }
    }
}

#[test]
fn ranges_follow_updates() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ctx = HashContext::choose(100, 3).unwrap();
    let mut s = random_string(&mut rng, 100, &letters(3));
    let mut tree = RangeHashTree::build(&s, &ctx);
    for _ in 0..2000 {
        let i = rng.gen_range(0..s.len());
        let c = b'a' + rng.gen_range(0..3);
        s[i] = c;
        tree.update(i, c, &ctx).unwrap();
        let l = rng.gen_range(0..=s.len());
        let r = rng.gen_range(l..=s.len());
        assert_eq!(tree.range_hash(l, r, &ctx).unwrap(), ctx.hash(&s[l..r]));
    }
    assert_eq!(tree.root_hash(), ctx.hash(&s));
}

#[test]
fn concatenation_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ctx = HashContext::choose(256, 5).unwrap();
    for _ in 0..10_000 {
        let (la, lb) = (rng.gen_range(0..=100), rng.gen_range(0..=100));
        let a = random_string(&mut rng, la, &letters(26));
        let b = random_string(&mut rng, lb, &letters(26));
        let whole = [a.clone(), b.clone()].concat();
        assert_eq!(
            ctx.concat(ctx.hash(&a), ctx.hash(&b), b.len()),
            ctx.hash(&whole)
        );
    }
}

#[test]
fn no_collisions_among_random_distinct_strings() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let ctx = HashContext::choose(64, 99).unwrap();
    let mut seen: HashMap<u64, Vec<u8>> = HashMap::new();
    let mut pairs = 0u64;
    while pairs < 100_000 {
        let len = rng.gen_range(1..=64);
        let s = random_string(&mut rng, len, &letters(4));
        let t = random_string(&mut rng, len, &letters(4));
        if s == t {
            continue;
        }
        pairs += 1;
        assert_ne!(ctx.hash(&s), ctx.hash(&t), "{s:?} vs {t:?}");
        for x in [s, t] {
            let h = ctx.hash(&x);
            if let Some(prev) = seen.insert(h, x.clone()) {
                assert_eq!(prev, x, "collision at {h}");
            }
        }
    }
}

#[test]
fn masked_hash_skips_wildcard_columns() {
    let ctx = HashContext::choose(32, 1).unwrap();
    let s = b"ab?cd?e";
    let kept: Vec<u64> = s
        .iter()
        .filter(|&&c| c != b'?')
        .map(|&c| symbol_code(c))
        .collect();
    assert_eq!(ctx.masked_hash(s, &[2, 5]), ctx.hash_codes(kept));
    assert_eq!(
        ctx.masked_hash(b"xb?cd?e", &[2, 5]),
        ctx.masked_hash(b"xb!cd.e", &[2, 5])
    );
}
