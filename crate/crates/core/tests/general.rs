mod common;

use dynwild_core::oracle::OracleKind;
use dynwild_core::{GeneralConfig, GeneralMatcher};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exists, letters, random_string, sprinkle_wildcards, WILDCARD};

struct Instance {
    text: Vec<u8>,
    pattern: Vec<u8>,
    config: GeneralConfig,
    sigma: usize,
}

fn instance(rng: &mut ChaCha8Rng, oracle: OracleKind) -> Instance {
    let n = rng.gen_range(1..=120);
    let m = rng.gen_range(1..=n.min(12));
    let sigma = rng.gen_range(1..=5);
    let k = rng.gen_range(0..=3);
    let mut text = random_string(rng, n, &letters(sigma));
    let mut pattern = random_string(rng, m, &letters(sigma));
    let kt = rng.gen_range(0..=k);
    sprinkle_wildcards(rng, &mut text, kt);
    sprinkle_wildcards(rng, &mut pattern, (k - kt).min(m));
    // small thresholds push queries onto the completion path
    let tau = match rng.gen_range(0..3) {
        0 => None,
        1 => Some(rng.gen_range(1..=4)),
        _ => Some(rng.gen_range(1..=n)),
    };
    Instance {
        text,
        pattern,
        config: GeneralConfig {
            k,
            tau,
            seed: rng.gen(),
            oracle,
        },
        sigma,
    }
}

fn replay(seed: u64, oracle: OracleKind, steps: usize) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Instance {
        mut text,
        mut pattern,
        config,
        sigma,
    } = instance(&mut rng, oracle);
    let mut g = GeneralMatcher::new(&text, &pattern, config).unwrap();
    let wild = |t: &[u8], p: &[u8]| t.iter().chain(p).filter(|&&c| c == WILDCARD).count();
    for _ in 0..steps {
        let on_text = rng.gen_bool(0.5);
        let len = if on_text { text.len() } else { pattern.len() };
        let i = rng.gen_range(0..len);
        let old = if on_text { text[i] } else { pattern[i] };
        let mut c = if rng.gen_bool(0.15) {
            WILDCARD
        } else {
            b'a' + rng.gen_range(0..sigma as u8 + 1)
        };
        if c == WILDCARD && old != WILDCARD && wild(&text, &pattern) >= config.k {
            c = b'a';
        }
        if on_text {
            text[i] = c;
            g.substitute_text(i, c).unwrap();
        } else {
            pattern[i] = c;
            g.substitute_pattern(i, c).unwrap();
        }
        let got = g.query();
        assert_eq!(
            got.matched,
            exists(&text, &pattern),
            "seed {seed}: T={text:?} P={pattern:?}"
        );
        if let Some(s) = got.witness {
            assert!(common::matches_at(&text, &pattern, s));
        }
    }
    (g.counters().case1_queries, g.counters().case2_queries)
}

#[test]
fn agrees_with_brute_force_window_multiset() {
    let (mut c1, mut c2) = (0, 0);
    for seed in 0..80 {
        let (a, b) = replay(seed, OracleKind::WindowMultiset, 300);
        c1 += a;
        c2 += b;
    }
    assert!(c1 > 0 && c2 > 0, "both query cases exercised: {c1} {c2}");
}

#[test]
fn agrees_with_brute_force_naive_scan() {
    for seed in 1000..1030 {
        replay(seed, OracleKind::NaiveScan, 200);
    }
}

#[test]
fn wildcard_budget_is_enforced_on_both_sides() {
    let cfg = GeneralConfig {
        k: 1,
        ..GeneralConfig::default()
    };
    let mut g = GeneralMatcher::new(b"abcd", b"ab", cfg).unwrap();
    g.substitute_text(0, b'?').unwrap();
    assert!(g.substitute_pattern(0, b'?').is_err());
    assert!(g.substitute_text(1, b'?').is_err());
    g.substitute_text(0, b'a').unwrap();
    g.substitute_pattern(0, b'?').unwrap();
    assert_eq!(g.wildcards(), 1);
}
