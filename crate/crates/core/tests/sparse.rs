mod common;

use dynwild_core::SparseMatcher;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exists, letters, random_string, WILDCARD};

#[test]
fn window_hashes_stay_coherent() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for round in 0..60 {
        let n = rng.gen_range(1..=80);
        let m = rng.gen_range(1..=n.min(10));
        let sigma = rng.gen_range(1..=3);
        let alphabet = letters(sigma);
        let mut text = random_string(&mut rng, n, &alphabet);
        let mut pattern = random_string(&mut rng, m, &alphabet);
        for c in pattern.iter_mut() {
            if rng.gen_bool(0.4) {
                *c = WILDCARD;
            }
        }
        let wild: Vec<usize> = (0..m).filter(|&j| pattern[j] == WILDCARD).collect();
        let mut s = SparseMatcher::new(&text, &pattern, round).unwrap();
        for _ in 0..300 {
            if rng.gen_bool(0.7) || wild.len() == m {
                let j = rng.gen_range(0..n);
                text[j] = alphabet[rng.gen_range(0..sigma)];
                s.update_text(j, text[j]).unwrap();
                let touched = &s.counters().last_refreshed;
                assert!(touched.len() <= m - wild.len());
            } else {
                let i = loop {
                    let i = rng.gen_range(0..m);
                    if pattern[i] != WILDCARD {
                        break i;
                    }
                };
                pattern[i] = alphabet[rng.gen_range(0..sigma)];
                s.update_pattern(i, pattern[i]).unwrap();
            }
            let ctx = s.context();
            for (w, &h) in s.windows().iter().enumerate() {
                assert_eq!(h, ctx.masked_hash(&text[w..w + m], &wild));
            }
            assert_eq!(s.pattern_hash(), ctx.masked_hash(&pattern, &wild));
            assert_eq!(s.query().matched, exists(&text, &pattern));
        }
    }
}
