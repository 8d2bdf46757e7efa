use dynwild_core::hardness::{brute_force, reduce, solve_via_matcher, OvInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng) -> OvInstance {
    let n = rng.gen_range(1..=64);
    let d = rng.gen_range(1..=16);
    // denser vectors make orthogonal pairs rarer, so both answers occur
    let density = rng.gen_range(0.2..0.9);
    OvInstance::new(
        (0..n)
            .map(|_| (0..d).map(|_| rng.gen_bool(density)).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn matcher_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut answers = [0; 2];
    for seed in 0..50 {
        let inst = random_instance(&mut rng);
        let (n, d) = (inst.len() as u64, inst.dim() as u64);
        let out = solve_via_matcher(&inst, seed).unwrap();
        assert_eq!(out.answer, brute_force(&inst), "{inst:?}");
        assert_eq!(out.queries, n);
        assert!(out.substitutions <= n * (d + 2));
        answers[out.answer as usize] += 1;
    }
    assert!(answers[0] > 0 && answers[1] > 0, "{answers:?}");
}

#[test]
fn reduction_lengths() {
    let inst = OvInstance::parse("101\n010\n111\n").unwrap();
    let red = reduce(&inst);
    assert_eq!(red.text.len(), inst.len() * (inst.dim() + 1) + 1);
    assert!(red.templates.iter().all(|t| t.len() == inst.dim() + 2));
    assert_eq!(red.text, b"#101#010#111#".to_vec());
    assert_eq!(red.templates[1], b"#?0?#".to_vec());
}
