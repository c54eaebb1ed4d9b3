use std::collections::{BTreeMap, HashSet};

use bzcrystal::affine_fold::{generate_affine_binf, generate_affine_blambda, lset};
use bzcrystal::roots::enumerate_gamma;
use bzcrystal::verify::{check_stembridge, compare_character, freudenthal_mult};
use bzcrystal::{
    BzError, ChamberWeight, DominantWeight, FoldContext, Interval, LazyBZElement, RootSystemSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gamma(r: &mut ChaCha8Rng) -> ChamberWeight {
    let a = r.gen_range(-5..=0);
    let extras: Vec<i64> = (a + 2..=6).filter(|_| r.gen_bool(0.4)).collect();
    ChamberWeight::from_parts(a, &extras).unwrap()
}

#[test]
fn folded_data_are_sigma_invariant() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for ell in [2i64, 3] {
        let n = ell + 1;
        let mut ctx = FoldContext::new(ell).unwrap();
        for _ in 0..60 {
            let len = r.gen_range(0..=5);
            let word: Vec<i64> = (0..len).map(|_| r.gen_range(0..n)).collect();
            let m = LazyBZElement::from_word(ell, &word).unwrap();
            let g = random_gamma(&mut r);
            let k = r.gen_range(-2..=2);
            assert_eq!(
                ctx.component(&m, &g).unwrap(),
                ctx.component(&m, &g.shift(k * n)).unwrap(),
                "{word:?} {g:?}"
            );
        }
    }
}

#[test]
fn lset_is_a_residue_class() {
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let g = random_gamma(&mut r);
        let p = r.gen_range(0..3);
        let l = lset(&g, p, 2);
        assert!(l
            .iter()
            .all(|q| (q - p).rem_euclid(3) == 0 && g.pairing(*q) == 1));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn nodes_have_distinct_keys_and_probes() {
    let ell = 2;
    let g = generate_affine_binf(ell, 6, 100_000).unwrap();
    let mut ctx = FoldContext::new(ell).unwrap();
    let probe = enumerate_gamma(&Interval::new(0, 2 * ell + 1).unwrap()).unwrap();
    let keys: HashSet<_> = g.graph.nodes.iter().map(|n| n.key.clone()).collect();
    assert_eq!(keys.len(), g.graph.nodes.len());
    let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
    for (node, word) in g.graph.nodes.iter().zip(&g.words) {
        let m = LazyBZElement::from_word(ell, word).unwrap();
        let sig: Vec<i64> = probe
            .iter()
            .map(|c| ctx.component(&m, c).unwrap())
            .collect();
        by_weight.entry(node.weight.clone()).or_default().push(sig);
    }
    for sigs in by_weight.values() {
        let distinct: HashSet<_> = sigs.iter().collect();
        assert_eq!(distinct.len(), sigs.len());
    }
    assert_eq!(g.stats.ambiguous, 0);
}

#[test]
fn equal_nodes_reached_by_different_words() {
    let ell = 2;
    let mut ctx = FoldContext::new(ell).unwrap();
    // Colors 0 and 2 are adjacent for ℓ = 2, so the two orders differ.
    let a = ctx
        .node_of(&LazyBZElement::from_word(ell, &[0, 2]).unwrap())
        .unwrap();
    let b = ctx
        .node_of(&LazyBZElement::from_word(ell, &[2, 0]).unwrap())
        .unwrap();
    assert!(a.is_some() && b.is_some());
    assert_ne!(a, b);
    // In ℓ = 3 colors 0 and 2 are not adjacent and the two words agree.
    let mut ctx = FoldContext::new(3).unwrap();
    let a = ctx
        .node_of(&LazyBZElement::from_word(3, &[0, 2]).unwrap())
        .unwrap();
    let b = ctx
        .node_of(&LazyBZElement::from_word(3, &[2, 0]).unwrap())
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn raises_cross_check_on_the_basic_representation() {
    let ell = 2;
    let lambda = DominantWeight::new(vec![1, 0, 0]).unwrap();
    let g = generate_affine_blambda(ell, &lambda, 8, 10_000).unwrap();
    let mut ctx = FoldContext::with_lambda(ell, &lambda).unwrap();
    let window = Interval::new(-3, 5).unwrap();
    for word in &g.words {
        let x = ctx
            .node_of(&LazyBZElement::from_word(ell, word).unwrap())
            .unwrap()
            .unwrap();
        for p in 0..=ell {
            assert!(
                ctx.cross_check_raise(x, p, &window).unwrap(),
                "{word:?} p={p}"
            );
        }
    }
}

#[test]
fn level_three_basic_representation() {
    let lambda = DominantWeight::new(vec![1, 0, 0, 0]).unwrap();
    let g = generate_affine_blambda(3, &lambda, 8, 100_000)
        .unwrap()
        .graph;
    assert!(check_stembridge(&g, Some(&lambda)).unwrap().passed());
    assert!(compare_character(&g, Some(&lambda)).unwrap().passed());
    let spec = RootSystemSpec::affine(3, 12);
    for (k, want) in [1u64, 3, 9].into_iter().enumerate() {
        let beta = vec![k as i64; 4];
        let got = g
            .nodes
            .iter()
            .filter(|n| n.weight.iter().all(|&w| w == -(k as i64)))
            .count();
        assert_eq!(got as u64, want);
        assert_eq!(freudenthal_mult(&spec, &lambda, &beta).unwrap(), want);
    }
}

#[test]
fn level_three_binf_characters() {
    let g = generate_affine_binf(3, 4, 100_000).unwrap().graph;
    let rep = compare_character(&g, None).unwrap();
    assert!(rep.passed(), "{:?}", rep.mismatches);
}

#[test]
fn budget_keeps_a_partial_graph() {
    let e = generate_affine_binf(2, 6, 20).unwrap_err();
    assert!(matches!(e.error, BzError::Capacity { .. }));
    let partial = e.partial.unwrap();
    assert!(partial.graph.nodes.len() <= 20);
}

#[test]
fn level_one_is_rejected() {
    assert!(FoldContext::new(1).is_err());
    assert!(LazyBZElement::origin(1).is_err());
}

#[test]
fn generation_is_deterministic() {
    let a = generate_affine_binf(2, 5, 10_000).unwrap();
    let b = generate_affine_binf(2, 5, 10_000).unwrap();
    assert_eq!(a.graph.to_json(), b.graph.to_json());
    assert_eq!(a.words, b.words);
}
