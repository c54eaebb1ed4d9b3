use bzcrystal::affine_fold::generate_affine_blambda;
use bzcrystal::crystal_finite::{generate_binf, generate_blambda};
use bzcrystal::verify::{
    check_stembridge, compare_character, freudenthal_mult, kostant_count, replay_witness,
    Condition, Freudenthal, Outcome, CONDITIONS,
};
use bzcrystal::{CrystalGraph, DominantWeight, Interval, RootSystemSpec};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn iv(lo: i64, hi: i64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn relabel(g: &CrystalGraph, seed: u64) -> CrystalGraph {
    let mut perm: Vec<usize> = (0..g.nodes.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut nodes = g.nodes.clone();
    for n in &g.nodes {
        let mut m = n.clone();
        m.id = perm[n.id];
        nodes[perm[n.id]] = m;
    }
    let mut edges: Vec<_> = g
        .edges
        .iter()
        .map(|e| bzcrystal::GraphEdge {
            from: perm[e.from],
            to: perm[e.to],
            color: e.color,
        })
        .collect();
    edges.reverse();
    CrystalGraph {
        root: perm[g.root],
        nodes,
        edges,
        ..g.clone()
    }
}

fn counts(g: &CrystalGraph, l: Option<&DominantWeight>) -> Vec<(usize, usize, usize)> {
    let rep = check_stembridge(g, l).unwrap();
    CONDITIONS
        .iter()
        .map(|&c| {
            let t = rep.tally(c);
            (t.passed, t.failed, t.skipped)
        })
        .collect()
}

#[test]
fn stembridge_is_invariant_under_relabeling() {
    let l = DominantWeight::new(vec![1, 1, 0]).unwrap();
    let g = generate_blambda(iv(1, 3), &l, 1000).unwrap().graph;
    let h = generate_binf(iv(1, 2), 5, 1000).unwrap().graph;
    for seed in 0..4 {
        assert_eq!(counts(&g, Some(&l)), counts(&relabel(&g, seed), Some(&l)));
        assert_eq!(counts(&h, None), counts(&relabel(&h, seed), None));
    }
    let a = DominantWeight::new(vec![1, 0, 0]).unwrap();
    let g = generate_affine_blambda(2, &a, 4, 10_000).unwrap().graph;
    assert_eq!(counts(&g, Some(&a)), counts(&relabel(&g, 9), Some(&a)));
}

#[test]
fn deleting_an_edge_is_caught() {
    let l = DominantWeight::new(vec![1, 1]).unwrap();
    let g = generate_blambda(iv(1, 2), &l, 100).unwrap().graph;
    for k in 0..g.edges.len() {
        let mut h = g.clone();
        h.edges.remove(k);
        let rep = check_stembridge(&h, Some(&l)).unwrap();
        assert!(!rep.passed(), "edge {k}");
        let w = rep
            .conditions
            .values()
            .flat_map(|t| t.witnesses.iter())
            .next()
            .copied()
            .expect("a witness");
        assert_eq!(replay_witness(&h, Some(&l), &w).unwrap(), Outcome::Fail);
        assert_ne!(replay_witness(&g, Some(&l), &w).unwrap(), Outcome::Fail);
    }
}

#[test]
fn wrong_phi_is_caught() {
    let l = DominantWeight::new(vec![1, 0]).unwrap();
    let mut g = generate_blambda(iv(1, 2), &l, 100).unwrap().graph;
    g.nodes[0].phi[0] += 1;
    let rep = check_stembridge(&g, Some(&l)).unwrap();
    assert!(rep.tally(Condition::Local).failed + rep.tally(Condition::Semiregular).failed > 0);
}

#[test]
fn kostant_zero_and_freudenthal_top() {
    for r in [
        RootSystemSpec::finite(3, 8),
        RootSystemSpec::affine(2, 8),
        RootSystemSpec::affine(3, 8),
    ] {
        assert_eq!(kostant_count(&r, &vec![0; r.rank()]).unwrap(), 1);
        let mut l = vec![0; r.rank()];
        l[0] = 2;
        let l = DominantWeight::new(l).unwrap();
        assert_eq!(freudenthal_mult(&r, &l, &vec![0; r.rank()]).unwrap(), 1);
    }
}

#[test]
fn kostant_beyond_the_height_bound_is_an_error() {
    let r = RootSystemSpec::finite(2, 3);
    assert!(kostant_count(&r, &[2, 2]).is_err());
}

#[test]
fn affine_binf_characters() {
    let g = bzcrystal::affine_fold::generate_affine_binf(2, 4, 10_000)
        .unwrap()
        .graph;
    let rep = compare_character(&g, None).unwrap();
    assert!(rep.passed(), "{:?}", rep.mismatches);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn freudenthal_is_weyl_invariant(
        l in prop::collection::vec(0i64..3, 3),
        beta in prop::collection::vec(0i64..4, 3),
        i in 0usize..3,
    ) {
        let r = RootSystemSpec::finite(3, 16);
        let lam = DominantWeight::new(l.clone()).unwrap();
        let mut f = Freudenthal::new(r.clone(), &lam).unwrap();
        // μ = λ − β; s_i μ = μ − ⟨μ, h_i⟩ α_i.
        let pair: i64 = l[i] - (0..3).map(|j| beta[j] * r.a(j, i)).sum::<i64>();
        let mut image = beta.clone();
        image[i] += pair;
        prop_assume!(image[i] >= 0 && image.iter().sum::<i64>() <= 16);
        prop_assert_eq!(f.mult(&beta).unwrap(), f.mult(&image).unwrap());
    }

    #[test]
    fn a2_kostant_closed_form(a in 0i64..7, b in 0i64..7) {
        let r = RootSystemSpec::finite(2, 14);
        prop_assert_eq!(kostant_count(&r, &[a, b]).unwrap(), (a.min(b) + 1) as u64);
    }
}
