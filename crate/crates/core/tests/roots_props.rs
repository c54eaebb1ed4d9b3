use bzcrystal::roots::{
    enumerate_gamma, fundamental, longest_element, omega_flip, sigma_shift, weyl_group,
};
use bzcrystal::{ChamberWeight, Interval, WeylElem};
use proptest::prelude::*;

fn chamber() -> impl Strategy<Value = ChamberWeight> {
    (-6i64..6, prop::collection::btree_set(-4i64..10, 0..6)).prop_map(|(a, xs)| {
        let extras: Vec<i64> = xs.into_iter().filter(|&x| x > a + 1).collect();
        ChamberWeight::from_parts(a, &extras).unwrap()
    })
}

fn word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, 0..8)
}

proptest! {
    #[test]
    fn reflection_is_an_involution(g in chamber(), q in -6i64..8) {
        let r = g.reflect(q);
        prop_assert_eq!(r.reflect(q), g.clone());
        prop_assert_eq!(r.pairing(q), -g.pairing(q));
        prop_assert_eq!(r.charge(), g.charge());
    }

    #[test]
    fn pairings_are_signs(g in chamber(), p in -8i64..12) {
        let v = g.pairing(p);
        prop_assert!((-1..=1).contains(&v));
        prop_assert_eq!(v == 1, g.positive_pairings().any(|x| x == p));
        prop_assert_eq!(v == -1, g.negative_pairings().any(|x| x == p));
    }

    #[test]
    fn toggles_have_odd_length(g in chamber()) {
        prop_assert_eq!(g.toggles().len() % 2, 1);
        let (a, b) = g.span();
        prop_assert!(a <= b);
    }

    #[test]
    fn shifts_compose(g in chamber(), a in -5i64..5, b in -5i64..5) {
        prop_assert_eq!(g.shift(a).shift(b), g.shift(a + b));
        prop_assert_eq!(g.shift(a).charge(), g.charge() + a);
    }

    #[test]
    fn masks_round_trip(lo in -3i64..3, n in 2usize..8, mask in 1u64..255) {
        let mask = mask % ((1u64 << n) - 1);
        prop_assume!(mask != 0);
        let g = ChamberWeight::from_mask(lo, n, mask);
        prop_assert_eq!(g.to_mask(lo, n), Some(mask));
    }

    #[test]
    fn weyl_action_is_a_homomorphism(u in word(), v in word(), g in chamber()) {
        let a = WeylElem::from_word(&u);
        let b = WeylElem::from_word(&v);
        prop_assert_eq!(a.compose(&b).act(&g), a.act(&b.act(&g)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn reduced_words(u in word()) {
        let w = WeylElem::from_word(&u);
        let r = w.reduced_word();
        prop_assert_eq!(r.len(), w.length());
        prop_assert!(r.len() <= u.len());
        prop_assert_eq!(r.len() % 2, u.len() % 2);
        prop_assert_eq!(WeylElem::from_word(&r), w);
    }

    #[test]
    fn simple_action_matches_reflection(g in chamber(), q in -4i64..6) {
        prop_assert_eq!(WeylElem::simple(q).act(&g), g.reflect(q));
    }

    #[test]
    fn sigma_shift_on_words(u in word(), ell in 2i64..5, k in -2i64..3) {
        let w = WeylElem::from_word(&u);
        let shifted: Vec<i64> = u.iter().map(|i| i + k * (ell + 1)).collect();
        prop_assert_eq!(sigma_shift(&w, ell, k).unwrap(), WeylElem::from_word(&shifted));
    }
}

#[test]
fn gamma_has_every_proper_subset() {
    for m in 1..=6 {
        let i = Interval::new(0, m - 1).unwrap();
        let g = enumerate_gamma(&i).unwrap();
        assert_eq!(g.len(), (1usize << (m + 1)) - 2);
        let orbit: std::collections::BTreeSet<Vec<i64>> = weyl_group(&i)
            .iter()
            .flat_map(|w| {
                i.indices()
                    .map(|k| w.act(&fundamental(&i, k).unwrap()).toggles().to_vec())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(orbit.len(), g.len());
    }
}

#[test]
fn longest_element_length() {
    for m in 1..=5i64 {
        let i = Interval::new(1, m).unwrap();
        let w0 = longest_element(&i);
        assert_eq!(w0.length() as i64, m * (m + 1) / 2);
        for k in i.indices() {
            // w_0 ϖ_k = −ϖ_{ω(k)}, with the window negation realizing −.
            let lhs = w0.act(&fundamental(&i, k).unwrap());
            let rhs = fundamental(&i, omega_flip(&i, k).unwrap())
                .unwrap()
                .window_negate(&i)
                .unwrap();
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }
}

#[test]
fn sigma_rejects_small_levels() {
    let g = ChamberWeight::neg_lambda(0);
    assert!(sigma_shift(&g, 1, 1).is_err());
    assert_eq!(sigma_shift(&g, 2, 1).unwrap(), ChamberWeight::neg_lambda(3));
}
