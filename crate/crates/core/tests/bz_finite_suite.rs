use bzcrystal::bz_finite::{
    check_edge, check_edge_by_weyl, check_tpr, check_tpr_by_weyl, in_bz_i, mv_vertex, mv_vertices,
    restrict_down, restrict_up, validate, weight,
};
use bzcrystal::crystal_finite::{generate_binf, generate_blambda, lower_f};
use bzcrystal::{DominantWeight, FiniteBZDatum, Interval, WeylElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn iv(lo: i64, hi: i64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn pool(i: Interval, depth: usize) -> Vec<FiniteBZDatum> {
    generate_binf(i, depth, 100_000).unwrap().data
}

/// Vector of w h_i in coroot coordinates over `i`.
fn coroot(i: &Interval, a: i64, b: i64) -> Vec<i64> {
    let mut v = vec![0; i.rank()];
    let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
    for k in lo..hi {
        v[(k - i.lo) as usize] += s;
    }
    v
}

#[test]
fn subset_and_weyl_forms_agree_on_generated_data() {
    for (i, d) in [(iv(1, 3), 4), (iv(0, 3), 3)] {
        for m in pool(i, d) {
            assert!(check_edge(&m).passed());
            assert!(check_tpr(&m).passed());
            assert!(check_edge_by_weyl(&m).unwrap().passed());
            assert!(check_tpr_by_weyl(&m).unwrap().passed());
        }
    }
}

#[test]
fn subset_and_weyl_forms_agree_on_mutations() {
    let data = pool(iv(1, 3), 4);
    let mut r = ChaCha8Rng::seed_from_u64(17);
    let mut rejected = 0;
    for _ in 0..400 {
        let m = &data[r.gen_range(0..data.len())];
        let comps: Vec<_> = m.components().collect();
        let (g, v) = &comps[r.gen_range(0..comps.len())];
        let mm = m.with_component(g, v + r.gen_range(-3..=3)).unwrap();
        let e = check_edge(&mm).passed();
        let t = check_tpr(&mm).passed();
        assert_eq!(e, check_edge_by_weyl(&mm).unwrap().passed(), "{mm:?}");
        assert_eq!(t, check_tpr_by_weyl(&mm).unwrap().passed(), "{mm:?}");
        rejected += usize::from(!(e && t));
    }
    assert!(rejected > 300);
}

#[test]
fn violations_name_a_component() {
    let m = lower_f(&FiniteBZDatum::zero(iv(1, 2)).unwrap(), 1).unwrap();
    let g = m.components().find(|(_, v)| *v == -1).unwrap().0;
    let bad = m.with_component(&g, 0).unwrap();
    let rep = validate(&bad);
    assert!(!rep.passed());
    assert!(rep.violations.iter().all(|v| v.slack() != 0));
}

#[test]
fn mv_edges_are_parallel_to_roots() {
    let i = iv(1, 3);
    for m in pool(i, 4) {
        let verts = mv_vertices(&m).unwrap();
        for (w, mu) in &verts {
            for k in i.indices() {
                let ws = w.compose(&WeylElem::simple(k));
                let next = mv_vertex(&m, &ws);
                let dir = coroot(&i, w.apply(k), w.apply(k + 1));
                let diff: Vec<i64> = next.iter().zip(mu).map(|(a, b)| a - b).collect();
                let pos = dir.iter().position(|&x| x != 0).unwrap();
                let n = diff[pos] / dir[pos];
                let scaled: Vec<i64> = dir.iter().map(|x| n * x).collect();
                assert_eq!(diff, scaled);
                if w.right_ascent(k) {
                    assert!(n >= 0, "w={:?} k={k} n={n}", w.reduced_word());
                }
            }
        }
        let lowest = mv_vertex(&m, &bzcrystal::roots::longest_element(&i));
        let top = mv_vertex(&m, &WeylElem::identity());
        assert_eq!(verts.len(), 24);
        assert!(top.iter().zip(&lowest).all(|(a, b)| a - b == 0) == (m.total() == 0));
    }
}

#[test]
fn weight_counts_letters() {
    let i = iv(1, 3);
    let o = FiniteBZDatum::zero(i).unwrap();
    let mut m = o.clone();
    let word = [2, 1, 3, 2, 2];
    for &p in &word {
        m = lower_f(&m, p).unwrap();
    }
    let mut want = vec![0i64; 3];
    for &p in &word {
        want[(p - 1) as usize] -= 1;
    }
    assert_eq!(weight(&m), want);
}

#[test]
fn restriction_examples() {
    let i = iv(1, 3);
    let lam = DominantWeight::new(vec![1, 1, 1]).unwrap();
    for m in generate_blambda(i, &lam, 1000).unwrap().data {
        for k in [iv(1, 1), iv(2, 3), iv(1, 2)] {
            let down = restrict_down(&m, &k).unwrap();
            assert!(validate(&down).passed() && in_bz_i(&down));
            assert!(validate(&restrict_up(&m, &k).unwrap()).passed());
        }
        assert_eq!(restrict_down(&m, &i).unwrap(), m);
        assert_eq!(restrict_up(&m, &i).unwrap(), m);
    }
    assert!(restrict_down(&FiniteBZDatum::zero(i).unwrap(), &iv(0, 2)).is_err());
}

#[test]
fn json_round_trip_generated() {
    for m in pool(iv(1, 3), 3) {
        let s = serde_json::to_string(&m).unwrap();
        let back: FiniteBZDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
