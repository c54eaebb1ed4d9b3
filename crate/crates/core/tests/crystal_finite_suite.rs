use bzcrystal::crystal_finite::{
    big_weight, cap_f, generate_binf, generate_blambda, lower_f, raise_e, truncate_membership,
};
use bzcrystal::verify::{check_stembridge, compare_character, weyl_dim};
use bzcrystal::{BzError, DominantWeight, FiniteBZDatum, Interval};

fn iv(lo: i64, hi: i64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn dominant(rank: usize, total: i64) -> Vec<DominantWeight> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=total).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .filter(|v| v.iter().sum::<i64>() <= total)
        .map(|v| DominantWeight::new(v).unwrap())
        .collect()
}

#[test]
fn blambda_sizes_match_weyl_dimension() {
    for (i, total) in [(iv(1, 2), 3), (iv(1, 3), 2), (iv(0, 3), 1)] {
        for l in dominant(i.rank(), total) {
            let c = generate_blambda(i, &l, 100_000).unwrap();
            assert_eq!(
                c.graph.nodes.len() as u64,
                weyl_dim(&i, &l).unwrap(),
                "{:?}",
                l.coeffs()
            );
            assert!(compare_character(&c.graph, Some(&l)).unwrap().passed());
        }
    }
}

#[test]
fn blambda_nodes_are_truncated_and_closed() {
    let i = iv(1, 3);
    let l = DominantWeight::new(vec![1, 0, 1]).unwrap();
    let c = generate_blambda(i, &l, 1000).unwrap();
    let index = c.graph.index().unwrap();
    for (x, m) in c.data.iter().enumerate() {
        assert!(truncate_membership(m, &l).unwrap());
        for p in i.indices() {
            let capped = cap_f(m, &l, p).unwrap();
            match index.f(x, p) {
                Some(y) => assert_eq!(capped.as_ref(), Some(&c.data[y])),
                None => {
                    assert!(capped.is_none());
                    assert!(!truncate_membership(&lower_f(m, p).unwrap(), &l).unwrap());
                }
            }
        }
    }
    // The lowest node has weight w_0 λ.
    let lowest = c.data.iter().max_by_key(|m| -m.total()).unwrap();
    let wt = big_weight(lowest, &l).unwrap();
    assert_eq!(wt, vec![-1, 0, -1]);
}

#[test]
fn stembridge_on_finite_graphs() {
    let l = DominantWeight::new(vec![1, 1]).unwrap();
    let g = generate_blambda(iv(1, 2), &l, 100).unwrap().graph;
    let rep = check_stembridge(&g, Some(&l)).unwrap();
    assert!(rep.passed() && rep.skipped() == 0);
    let l = DominantWeight::new(vec![1, 1, 1]).unwrap();
    let g = generate_blambda(iv(1, 3), &l, 1000).unwrap().graph;
    assert_eq!(g.nodes.len(), 64);
    assert!(check_stembridge(&g, Some(&l)).unwrap().passed());
    let g = generate_binf(iv(1, 3), 5, 100_000).unwrap().graph;
    assert!(check_stembridge(&g, None).unwrap().passed());
}

#[test]
fn generation_is_deterministic() {
    let a = generate_binf(iv(1, 3), 4, 100_000).unwrap();
    let b = generate_binf(iv(1, 3), 4, 100_000).unwrap();
    assert_eq!(a.graph.to_json(), b.graph.to_json());
    assert_eq!(a.data, b.data);
    assert!(a.graph.nodes.windows(2).all(|w| w[0].depth <= w[1].depth));
}

#[test]
fn budget_keeps_a_partial_graph() {
    let e = generate_binf(iv(1, 3), 6, 10).unwrap_err();
    assert!(matches!(e.error, BzError::Capacity { .. }));
    let partial = e.partial.unwrap();
    assert!(partial.graph.nodes.len() <= 10);
    assert!(partial.graph.nodes.iter().any(|n| !n.complete));
}

#[test]
fn strings_have_the_right_length() {
    let i = iv(1, 2);
    let l = DominantWeight::new(vec![3, 0]).unwrap();
    let mut m = FiniteBZDatum::zero(i).unwrap();
    let mut steps = 0;
    while let Some(next) = cap_f(&m, &l, 1).unwrap() {
        m = next;
        steps += 1;
    }
    assert_eq!(steps, 3);
    for _ in 0..3 {
        m = raise_e(&m, 1).unwrap().unwrap();
    }
    assert_eq!(m, FiniteBZDatum::zero(i).unwrap());
    assert!(raise_e(&m, 1).unwrap().is_none());
}
