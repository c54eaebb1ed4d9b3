use bzcrystal::affine_fold::{generate_affine_binf, generate_affine_blambda};
use bzcrystal::bz_finite::validate;
use bzcrystal::crystal_finite::{generate_binf, generate_blambda};
use bzcrystal::{
    ChamberWeight, DominantWeight, Family, FoldContext, Interval, LazyBZElement, WordEval,
};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const BUDGET: usize = 1_000_000;

fn finite(c: &mut Criterion) {
    let mut g = c.benchmark_group("finite");
    for (hi, depth) in [(2, 6), (3, 5), (4, 4)] {
        let iv = Interval::new(1, hi).unwrap();
        g.bench_with_input(
            BenchmarkId::new("binf", format!("A{hi}/d{depth}")),
            &depth,
            |b, &d| b.iter(|| generate_binf(iv, d, BUDGET).unwrap()),
        );
    }
    let iv = Interval::new(1, 3).unwrap();
    let lambda = DominantWeight::new(vec![1, 1, 1]).unwrap();
    g.bench_function("blambda/A3/(1,1,1)", |b| {
        b.iter(|| generate_blambda(iv, &lambda, BUDGET).unwrap())
    });
    let data = generate_binf(Interval::new(1, 4).unwrap(), 4, BUDGET)
        .unwrap()
        .data;
    g.bench_function("validate/A4/d4", |b| {
        b.iter(|| data.iter().all(|m| validate(black_box(m)).passed()))
    });
    g.finish();
}

fn affine(c: &mut Criterion) {
    let mut g = c.benchmark_group("affine");
    g.sample_size(20);
    for depth in [4, 6] {
        g.bench_with_input(BenchmarkId::new("binf/l2", depth), &depth, |b, &d| {
            b.iter(|| generate_affine_binf(2, d, BUDGET).unwrap())
        });
    }
    let lambda = DominantWeight::new(vec![1, 0, 0]).unwrap();
    for depth in [4, 8, 12] {
        g.bench_with_input(BenchmarkId::new("basic/l2", depth), &depth, |b, &d| {
            b.iter(|| generate_affine_blambda(2, &lambda, d, BUDGET).unwrap())
        });
    }
    g.finish();
}

fn components(c: &mut Criterion) {
    let mut g = c.benchmark_group("component");
    let gamma = ChamberWeight::from_parts(-2, &[0, 1, 3, 5]).unwrap();
    let word = [0, 1, 2, 0, 1, 2, 1, 0];
    g.bench_function("folded/l2/len8", |b| {
        b.iter(|| {
            let mut ctx = FoldContext::new(2).unwrap();
            let m = LazyBZElement::from_word(2, &word).unwrap();
            ctx.component(&m, black_box(&gamma)).unwrap()
        })
    });
    g.bench_function("a_infinity/len8", |b| {
        b.iter(|| {
            let mut ev = WordEval::new(Family::AInfinity);
            let t = ev.intern_word(&word);
            ev.component(t, black_box(&gamma)).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, finite, affine, components);
criterion_main!(benches);
