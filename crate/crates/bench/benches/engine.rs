use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kchow::oracle::interpolate_profile;
use kchow::{enumerate_graphs, Codim, GroundSet, LabelSet, Presentation, SimplicialComplex};

fn discrete(n: usize) -> SimplicialComplex {
    SimplicialComplex::discrete(GroundSet::numbered(n).unwrap())
}

fn pairs(n: usize) -> SimplicialComplex {
    let faces = (0..n).flat_map(|a| (a + 1..n).map(move |b| LabelSet::from_indices([a, b])));
    SimplicialComplex::from_faces(GroundSet::numbered(n).unwrap(), faces.collect::<Vec<_>>()).unwrap()
}

fn strata(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_graphs");
    for n in [5, 6, 7] {
        let k = discrete(n);
        group.bench_with_input(BenchmarkId::new("discrete", n), &k, |b, k| {
            b.iter(|| enumerate_graphs(black_box(k), Codim::All).unwrap())
        });
    }
    let k = pairs(7);
    group.bench_function("pairs/7", |b| b.iter(|| enumerate_graphs(black_box(&k), Codim::All).unwrap()));
    group.finish();
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("poincare_profile");
    group.sample_size(10);
    for n in [5, 6, 7] {
        let k = discrete(n);
        group.bench_with_input(BenchmarkId::new("discrete", n), &k, |b, k| {
            b.iter(|| Presentation::new(black_box(k)).unwrap().poincare_profile().unwrap())
        });
    }
    group.finish();
}

fn point_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("interpolate_profile");
    for n in [6, 7] {
        let k = discrete(n);
        group.bench_with_input(BenchmarkId::new("discrete", n), &k, |b, k| {
            b.iter(|| interpolate_profile(black_box(k)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, strata, ranks, point_counts);
criterion_main!(benches);
