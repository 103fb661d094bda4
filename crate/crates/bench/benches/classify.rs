use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use semigor::classify::{classify_document, ClassifyOptions};
use semigor::families::{family_snk_document, fixture_catalog, FamilyParams};

fn bench_family(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_family");
    for n in 2..=4i64 {
        let doc = family_snk_document(FamilyParams::new(n, 1).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &doc, |b, doc| {
            b.iter(|| classify_document(black_box(doc), &ClassifyOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_fixtures(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_fixture");
    for fixture in fixture_catalog() {
        group.bench_with_input(
            BenchmarkId::from_parameter(fixture.name),
            &fixture.document,
            |b, doc| {
                b.iter(|| classify_document(black_box(doc), &ClassifyOptions::default()).unwrap())
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_family, bench_fixtures);
criterion_main!(benches);
