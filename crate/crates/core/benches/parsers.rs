use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use attndisco::par::par_map;
use attndisco::{
    cky_parse, cle_parse, eisner_parse, random_matrix, AttentionMatrix, CkyScoreVariant,
    SpanConstraint,
};

fn single_document(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_document");
    for &n in &[50usize, 120, 200] {
        let a = random_matrix(n, 42).unwrap();
        group.bench_with_input(BenchmarkId::new("cky", n), &a, |b, a| {
            b.iter(|| {
                cky_parse(
                    black_box(a),
                    &SpanConstraint::none(),
                    CkyScoreVariant::DivideAll,
                )
            })
        });
        group.bench_with_input(BenchmarkId::new("eisner", n), &a, |b, a| {
            b.iter(|| eisner_parse(black_box(a), &SpanConstraint::none()))
        });
        group.bench_with_input(BenchmarkId::new("cle", n), &a, |b, a| {
            b.iter(|| cle_parse(black_box(a)))
        });
    }
    group.finish();
}

/// Batch parsing of a corpus, sequential loop vs the data-parallel helper.
/// With `--no-default-features` both run sequentially.
fn corpus_batch(c: &mut Criterion) {
    let corpus: Vec<AttentionMatrix> = (0..32u64).map(|s| random_matrix(96, s).unwrap()).collect();
    let mut group = c.benchmark_group("corpus_batch");
    group.bench_function("sequential", |b| {
        b.iter(|| {
            corpus
                .iter()
                .map(|a| cle_parse(black_box(a)).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.bench_function("parallel", |b| {
        b.iter(|| par_map(&corpus, |a| cle_parse(black_box(a)).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, single_document, corpus_batch);
criterion_main!(benches);
