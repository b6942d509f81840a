//! Benchmarks for the corpus-level evaluation metrics.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use morphseg::{bleu, chrf3};
use morphseg_bench::{metric_lines, rng};

fn bench_metrics(c: &mut Criterion) {
    let mut rng = rng(0x3E71);
    let (hypotheses, references) = metric_lines(&mut rng, 1_000);

    c.bench_function("bleu_1000_lines", |b| {
        b.iter(|| bleu(black_box(&hypotheses), black_box(&references)).expect("equal sizes"))
    });
    c.bench_function("chrf3_1000_lines", |b| {
        b.iter(|| chrf3(black_box(&hypotheses), black_box(&references)).expect("equal sizes"))
    });
}

criterion_group!(benches, bench_metrics);
criterion_main!(benches);
