use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gvb_core::braided::{hoffman_stuffle, relation_reports};
use gvb_core::qshuffle::{verify_theorem, SampleMode};
use gvb_core::qthat::{representation_reports, Assignment};
use gvb_core::section::shuffle_lemma_reports;
use gvb_core::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn theorem(c: &mut Criterion) {
    let a = hoffman_stuffle(4);
    let mut g = c.benchmark_group("theorem_2_2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_theorem(&a, 2, 2, SampleMode::AllBasis, exec))
        });
    }
    g.finish();
}

fn lemmas(c: &mut Criterion) {
    let mut g = c.benchmark_group("shuffle_lemmas_n6");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| shuffle_lemma_reports(6, exec))
        });
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let a = hoffman_stuffle(3);
    let mut g = c.benchmark_group("relations");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("algebra_n3", name), |b| {
            b.iter(|| relation_reports(&a, 3, exec))
        });
        g.bench_function(BenchmarkId::new("sl3_n3", name), |b| {
            b.iter(|| representation_reports(2, 3, Assignment::Swapped, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, theorem, lemmas, relations);
criterion_main!(benches);
