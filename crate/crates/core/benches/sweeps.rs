use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twisted_pairing::sweep::{
    cover_equivalence_sweep, enumerate_connected, kirchhoff_sweep, model_sweep, oracle_sweep,
    perfect_pairing_sweep, tropical_sweep, Execution, Faults,
};
use twisted_pairing::tropical::SubdivisionMode;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn sweeps(c: &mut Criterion) {
    let graphs4 = enumerate_connected(4, None);
    let graphs5 = enumerate_connected(5, None);
    let small: Vec<_> = graphs4
        .iter()
        .filter(|g| g.vertex_count() <= 3)
        .cloned()
        .collect();

    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(
            BenchmarkId::new("perfect-pairing/5", name),
            &exec,
            |b, &exec| b.iter(|| perfect_pairing_sweep(&graphs5, exec, Faults::default())),
        );
        group.bench_with_input(BenchmarkId::new("cover/5", name), &exec, |b, &exec| {
            b.iter(|| cover_equivalence_sweep(&graphs5, exec))
        });
        group.bench_with_input(BenchmarkId::new("model/4", name), &exec, |b, &exec| {
            b.iter(|| model_sweep(&graphs4, 1, exec))
        });
        group.bench_with_input(BenchmarkId::new("tropical/4", name), &exec, |b, &exec| {
            b.iter(|| tropical_sweep(&graphs4, &[2, 3], &[SubdivisionMode::AllEdges], exec))
        });
        group.bench_with_input(BenchmarkId::new("oracle/4", name), &exec, |b, &exec| {
            b.iter(|| oracle_sweep(&small, 1, exec))
        });
        group.bench_with_input(BenchmarkId::new("kirchhoff/5", name), &exec, |b, &exec| {
            b.iter(|| kirchhoff_sweep(&graphs5, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
