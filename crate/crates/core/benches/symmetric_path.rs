use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relaysel::analytic::Analyzer;
use relaysel::{Modulation, NetworkConfig, Source};

fn bench_paths(c: &mut Criterion) {
    let mut g = c.benchmark_group("average_ser");
    for n in [4, 8, 10] {
        let cfg = NetworkConfig::symmetric(n, 1.0, 0.9, 100.0, 100.0).unwrap();
        let general = Analyzer::new(&cfg).unwrap();
        let symmetric = Analyzer::symmetric(&cfg).unwrap();
        g.bench_with_input(BenchmarkId::new("general", n), &general, |b, a| {
            b.iter(|| a.average_ser(Modulation::BPSK, Source::S1).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("symmetric", n), &symmetric, |b, a| {
            b.iter(|| a.average_ser(Modulation::BPSK, Source::S1).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_paths);
criterion_main!(benches);
