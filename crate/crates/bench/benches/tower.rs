use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbloch_core::scissors::ScissorsTower;

fn bench_tower(c: &mut Criterion) {
    let mut group = c.benchmark_group("tower");
    group.sample_size(10);
    for d in ["F_13", "F_27", "Z/49", "F_5[t]/(t^2)"] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, d| {
            b.iter(|| ScissorsTower::parse(d).unwrap().bloch().0.structure())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_tower);
criterion_main!(benches);
