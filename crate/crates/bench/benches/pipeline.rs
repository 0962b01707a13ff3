use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use levilab::catalog::{build_case, CaseSpec};
use levilab::leviform::levi_matrix;
use levilab::verify::{extrinsic_levi_inertia, probe_for};
use levilab::{fundamental_cartan, WeightSystem};
use levilab_bench::fixture;

const CASES: [&str; 4] = ["sl2:s11-theta:k=1", "sl3:pair:k=1", "sl2:s11-theta:k=3", "sl2:theta-theta:diag=2"];

fn decomposition(c: &mut Criterion) {
    let mut g = c.benchmark_group("decomposition");
    for name in CASES {
        let setup = build_case(&CaseSpec::parse(name).unwrap()).unwrap();
        let d = fundamental_cartan(&setup).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &(setup, d), |b, (s, d)| b.iter(|| WeightSystem::build(s, d).unwrap()));
    }
    g.finish();
}

fn levi(c: &mut Criterion) {
    let mut g = c.benchmark_group("levi_matrix");
    for name in CASES {
        let (w, base) = fixture(name, 0);
        g.bench_with_input(BenchmarkId::from_parameter(name), &(w, base), |b, (w, base)| b.iter(|| levi_matrix(w, base).unwrap()));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let spec = CaseSpec::parse("sl2:s11-theta:k=1").unwrap();
    let d = fundamental_cartan(&build_case(&spec).unwrap()).unwrap();
    let probe = probe_for(&spec, &d, &[0.3]).unwrap();
    c.bench_function("extrinsic_oracle", |b| b.iter(|| extrinsic_levi_inertia(&probe).unwrap()));
}

criterion_group!(benches, decomposition, levi, oracle);
criterion_main!(benches);
