use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tabsieve::crystal::coxeter_orbits;
use tabsieve::promotion::promotion_permutation;
use tabsieve::sieving::{principal_candidate, verify_coxeter_csp};
use tabsieve::sweep::{run_sweep, Check, ShapeFamily, SweepConfig};
use tabsieve::{Execution, Partition, TableauSet};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn label(exec: Execution) -> &'static str {
    match exec {
        Execution::Sequential => "sequential",
        Execution::Parallel => "parallel",
    }
}

fn carrier(c: &mut Criterion) {
    let shape = Partition::new(vec![4, 2, 1]).unwrap();
    let mut group = c.benchmark_group("carrier (4,2,1) n=6");
    group.sample_size(10);
    for exec in MODES {
        let set = TableauSet::with_options(&shape, 6, tabsieve::DEFAULT_CAP, exec).unwrap();
        group.bench_with_input(BenchmarkId::new("enumerate", label(exec)), &exec, |b, &exec| {
            b.iter(|| TableauSet::with_options(black_box(&shape), 6, tabsieve::DEFAULT_CAP, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("coxeter orbits", label(exec)), &set, |b, set| {
            b.iter(|| coxeter_orbits(black_box(set)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("promotion", label(exec)), &set, |b, set| {
            b.iter(|| promotion_permutation(black_box(set)).unwrap())
        });
        let f = principal_candidate(&set);
        group.bench_with_input(BenchmarkId::new("csp", label(exec)), &set, |b, set| {
            b.iter(|| verify_coxeter_csp(black_box(set), &f).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut config = SweepConfig::new(ShapeFamily::All { size_min: 1, size_max: 6 }, 1, 6);
    config.checks = vec![Check::FreeOrbits, Check::CspPrincipal, Check::PrOrders];
    let mut group = c.benchmark_group("sweep |λ|≤6 n≤6");
    group.sample_size(10);
    for exec in MODES {
        let config =
            SweepConfig { execution: Some(exec), jobs: (exec == Execution::Sequential).then_some(1), ..config.clone() };
        group.bench_function(label(exec), |b| b.iter(|| run_sweep(black_box(&config)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, carrier, sweep);
criterion_main!(benches);
