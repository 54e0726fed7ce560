use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ytwo_core::ortho_rep::PhiRep;
use ytwo_core::presentation::{schedule, Evaluator, Flavor};
use ytwo_core::spectool::{group_order_bfs, specialize, RepKind};
use ytwo_core::suites;
use ytwo_core::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn relators(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi_big_y_relators_m6_k20");
    let phi = PhiRep::new(6).unwrap();
    let ev = Evaluator::new(&phi).unwrap();
    let sched = schedule(6, 20, Flavor::BigY).unwrap();
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(ev.check_schedule(&sched, exec)))
        });
    }
    g.finish();
}

fn lifting(c: &mut Criterion) {
    let mut g = c.benchmark_group("lifting_m4_50_words");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(suites::lifting(4, 50, 30, 42, exec).unwrap()))
        });
    }
    g.finish();
}

fn bfs(c: &mut Criterion) {
    let mut g = c.benchmark_group("bfs_eta_3_7");
    g.sample_size(10);
    let rep = specialize(3, 7, RepKind::Eta).unwrap();
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(group_order_bfs(rep.field(), rep.b_generators(), 1 << 21, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, relators, lifting, bfs);
criterion_main!(benches);
