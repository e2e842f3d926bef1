use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tc_graphs::cohomology::ClassIndex;
use tc_graphs::complex::enumerate_unordered;
use tc_graphs::graph::{choose_spanning_tree, subdivide_for_n};
use tc_graphs::morse::{build_gradient, morse_boundary, morse_homology};
use tc_graphs::tc::{tc_report, TcOptions};
use tc_graphs_bench::{tc_workloads, workloads};

fn stages(c: &mut Criterion) {
    let mut group = c.benchmark_group("stages");
    group.sample_size(10);
    for (name, g, n) in workloads() {
        let h = subdivide_for_n(&g, n).unwrap().graph;
        let t = choose_spanning_tree(&h, None).unwrap();
        group.bench_with_input(BenchmarkId::new("enumerate", name), &(), |b, _| {
            b.iter(|| enumerate_unordered(&h, n).unwrap())
        });
        let x = enumerate_unordered(&h, n).unwrap();
        group.bench_with_input(BenchmarkId::new("gradient", name), &(), |b, _| {
            b.iter(|| build_gradient(&x, &t).unwrap())
        });
        let w = build_gradient(&x, &t).unwrap();
        group.bench_with_input(BenchmarkId::new("morse_boundary", name), &(), |b, _| {
            b.iter(|| morse_boundary(&x, &w).unwrap())
        });
        let m = morse_boundary(&x, &w).unwrap();
        group.bench_with_input(BenchmarkId::new("morse_homology", name), &(), |b, _| {
            b.iter(|| morse_homology(&m).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cellular_homology", name), &(), |b, _| {
            b.iter(|| x.cellular_homology())
        });
        group.bench_with_input(BenchmarkId::new("classes", name), &(), |b, _| b.iter(|| ClassIndex::new(&x)));
    }
    group.finish();
}

fn bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("tc_report");
    group.sample_size(10);
    let options = TcOptions::default();
    for (name, g, n) in tc_workloads() {
        group.bench_function(name, |b| b.iter(|| tc_report(&g, n, &options).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, stages, bounds);
criterion_main!(benches);
