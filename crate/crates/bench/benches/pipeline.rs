use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use dehnword_bench::{long_word, synthesis_inputs};
use dehnword_core::search::symplectic_method;
use dehnword_core::symplectic::{evaluate, lefschetz_certify};
use dehnword_core::synthesis::{synthesize_with, SynthesisOptions};
use dehnword_core::{dataset, polygon, tables, Budget, DataSet};

fn bench_dataset(c: &mut Criterion) {
    c.bench_function("enumerate genus 4", |b| b.iter(|| dataset::enumerate(black_box(4), None)));
    let d: DataSet = "(12,0;(1,2),(1,12),(5,12))".parse().unwrap();
    c.bench_function("power and profile", |b| b.iter(|| black_box(&d).power(5).unwrap().fixed_point_profile()));
}

fn bench_symplectic(c: &mut Criterion) {
    let w = long_word(5, 20);
    c.bench_function("evaluate genus 5 word of 440 letters", |b| b.iter(|| evaluate(black_box(&w))));
    let d: DataSet = "(22,0;(1,2),(5,11),(1,22))".parse().unwrap();
    let w = long_word(5, 1);
    c.bench_function("certify order 22", |b| b.iter(|| lefschetz_certify(black_box(&w), &d)));
    c.bench_function("check table 3", |b| b.iter(|| tables::check_table(3).unwrap()));
}

fn bench_synthesis(c: &mut Criterion) {
    let opts = SynthesisOptions { search: false, ..Default::default() };
    let mut g = c.benchmark_group("synthesize");
    for (kind, d) in synthesis_inputs() {
        g.bench_function(kind, |b| b.iter(|| synthesize_with(black_box(&d), &opts).unwrap()));
    }
    g.finish();
}

fn bench_polygon(c: &mut Criterion) {
    let d: DataSet = "(7,0;(1,7),(2,7),(4,7))".parse().unwrap();
    c.bench_function("polygon report order 7", |b| b.iter(|| polygon::polygon_report(black_box(&d)).unwrap()));
}

fn bench_search(c: &mut Criterion) {
    let d: DataSet = "(9,0;(1,3),(1,9),(5,9))".parse().unwrap();
    let mut g = c.benchmark_group("search");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    g.bench_function("order 9 depth 1", |b| b.iter(|| symplectic_method(black_box(&d), &Budget::default()).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_dataset, bench_symplectic, bench_synthesis, bench_polygon, bench_search);
criterion_main!(benches);
