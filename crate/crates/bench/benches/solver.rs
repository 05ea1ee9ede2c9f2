use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sumtrans::numeric::{check_pair, SeriesCheckConfig};
use sumtrans::{parse_dsl, partial_fractions, solve_ivp, RecursiveSequence};
use sumtrans_bench::PROGRAMS;

fn parse_and_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for &(name, source) in PROGRAMS {
        group.bench_with_input(BenchmarkId::new("parse", name), source, |b, source| {
            b.iter(|| parse_dsl(black_box(source)).unwrap())
        });
        let spec = parse_dsl(source).unwrap().to_spec().unwrap();
        group.bench_with_input(BenchmarkId::new("solve_ivp", name), &spec, |b, spec| {
            b.iter(|| solve_ivp(black_box(spec)).unwrap())
        });
    }
    group.finish();
}

fn partial_fraction_split(c: &mut Criterion) {
    let mut group = c.benchmark_group("partial_fractions");
    for &(name, source) in PROGRAMS {
        let spec = parse_dsl(source).unwrap().to_spec().unwrap();
        let total = solve_ivp(&spec).unwrap().transform.total();
        group.bench_with_input(BenchmarkId::from_parameter(name), &total, |b, total| {
            b.iter(|| partial_fractions(black_box(total)).unwrap())
        });
    }
    group.finish();
}

fn series_check(c: &mut Criterion) {
    let spec = parse_dsl(PROGRAMS[0].1).unwrap().to_spec().unwrap();
    let report = solve_ivp(&spec).unwrap();
    let cfg =
        SeriesCheckConfig::for_closed_form(&report.closed_form, vec![1.0, 1.5, 2.0], 1e-9).unwrap();
    c.bench_function("check_pair/fibonacci", |b| {
        b.iter(|| {
            let sequence = RecursiveSequence::new(spec.clone());
            check_pair(&sequence, black_box(&report.transform), &cfg).unwrap()
        })
    });
}

criterion_group!(
    benches,
    parse_and_solve,
    partial_fraction_split,
    series_check
);
criterion_main!(benches);
