use criterion::{black_box, criterion_group, criterion_main, Criterion};

use gkcodes::codes::{code_dimension, one_point_dual};
use gkcodes::weights::exhaustive_dependence_search;
use gkcodes::{CurveParams, Field, Matrix};

fn field_mul(c: &mut Criterion) {
    let f = Field::new(3, 6).unwrap();
    let xs: Vec<_> = f.elements().collect();
    c.bench_function("gf729_mul_all_pairs_row", |b| {
        b.iter(|| {
            let a = xs[123];
            xs.iter()
                .fold(f.from_int(0), |acc, &x| f.add(acc, f.mul(a, black_box(x))))
        })
    });
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_points");
    g.sample_size(10);
    for q in [2, 3] {
        let p = CurveParams::new(q).unwrap();
        g.bench_function(format!("q{q}"), |b| {
            b.iter(|| p.enumerate_points().unwrap().len())
        });
    }
    g.finish();
}

fn rank(c: &mut Criterion) {
    let f = Field::new(3, 6).unwrap();
    let n = 120;
    let rows: Vec<Vec<_>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f.decode(((i * 7919 + j * 104_729) % 729) as u64).unwrap())
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(n, rows);
    c.bench_function("rank_120x120_gf729", |b| b.iter(|| black_box(&m).rank(&f)));

    let p = CurveParams::new(3).unwrap();
    let pts = p.enumerate_points().unwrap();
    let code = one_point_dual(&pts, 5).unwrap();
    let mut g = c.benchmark_group("stream_rank");
    g.sample_size(10);
    g.bench_function("q3_m5", |b| b.iter(|| code_dimension(&code)));
    g.finish();
}

fn dependence_search(c: &mut Criterion) {
    let p = CurveParams::new(2).unwrap();
    let pts = p.enumerate_points().unwrap();
    let code = one_point_dual(&pts, 2).unwrap();
    let mut g = c.benchmark_group("dependence_search");
    g.sample_size(10);
    g.bench_function("q2_m2_w4", |b| {
        b.iter(|| exhaustive_dependence_search(&code, 4, u64::MAX).nodes)
    });
    g.finish();
}

criterion_group!(benches, field_mul, enumeration, rank, dependence_search);
criterion_main!(benches);
