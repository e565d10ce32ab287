use cg3_bench::all_cells;
use cg3_core::gamma_series::{eval_at_one, GammaParams};
use cg3_core::{cg_expansion, oracle_expansion, Readings};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn formula(c: &mut Criterion) {
    let mut g = c.benchmark_group("formula");
    for w in [(1, 0, 1, 0), (2, 1, 2, 1), (3, 1, 2, 2)] {
        let cells = all_cells(w.0, w.1, w.2, w.3);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{w:?}")), &cells, |b, cells| {
            b.iter(|| {
                for (l, d) in cells {
                    black_box(cg_expansion(l, d, Readings::ADOPTED).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for w in [(1, 0, 1, 0), (2, 1, 2, 1)] {
        let cells = all_cells(w.0, w.1, w.2, w.3);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{w:?}")), &cells, |b, cells| {
            b.iter(|| {
                for (l, d) in cells {
                    black_box(oracle_expansion(l, d).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let p = GammaParams::planar(4, 3, 5);
    c.bench_function("eval_at_one", |b| b.iter(|| eval_at_one(black_box(&p))));
}

criterion_group!(benches, formula, oracle, series);
criterion_main!(benches);
