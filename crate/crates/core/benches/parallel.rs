use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sp_strata::counting::{brute_force_isotropic, FormSpace, GramMatrix, Kind};
use sp_strata::stratum::{e1_page_with, verify_families_with};
use sp_strata::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn first_page(c: &mut Criterion) {
    let mut g = c.benchmark_group("e1_page");
    for theta in [6u32, 8] {
        for (name, exec) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(name, theta), &theta, |b, &t| {
                b.iter(|| e1_page_with(black_box(t), exec))
            });
        }
    }
    g.finish();
}

fn families(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_families");
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| verify_families_with(black_box(8), exec).unwrap()));
    }
    g.finish();
}

fn isotropic_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_force_isotropic");
    g.sample_size(10);
    let space = FormSpace::new(Kind::Symplectic, 6).unwrap();
    let gram = GramMatrix::standard(space, 5).unwrap();
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| brute_force_isotropic(black_box(&gram), 2, exec, false).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, first_page, families, isotropic_enumeration);
criterion_main!(benches);
