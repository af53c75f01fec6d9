use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use towerlab::basicfield::{ram_table, zeta_genus_with};
use towerlab::ffield::{make_field, BivarPoly};
use towerlab::omfactor::DEFAULT_MAX_DEPTH;
use towerlab::par::Exec;

fn curves() -> Vec<(&'static str, BivarPoly, usize)> {
    let gf2 = make_field(2, 1).unwrap();
    let gf3 = make_field(3, 1).unwrap();
    let gf5 = make_field(5, 1).unwrap();
    vec![
        (
            "family_q2",
            BivarPoly::from_int_terms(&gf2, &[(0, 3, 1), (1, 3, 1), (0, 1, 1), (1, 1, 1), (3, 0, 1)]),
            2,
        ),
        (
            "elliptic_gf5",
            BivarPoly::from_int_terms(&gf5, &[(0, 2, 1), (3, 0, -1), (1, 0, -1)]),
            1,
        ),
        (
            "genus2_gf3",
            BivarPoly::from_int_terms(&gf3, &[(0, 2, 1), (5, 0, -1), (1, 0, 1)]),
            2,
        ),
    ]
}

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_ram_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("ram_table");
    for (name, f, _) in curves() {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &f, |b, f| {
                b.iter(|| ram_table(black_box(f), DEFAULT_MAX_DEPTH, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_zeta(c: &mut Criterion) {
    let mut g = c.benchmark_group("zeta_genus");
    g.sample_size(10);
    for (name, f, cap) in curves() {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &f, |b, f| {
                b.iter(|| zeta_genus_with(black_box(f), cap, DEFAULT_MAX_DEPTH, exec).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, bench_ram_table, bench_zeta);
criterion_main!(benches);
