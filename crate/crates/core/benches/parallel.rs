//! Sequential against rayon execution for each data-parallel kernel.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use escape_core::gen::{diagonal_stack, generate, GenSpec};
use escape_core::lp::{chernoff_tail_with, FractionalSolution};
use escape_core::mpc::{run_sep_mpc, MpcConfig};
use escape_core::oracle::{solve_exact_rep_with, OracleConfig};
use escape_core::peeling::{build_escape_dags, solve_peeling_with};
use escape_core::{Exec, Instance, RepInstance, SepInstance};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn rep(n: usize, side: i64, disjoint: bool) -> RepInstance {
    match generate(&GenSpec::random_rep(n, side, 7, disjoint)).unwrap() {
        Instance::Rep(r) => r,
        Instance::Sep(_) => unreachable!(),
    }
}

fn sep(n: usize, side: i64) -> SepInstance {
    match generate(&GenSpec::random_sep(n, side, 7, true)).unwrap() {
        Instance::Sep(s) => s,
        Instance::Rep(_) => unreachable!(),
    }
}

fn oracle(c: &mut Criterion) {
    let inst = rep(8, 12, false);
    let mut g = c.benchmark_group("oracle_n8");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = OracleConfig { exec, ..OracleConfig::default() };
        g.bench_function(name, |b| b.iter(|| solve_exact_rep_with(black_box(&inst), &cfg).unwrap()));
    }
    g.finish();
}

fn chernoff(c: &mut Criterion) {
    let inst = diagonal_stack(32).unwrap();
    let f = FractionalSolution::uniform(&inst).unwrap();
    let mut g = c.benchmark_group("chernoff_tail_1000");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| chernoff_tail_with(black_box(&inst), &f, 1.0, 1000, 3, exec).unwrap())
        });
    }
    g.finish();
}

fn dags(c: &mut Criterion) {
    let mut g = c.benchmark_group("escape_dags");
    for n in [10_000usize, 50_000] {
        let inst = rep(n, 8 * n as i64, true);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &inst, |b, inst| {
                b.iter(|| build_escape_dags(inst, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn peeling(c: &mut Criterion) {
    let inst = rep(50_000, 400_000, true);
    let mut g = c.benchmark_group("solve_peeling_50000");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| solve_peeling_with(black_box(&inst), exec).unwrap()));
    }
    g.finish();
}

fn mpc(c: &mut Criterion) {
    let inst = sep(2_000, 100);
    let mut g = c.benchmark_group("mpc_n2000");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = MpcConfig::for_input(inst.len()).with_exec(exec);
        g.bench_function(name, |b| b.iter(|| run_sep_mpc(black_box(&inst), &cfg, None).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, oracle, chernoff, dags, peeling, mpc);
criterion_main!(benches);
