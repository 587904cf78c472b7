//! Parallel against sequential execution of the heaviest sweeps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use blockalg::intseries::{verify_module, Extension, Family, IntermediateModule, WindowSpec};
use blockalg::par::Exec;
use blockalg::report::lie_axioms;
use blockalg::scalar::{FieldContext, Scalar};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn jacobi_grid(c: &mut Criterion) {
    let mut g = c.benchmark_group("lie_axioms");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(lie_axioms(exec)))
        });
    }
    g.finish();
}

fn module_window(c: &mut Criterion) {
    let ctx = FieldContext::rational(&["a", "b", "s"]).unwrap();
    let var = |n: &str| Scalar::var(&ctx, n).unwrap();
    let m = IntermediateModule::new(
        Scalar::ratio(&ctx, -3, 2),
        Family::Aab {
            a: var("a"),
            b: var("b"),
        },
        Extension::S { s: var("s") },
    )
    .unwrap();
    let window = WindowSpec {
        alpha_max: 3,
        level_max: 4,
        mu_max: 6,
    };
    let mut g = c.benchmark_group("verify_module");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(verify_module(&m, &window, exec)))
        });
    }
    g.finish();
}

criterion_group!(benches, jacobi_grid, module_window);
criterion_main!(benches);
