use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use iterated_sums::{x_limit, ClassSeries, Exp, SumCtx, SumSpec, Sym};
use padic_core::{build_ring, Exec};

fn specs() -> Vec<SumSpec> {
    vec![
        SumSpec::f1(3, 1),
        SumSpec::f2(1, Exp::paren(2), 1, 2),
        SumSpec::f(&[Exp::plain(2), Exp::plain(1)], &[2, 1]).with_alpha(&[Sym::D(2)]).with_sup(1),
    ]
}

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel");
    g.sample_size(10);
    for (p, m) in [(2u64, 3u64), (3, 4), (7, 3)] {
        let ring = Arc::new(build_ring(p, m, 40).unwrap());
        for exec in [Exec::Sequential, Exec::Parallel] {
            let id = BenchmarkId::new(format!("{exec:?}"), format!("({p},{m})"));
            g.bench_with_input(id, &exec, |b, &exec| {
                b.iter(|| {
                    // fresh context: the kernel cache would hide the work
                    let ctx = SumCtx::with_exec(ring.clone(), exec);
                    for s in specs() {
                        ClassSeries::build(&ctx, &s).unwrap();
                    }
                })
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("x_limit");
    g.sample_size(10);
    let ring = Arc::new(build_ring(2, 3, 40).unwrap());
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| {
                let ctx = SumCtx::with_exec(ring.clone(), exec);
                for s in specs() {
                    x_limit(&ctx, &s, 1 << 16).unwrap();
                }
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
