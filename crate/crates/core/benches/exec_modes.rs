//! Sequential vs parallel execution on the batch-heavy operations.
//! Without the `parallel` feature both arms run the same sequential code.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eulerkit::arith::{solve_affine, QMatrix, Rational};
use eulerkit::catalog;
use eulerkit::higher::{bicat_adjacency, bicat_to_datum, chi_n, locally_chaotic};
use eulerkit::simplicial::{filler_report, nerve};
use eulerkit::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn fillers(c: &mut Criterion) {
    let mut g = c.benchmark_group("filler_report");
    g.sample_size(10);
    for (name, cat) in [
        ("chain6", catalog::chain(6)),
        ("transformations2", catalog::full_transformation_monoid(2)),
        ("three_object", catalog::three_object()),
    ] {
        let x = nerve(&cat, 4);
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &x, |b, x| b.iter(|| filler_report(black_box(x), exec)));
        }
    }
    g.finish();
}

fn bicategories(c: &mut Criterion) {
    let mut g = c.benchmark_group("bicategory_chi");
    g.sample_size(20);
    let b = locally_chaotic(&catalog::inflate(&catalog::chain(4), &[2, 1, 2, 1]));
    let d = bicat_to_datum(&b);
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new(mode, "bicat_adjacency"), |bn| bn.iter(|| bicat_adjacency(black_box(&b), exec)));
        g.bench_function(BenchmarkId::new(mode, "chi_n"), |bn| bn.iter(|| chi_n(black_box(&d), exec)));
    }
    g.finish();
}

fn solver_sweep(c: &mut Criterion) {
    let vals = [-1i64, 0, 1, 2];
    let systems: Vec<QMatrix> = (0..4096usize)
        .map(|code| {
            let mut k = code * 64 + 7;
            let rows: Vec<Vec<i64>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = vals[k % 4];
                            k /= 4;
                            v
                        })
                        .collect()
                })
                .collect();
            QMatrix::from_int_rows(&rows)
        })
        .collect();
    let ones = vec![Rational::one(); 3];
    let mut g = c.benchmark_group("solver_sweep");
    g.sample_size(10);
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| {
            b.iter(|| exec.map(&systems, |m| solve_affine(m, &ones).unwrap().consistent).iter().filter(|&&x| x).count())
        });
    }
    g.finish();
}

criterion_group!(benches, fillers, bicategories, solver_sweep);
criterion_main!(benches);
