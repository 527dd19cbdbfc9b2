use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use foldtree::cone::{distinct_unfoldings, Frustum};
use foldtree::enumerate::{enumerate_gluings, EnumerateOptions, Execution};
use foldtree::polygon::{latin_cross, unit_square};

fn gluings(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (name, p) in [("square", unit_square()), ("latin-cross", latin_cross())] {
        for (label, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            let opts = EnumerateOptions { execution, ..Default::default() };
            g.bench_with_input(BenchmarkId::new(label, name), &p, |b, p| {
                b.iter(|| enumerate_gluings(p, &opts).count())
            });
        }
    }
    g.finish();
}

fn cone(c: &mut Criterion) {
    let f = Frustum::with_defaults(8).unwrap();
    c.bench_function("unfold-cone k=8", |b| b.iter(|| distinct_unfoldings(&f).distinct));
}

criterion_group!(benches, gluings, cone);
criterion_main!(benches);
