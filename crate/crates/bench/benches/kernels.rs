use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use liecurrent::arith::q;
use liecurrent::double::{build_w, manin_verify, CaseTag, Window};
use liecurrent::orders::enum_bd;
use liecurrent::rmatrix::{build_r, cybe_check, RCase};
use liecurrent::trace_ext::TraceExtension;
use liecurrent::AlgebraType;
use liecurrent_bench::algebra;

fn cybe(c: &mut Criterion) {
    let mut group = c.benchmark_group("cybe");
    for kind in [AlgebraType::A1, AlgebraType::A2] {
        let g = algebra(kind);
        let r = build_r(&RCase::Case(CaseTag::A3), &g).unwrap();
        group.bench_with_input(BenchmarkId::new("A3", kind.name()), &r, |b, r| {
            b.iter(|| cybe_check(black_box(r), &g))
        });
    }
    group.finish();
}

fn manin(c: &mut Criterion) {
    let g = algebra(AlgebraType::A1);
    let mut group = c.benchmark_group("manin");
    for case in [CaseTag::A1, CaseTag::A3, CaseTag::B2, CaseTag::C] {
        let w = build_w(&case, &g).unwrap();
        let window = Window::new(-10, 6).unwrap();
        group.bench_function(case.to_string(), |b| {
            b.iter(|| manin_verify(black_box(&w), &case, &g, window).unwrap())
        });
    }
    group.finish();
}

fn bd(c: &mut Criterion) {
    let mut group = c.benchmark_group("enum_bd");
    for kind in [AlgebraType::A2, AlgebraType::G2] {
        let g = algebra(kind);
        group.bench_function(kind.name(), |b| b.iter(|| enum_bd(black_box(&g), 1).unwrap()));
    }
    group.finish();
}

fn normalize(c: &mut Criterion) {
    let ext = TraceExtension::finite(0, vec![q(1); 12]);
    c.bench_function("normalize_n0_order8", |b| {
        b.iter(|| black_box(&ext).normalize_automorphism(8).unwrap())
    });
}

criterion_group!(benches, cybe, manin, bd, normalize);
criterion_main!(benches);
