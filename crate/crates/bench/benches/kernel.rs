//! Benchmarks for the hot paths: the straightening kernel, the deformed
//! closure sweep, and the mode-basis round trip.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use lieform_core::embedding::{closure_residuals, DeformSign, EmbeddingContext};
use lieform_core::exact::Rational;
use lieform_core::presets::{build_poincare, CasimirCatalog, CasimirName, Signature};
use lieform_core::qdeform::{self, TMode};
use lieform_core::report::VerificationReport;
use lieform_core::ENGINE_VERSION;

fn sig(p: u8, q: u8) -> Signature {
    Signature::new(p, q).unwrap()
}

/// Straightening a product of quadratic invariants exercises the
/// normal-ordering kernel on a dense input.
fn bench_straighten(c: &mut Criterion) {
    let pres = build_poincare(sig(0, 3));
    let catalog = CasimirCatalog::build(sig(0, 3)).unwrap();
    let q2 = catalog.get(CasimirName::Q2).unwrap();
    c.bench_function("straighten-q2-squared", |b| {
        b.iter(|| {
            pres.mul_guarded(black_box(q2), black_box(q2), pres.term_limit())
                .unwrap()
        })
    });
}

fn bench_closure(c: &mut Criterion) {
    let ctx = EmbeddingContext::new(sig(0, 2), DeformSign::Plus).unwrap();
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    group.bench_function("closure-residuals-0-2-plus", |b| {
        b.iter(|| closure_residuals(black_box(&ctx)).unwrap())
    });
    group.finish();
}

fn bench_roundtrip(c: &mut Criterion) {
    let y = Rational::from_integer(1.into());
    let mut group = c.benchmark_group("qdeform");
    group.sample_size(10);
    group.bench_function("roundtrip-formal-window-8", |b| {
        b.iter(|| {
            let mut report = VerificationReport::new("bench", ENGINE_VERSION);
            qdeform::run_suite(8, &y, &[TMode::Formal], &mut report).unwrap();
            assert!(report.all_passed());
        })
    });
    group.finish();
}

criterion_group!(benches, bench_straighten, bench_closure, bench_roundtrip);
criterion_main!(benches);
