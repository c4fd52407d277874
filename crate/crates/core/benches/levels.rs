//! Benchmarks for the levelwise kernels: the data-parallel path (rayon,
//! default `parallel` feature) against an explicit sequential loop over the
//! same per-level API, plus the certificate and bidisc workloads.

use criterion::{criterion_group, criterion_main, Criterion};
use hartogs_core::parse::parse_poly;
use hartogs_core::quotient;

const LEVEL_MAX: u32 = 26;

fn heavy_poly() -> hartogs_core::MultiplierPoly {
    parse_poly("z*w^5+z^2*w^3+z^3*w^5+z^5*w").unwrap()
}

fn level_dims(c: &mut Criterion) {
    let p = heavy_poly();
    let mut group = c.benchmark_group("level_dims");
    group.bench_function("parallel_map", |b| {
        // dim_table fans the levels out over the pool under the default
        // feature set
        b.iter(|| quotient::dim_table(&p, LEVEL_MAX).unwrap())
    });
    group.bench_function("sequential_loop", |b| {
        b.iter(|| {
            (0..=LEVEL_MAX)
                .map(|m| quotient::quotient_level_dim(&p, m).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let p = parse_poly("z^2-2*z*w+w^2").unwrap();
    c.bench_function("graded_certificate_level_16", |b| {
        b.iter(|| quotient::graded_certificate(&p, 16).unwrap())
    });
}

fn bidisc_commutators(c: &mut Criterion) {
    let half = hartogs_core::Rat::new(1.into(), 2.into());
    c.bench_function("theta_a_verify_n16", |b| {
        b.iter(|| hartogs_core::bidisc::theta_a_verify(&half, 16).unwrap())
    });
}

criterion_group!(benches, level_dims, certificates, bidisc_commutators);
criterion_main!(benches);
