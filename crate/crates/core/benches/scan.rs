use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use wavenum_core::{conumber, oracle};

/// Window scans from the maximal schedule: all primes below the window head
/// divide out candidates up to the head's square. Compares the chunked
/// parallel scan against the sequential reference.
fn window_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("window_scan");
    for &head in &[47u64, 2207] {
        let hi = head * head;
        let primes: Vec<u64> = oracle::sieve(head - 1).unwrap().primes().to_vec();
        group.throughput(Throughput::Elements(hi - head));
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", head), &primes, |b, primes| {
            b.iter(|| conumber::surviving_in_range(black_box(primes), head, hi));
        });
        group.bench_with_input(
            BenchmarkId::new("sequential", head),
            &primes,
            |b, primes| {
                b.iter(|| conumber::surviving_in_range_seq(black_box(primes), head, hi));
            },
        );
    }
    group.finish();
}

/// Prime recovery to one million: the classical sieve versus wheel-residue
/// candidate enumeration with trial-division confirmation, for two wheel
/// sizes.
fn prime_enumeration(c: &mut Criterion) {
    let limit = 1_000_000u64;
    let mut group = c.benchmark_group("prime_enumeration");
    group.sample_size(20);
    group.throughput(Throughput::Elements(limit));
    group.bench_function("baseline_sieve", |b| {
        b.iter(|| oracle::sieve(black_box(limit)).unwrap().len());
    });
    for wheel in [vec![2u64, 3, 5], vec![2, 3, 5, 7, 11, 13]] {
        let id = wheel
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join("-");
        group.bench_with_input(BenchmarkId::new("wheel", id), &wheel, |b, w| {
            b.iter(|| conumber::wheel_primes_up_to(black_box(w), limit).0.len());
        });
    }
    group.finish();
}

criterion_group!(benches, window_scan, prime_enumeration);
criterion_main!(benches);
