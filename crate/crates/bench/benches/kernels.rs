use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sigmaframe::booleanization::{bool_congruence, enumerate_congruences};
use sigmaframe::enumeration::Enumeration;
use sigmaframe::formal_cover::DEFAULT_MAX_BASE;
use sigmaframe::generators::{binary_strings, cantor_cover, chain_lattice, with_nonzero_pos, Word};
use sigmaframe::SemiDecision;
use sigmaframe_bench::{envelope_of, grid};

fn or_countable(c: &mut Criterion) {
    // member n confirms at budget n, so the dovetail runs to the end
    let family = Enumeration::new(|n| Some(SemiDecision::confirming_at(n + 40)));
    c.bench_function("or_countable/late", |b| {
        b.iter(|| SemiDecision::or_countable(&family).run(black_box(2_000)))
    });
}

fn saturation(c: &mut Criterion) {
    let mut group = c.benchmark_group("frame_of_envelope");
    for (k, n) in [(1, 2), (2, 1), (1, 6)] {
        let cover = envelope_of(&grid(k, n));
        group.bench_with_input(BenchmarkId::from_parameter(cover.len()), &cover, |b, cover| {
            b.iter(|| cover.frame(DEFAULT_MAX_BASE).unwrap())
        });
    }
    group.finish();
}

fn derivation(c: &mut Criterion) {
    let p = cantor_cover();
    let mut group = c.benchmark_group("cantor_derive");
    for n in [2, 4, 6] {
        let u = Enumeration::from_vec(binary_strings(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &u, |b, u| {
            b.iter(|| p.derive_traced(&Word::empty(), u, 100_000).unwrap())
        });
    }
    group.finish();
}

fn congruences(c: &mut Criterion) {
    let l = grid(1, 4);
    let pos = with_nonzero_pos(&l);
    c.bench_function("bool_congruence/10", |b| b.iter(|| bool_congruence(&l, &pos).unwrap()));
    c.bench_function("enumerate_congruences/chain9", |b| {
        let chain = chain_lattice(9).unwrap();
        b.iter(|| enumerate_congruences(&chain).unwrap().len())
    });
}

criterion_group!(benches, or_countable, saturation, derivation, congruences);
criterion_main!(benches);
