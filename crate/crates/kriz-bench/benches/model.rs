use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use kriz::action::character_direct_cell;
use kriz::chars::{irreducible_character, type_character, Partition};
use kriz::exterior::{normalize, Strategy, TypeSignature};
use kriz::homology::{betti_table, differential_matrix};

use kriz_bench::{genus_two, line, plane, rewriting_batch};

fn bench_normalize(c: &mut Criterion) {
    let ring = genus_two();
    let batch = rewriting_batch(&ring, 5);
    c.bench_function("normalize 5-point batch", |b| {
        b.iter(|| {
            for raw in &batch {
                black_box(normalize(&ring, raw, Strategy::Leftmost).unwrap());
            }
        })
    });
}

fn bench_rank(c: &mut Criterion) {
    let ring = line();
    c.bench_function("rank of d on the (2,2) cell, 6 points", |b| {
        b.iter(|| black_box(differential_matrix(&ring, 6, 2, 2).rank()))
    });
}

fn bench_betti(c: &mut Criterion) {
    let ring = plane();
    c.bench_function("full Betti table, 4 points", |b| {
        b.iter(|| black_box(betti_table(&ring, 4)))
    });
}

fn bench_characters(c: &mut Criterion) {
    let ring = line();
    c.bench_function("direct top-row character, 5 points", |b| {
        b.iter(|| black_box(character_direct_cell(&ring, 5, 4, 4).unwrap()))
    });
    let genus = genus_two();
    let a1 = genus.symbol_index("a1").unwrap();
    let sig = TypeSignature::new(vec![(2, a1), (2, a1), (1, 0), (1, a1)]);
    c.bench_function("induced type character, 6 points", |b| {
        b.iter(|| black_box(type_character(&genus, &sig).unwrap()))
    });
    c.bench_function("rim-hook character table, 8 points", |b| {
        b.iter(|| {
            for lambda in kriz::chars::partitions(8) {
                black_box(irreducible_character(&lambda));
            }
            black_box(Partition::new(vec![8]))
        })
    });
}

criterion_group!(
    model,
    bench_normalize,
    bench_rank,
    bench_betti,
    bench_characters
);
criterion_main!(model);
