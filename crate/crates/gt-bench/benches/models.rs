use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gt_bench::class_pairs;
use gt_core::chord::{conway_exponential_identity, epsilon_cancellation, PhiTerm};
use gt_core::coeff::q;
use gt_core::graded::{bialgebra_check, cyclic_words, gr_bracket_words, gr_delta_word, BialgebraAxiom, XWord};
use gt_core::planar::{bracket_classes_geometric, mu_geometric};
use gt_core::skein::{bracket_skein_classes, mu_skein};
use gt_core::GroupWord;

fn brackets(c: &mut Criterion) {
    let pairs = class_pairs(4, 8);
    c.bench_function("bracket geometric, length 4", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(bracket_classes_geometric(x, y, 3).unwrap());
            }
        })
    });
    c.bench_function("bracket skein, length 4", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(bracket_skein_classes(x, y, 3).unwrap());
            }
        })
    });
}

fn self_intersections(c: &mut Criterion) {
    let w = GroupWord::from_signed(&[1, -2, 3, 1]);
    c.bench_function("mu geometric", |b| b.iter(|| mu_geometric(black_box(&w), 3).unwrap()));
    c.bench_function("mu skein", |b| b.iter(|| mu_skein(black_box(&w), 3).unwrap()));
}

fn graded(c: &mut Criterion) {
    c.bench_function("graded bracket, length 6", |b| {
        b.iter(|| gr_bracket_words(black_box(&[1, 2, 2, 3, 1, 2]), black_box(&[2, 3, 3, 1, 1, 3])))
    });
    c.bench_function("graded cobracket, length 8", |b| b.iter(|| gr_delta_word(black_box(&[1, 2, 1, 3, 1, 2, 2, 1]))));
    let words = cyclic_words(3, 3);
    c.bench_function("cocycle check, length 3", |b| b.iter(|| bialgebra_check(BialgebraAxiom::Cocycle, &words)));
}

fn chords(c: &mut Criterion) {
    let x = PhiTerm { v: XWord(vec![1, 2, 3]), w: XWord(vec![2, 2, 1]), coeff: q(1) };
    let bw = XWord(vec![3, 1, 2, 1]);
    c.bench_function("epsilon cancellation", |b| b.iter(|| epsilon_cancellation(black_box(&bw), black_box(&x))));
    c.bench_function("conway identity, degree 5", |b| b.iter(|| conway_exponential_identity(5).unwrap()));
}

criterion_group!(benches, brackets, self_intersections, graded, chords);
criterion_main!(benches);
