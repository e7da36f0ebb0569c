use criterion::{criterion_group, criterion_main, Criterion};
use fsgroups::action::Evaluator;
use fsgroups::analysis::{nucleus, DEFAULT_NUCLEUS_CAP};
use fsgroups::geometry::{growth, schreier_graph};
use fsgroups::words::relator_family;
use fsgroups::{zoo, GroupWord};
use fsgroups_bench::random_group_words;
use std::hint::black_box;

fn word_problem(c: &mut Criterion) {
    let m = zoo::grigorchuk();
    let ev = Evaluator::new(&m);
    let (base, sigma) = zoo::grigorchuk_presentation();
    let relators = relator_family(&base, &sigma, 2);
    c.bench_function("grigorchuk relators to depth 2", |b| {
        b.iter(|| relators.iter().all(|r| ev.is_identity(black_box(r)).unwrap()))
    });
    let words = random_group_words(1, &["a", "b", "c", "d"], 24, 20);
    c.bench_function("grigorchuk 20 random words of length 24", |b| {
        b.iter(|| words.iter().filter(|w| ev.is_identity(black_box(w)).unwrap()).count())
    });
}

fn minimization(c: &mut Criterion) {
    let m = zoo::f_n(6).unwrap();
    let sq = m.product(&m).unwrap();
    c.bench_function("canonical forms of a 169-state product", |b| b.iter(|| black_box(&sq).canonical_states()));
}

fn contraction(c: &mut Criterion) {
    let m = zoo::basilica();
    c.bench_function("basilica nucleus", |b| b.iter(|| nucleus(black_box(&m), DEFAULT_NUCLEUS_CAP).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let m = zoo::grigorchuk();
    let gens: Vec<GroupWord> = ["a", "b", "c", "d"].iter().map(|s| GroupWord::generator(s)).collect();
    c.bench_function("grigorchuk growth to radius 6", |b| b.iter(|| growth(black_box(&m), &gens, 6).unwrap()));
    c.bench_function("grigorchuk schreier graph level 12", |b| {
        b.iter(|| schreier_graph(black_box(&m), &gens, 12).unwrap())
    });
}

criterion_group!(benches, word_problem, minimization, contraction, geometry);
criterion_main!(benches);
