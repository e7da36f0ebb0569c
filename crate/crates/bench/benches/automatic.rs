use criterion::{criterion_group, criterion_main, Criterion};
use fsgroups::autostruct::surface::SurfaceBall;
use fsgroups::autostruct::{dehn_reduce, make_unique, z2_structure, SurfaceGroupPresentation};
use fsgroups_bench::random_letter_words;
use std::hint::black_box;

fn z2(c: &mut Criterion) {
    let s = z2_structure();
    let words = random_letter_words(3, 4, 50, 20);
    c.bench_function("z2 normal forms of 20 words of length 50", |b| {
        b.iter(|| words.iter().map(|w| s.normal_form(black_box(w)).unwrap().len()).sum::<usize>())
    });
    c.bench_function("z2 make_unique", |b| b.iter(|| make_unique(black_box(&s)).unwrap()));
}

fn surface(c: &mut Criterion) {
    let p = SurfaceGroupPresentation::new(2).unwrap();
    let words = random_letter_words(4, 8, 200, 20);
    c.bench_function("dehn reduction of 20 words of length 200", |b| {
        b.iter(|| words.iter().map(|w| dehn_reduce(&p, black_box(w)).len()).sum::<usize>())
    });
    c.bench_function("genus 2 ball of radius 3", |b| b.iter(|| SurfaceBall::new(black_box(&p), 3, 200_000).len()));
}

criterion_group!(benches, z2, surface);
criterion_main!(benches);
