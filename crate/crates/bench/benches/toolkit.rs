use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use tilesmith_bench::square_system;
use tilesmith_core::compress::compress;
use tilesmith_core::search::{min_tileset, enumerate_sf, EnumOptions};
use tilesmith_core::sim::{grow_greedy, unique_shape, SimBehavior};
use tilesmith_core::stability::{is_tau_stable_exhaustive, is_tau_stable_flow};
use tilesmith_core::synth::synthesize;
use tilesmith_core::witness::gen_witness;
use tilesmith_core::{enumerate_coop_families, Shape};

fn families(c: &mut Criterion) {
    c.bench_function("enumerate_coop_families", |b| b.iter(enumerate_coop_families));
}

fn simulation(c: &mut Criterion) {
    let t = square_system(12);
    let beh = SimBehavior::from(&t);
    let shape = Shape::square(12).unwrap();
    c.bench_function("grow_greedy 12x12", |b| b.iter(|| grow_greedy(black_box(&beh), 1000)));
    c.bench_function("unique_shape 12x12", |b| b.iter(|| unique_shape(black_box(&beh), &shape)));
}

fn stability(c: &mut Criterion) {
    let t = square_system(3);
    let alpha = grow_greedy(&SimBehavior::from(&t), 100).assembly;
    let tiles = t.tileset.tiles();
    c.bench_function("stability flow 3x3", |b| b.iter(|| is_tau_stable_flow(&alpha, tiles, &t.assignment)));
    c.bench_function("stability exhaustive 3x3", |b| {
        b.iter(|| is_tau_stable_exhaustive(&alpha, tiles, &t.assignment))
    });
}

fn synthesis(c: &mut Criterion) {
    let sq = square_system(6).strength_free();
    c.bench_function("synthesize 6x6 square", |b| b.iter(|| synthesize(black_box(&sq)).unwrap()));
    let w = gen_witness(4).sf;
    c.bench_function("synthesize witness n=4", |b| b.iter(|| synthesize(black_box(&w)).unwrap()));
}

fn compression(c: &mut Criterion) {
    let t = square_system(8);
    c.bench_function("compress 8x8 square", |b| b.iter(|| compress(black_box(&t))));
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let s = Shape::square(2).unwrap();
    g.bench_function("min_tileset 2x2", |b| b.iter(|| min_tileset(&s, 3)));
    g.bench_function("enumerate_sf k=1 a=2", |b| b.iter(|| enumerate_sf(1, 2, EnumOptions::default()).count()));
    g.finish();
}

criterion_group!(benches, families, simulation, stability, synthesis, compression, search);
criterion_main!(benches);
