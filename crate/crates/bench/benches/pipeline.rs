use criterion::{black_box, criterion_group, criterion_main, Criterion};

use qci_core::io::parse_word;
use qci_core::{default_simplifier, filter, mine, FilterConfig, DEFAULT_TOLERANCE};

fn mining(c: &mut Criterion) {
    c.bench_function("mine length 3", |b| b.iter(|| mine(black_box(3), DEFAULT_TOLERANCE).unwrap()));
}

fn filtering(c: &mut Criterion) {
    let raw = mine(3, DEFAULT_TOLERANCE).unwrap();
    let mut g = c.benchmark_group("filter length 3");
    g.sample_size(20);
    for (name, cfg) in [
        ("keep rots", FilterConfig::KEEP_ROTATIONS),
        ("drop rots", FilterConfig::DROP_ROTATIONS),
        ("all", FilterConfig::ALL),
    ] {
        g.bench_function(name, |b| b.iter(|| filter(black_box(&raw), cfg).unwrap()));
    }
    g.finish();
}

fn simplifying(c: &mut Criterion) {
    let s = default_simplifier();
    let w = parse_word("H X H S T T Y3 X X5 H Z1 H P2 S S").unwrap();
    c.bench_function("simplify 15 tokens", |b| b.iter(|| s.simplify(black_box(&w))));
}

criterion_group!(benches, mining, filtering, simplifying);
criterion_main!(benches);
