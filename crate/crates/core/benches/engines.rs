use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use permdot::families::Family;
use permdot::oracle::{anticoncentration_estimate_with, spectrum_bruteforce_with};
use permdot::pools::{rect_area_set_with, RECT_PRODUCT_CAP};
use permdot::sumset::{additive_energy_with, subset_sums_meet_in_middle};
use permdot::{Exec, IncrementSet, Instance};

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectrum");
    g.sample_size(10);
    for n in [7usize, 8] {
        let inst = Instance::interval(n).unwrap();
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, n), &inst, |b, inst| {
                b.iter(|| spectrum_bruteforce_with(black_box(inst), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn subset_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("subset_sums");
    g.sample_size(10);
    let sidon: Vec<i64> = permdot::families::mian_chowla(24);
    let d = IncrementSet::from_ints(&sidon);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, d.len()), |b| {
            b.iter(|| subset_sums_meet_in_middle(black_box(&d), exec))
        });
    }
    g.finish();
}

fn energy(c: &mut Criterion) {
    let mut g = c.benchmark_group("energy");
    g.sample_size(10);
    let d = IncrementSet::from_ints(&(1..=300).map(|x| x * x).collect::<Vec<_>>());
    for k in [2usize, 3] {
        let d = if k == 3 {
            IncrementSet::from_ints(&(1..=60).collect::<Vec<_>>())
        } else {
            d.clone()
        };
        for (name, exec) in POLICIES {
            g.bench_function(BenchmarkId::new(name, format!("k{k}")), |b| {
                b.iter(|| additive_energy_with(black_box(&d), k, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn rect_areas(c: &mut Criterion) {
    let mut g = c.benchmark_group("rect_areas");
    g.sample_size(10);
    for family in [Family::Interval, Family::Sidon] {
        let inst = family.instance(32, 0).unwrap();
        for (name, exec) in POLICIES {
            g.bench_function(BenchmarkId::new(name, family), |b| {
                b.iter(|| rect_area_set_with(inst.a(), inst.b(), RECT_PRODUCT_CAP, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn anticoncentration(c: &mut Criterion) {
    let mut g = c.benchmark_group("anticoncentration");
    g.sample_size(10);
    let inst = Instance::interval(100).unwrap();
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, "n100_s100k"), |b| {
            b.iter(|| anticoncentration_estimate_with(black_box(&inst), 100_000, 7, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    spectrum,
    subset_sums,
    energy,
    rect_areas,
    anticoncentration
);
criterion_main!(benches);
