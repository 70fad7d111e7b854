use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cordalg_core::{
    census, enumerate, from_sheaf, pushforward, Augmentation, EnumerateOptions, KnotRef,
    Representation,
};

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (name, prime) in [("unknot", 101u32), ("trefoil", 3), ("trefoil", 5)] {
        let knot = KnotRef::named(name);
        let pres = knot.presentation().unwrap();
        group.bench_with_input(BenchmarkId::new(name, prime), &prime, |b, &p| {
            b.iter(|| enumerate(&knot, &pres, p, &EnumerateOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_lift_round_trip(c: &mut Criterion) {
    let knot = KnotRef::named("trefoil");
    let pres = knot.presentation().unwrap();
    let e = enumerate(&knot, &pres, 5, &EnumerateOptions::default()).unwrap();
    c.bench_function("lift_round_trip_trefoil_p5", |b| {
        b.iter(|| {
            for aug in &e.augmentations {
                let lift = aug.lift();
                if lift.dim() > 0 {
                    let _ = from_sheaf(&pushforward(&lift)).unwrap();
                }
            }
        })
    });
    let lifts: Vec<Representation> = e.augmentations.iter().map(Augmentation::lift).collect();
    c.bench_function("census_trefoil_p5", |b| {
        b.iter(|| census(&e.augmentations, &lifts).unwrap())
    });
}

criterion_group!(benches, bench_enumerate, bench_lift_round_trip);
criterion_main!(benches);
