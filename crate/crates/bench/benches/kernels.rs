use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kummerlab::clifford::{self, Blade, CliffordElement};
use kummerlab::kummer::{self, build_g, two_torsion, ZeroSumSweep};
use kummerlab::lattice;
use kummerlab::quadform::{self, hilbert_symbol_int, Place};
use kummerlab::{BigInt, BigRational};

fn hilbert(c: &mut Criterion) {
    let places = [
        Place::Infinity,
        Place::prime(2).unwrap(),
        Place::prime(3).unwrap(),
        Place::prime(13).unwrap(),
    ];
    let pairs: Vec<(BigInt, BigInt)> = (1..64i64)
        .map(|i| (BigInt::from(7 * i - 200), BigInt::from(13 * i + 5)))
        .collect();
    c.bench_function("hilbert_symbol/63 pairs x 4 places", |b| {
        b.iter(|| {
            let mut acc = 1i8;
            for (x, y) in &pairs {
                for p in &places {
                    acc *= hilbert_symbol_int(x, y, p).unwrap();
                }
            }
            black_box(acc)
        })
    });
}

fn embeds(c: &mut Criterion) {
    let target = quadform::scale(
        &lattice::builtin("Lambda_Kum3").unwrap().space,
        &BigRational::from_integer(2.into()),
    )
    .unwrap();
    let paranjape = lattice::builtin("Paranjape").unwrap().space;
    let ilp = lattice::builtin("ILP").unwrap().space;
    c.bench_function("embeds/Paranjape into Lambda_Kum3(2)", |b| {
        b.iter(|| black_box(quadform::embeds(&paranjape, &target)))
    });
    c.bench_function("embeds/ILP into Lambda_Kum3(2)", |b| {
        b.iter(|| black_box(quadform::embeds(&ilp, &target)))
    });
}

fn clifford_multiply(c: &mut Criterion) {
    let a = clifford::build(&lattice::builtin("Lambda_Kum3").unwrap().space).unwrap();
    let dense = |seed: u64| {
        let mut e = CliffordElement::zero();
        for mask in 0..128u64 {
            e.add_term(
                Blade(mask),
                BigRational::from_integer(((mask * seed) % 7 + 1).into()),
            );
        }
        e
    };
    let (x, y) = (dense(3), dense(5));
    c.bench_function("clifford/dense product at rank 7", |b| {
        b.iter(|| black_box(a.multiply(&x, &y)))
    });
}

fn torsion(c: &mut Criterion) {
    let tau = two_torsion(4).unwrap()[5];
    c.bench_function("w_configs/level 4", |b| {
        b.iter(|| black_box(kummer::w_configs(&tau).unwrap()))
    });

    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("zero-sum configs at level 4", |b| {
        b.iter(|| black_box(ZeroSumSweep::new(4).unwrap()))
    });
    let sweep = ZeroSumSweep::new(4).unwrap();
    let g = build_g(4).unwrap();
    group.bench_function("fixed sets of G at level 4", |b| {
        b.iter(|| black_box(sweep.fixed_sets(&g).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, hilbert, embeds, clifford_multiply, torsion);
criterion_main!(benches);
