use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pcubed_core::combinat::{count_by_enumeration, count_reps, MultVec};
use pcubed_core::cyclo::{CycloNum, OddPrime};
use pcubed_core::groups::{make_group, GroupFamily};
use pcubed_core::irreps::build_irreps;
use pcubed_core::solver::{assemble, invariant_space};

fn bench_cyclo(c: &mut Criterion) {
    let p = OddPrime::new(5).unwrap();
    let a = CycloNum::root_of_unity(p, 37).add(&CycloNum::root_of_unity(p, 101));
    let b = CycloNum::root_of_unity(p, 64).sub(&CycloNum::from_integer(p, 2));
    c.bench_function("cyclo_mul_p5", |bench| {
        bench.iter(|| black_box(&a).mul(black_box(&b)))
    });
    c.bench_function("cyclo_inv_p5", |bench| bench.iter(|| black_box(&b).inv().unwrap()));
}

fn bench_irreps(c: &mut Criterion) {
    let p = OddPrime::new(5).unwrap();
    let group = make_group(GroupFamily::Heis, p);
    c.bench_function("build_irreps_heis_p5", |bench| {
        bench.iter(|| build_irreps(black_box(&group)).unwrap())
    });
}

fn bench_solver(c: &mut Criterion) {
    let p = OddPrime::new(3).unwrap();
    let set = build_irreps(&make_group(GroupFamily::Heis, p)).unwrap();
    let mut small = vec![0u64; 11];
    small[9] = 1;
    small[10] = 1;
    let small = MultVec::new(GroupFamily::Heis, p, small).unwrap();
    c.bench_function("invariant_space_full_n6", |bench| {
        bench.iter(|| {
            let asm = assemble(black_box(&small), &set).unwrap();
            invariant_space(&asm)
        })
    });
    let mut large = vec![0u64; 11];
    large[9] = 2;
    large[10] = 2;
    let large = MultVec::new(GroupFamily::Heis, p, large).unwrap();
    c.bench_function("invariant_space_blocks_n12", |bench| {
        bench.iter(|| {
            let asm = assemble(black_box(&large), &set).unwrap();
            invariant_space(&asm)
        })
    });
}

fn bench_combinat(c: &mut Criterion) {
    let p3 = OddPrime::new(3).unwrap();
    let p7 = OddPrime::new(7).unwrap();
    c.bench_function("count_reps_gp_p7_n100", |bench| {
        bench.iter(|| count_reps(GroupFamily::Gp, p7, black_box(100)))
    });
    c.bench_function("enumerate_heis_p3_n6", |bench| {
        bench.iter(|| count_by_enumeration(GroupFamily::Heis, p3, black_box(6)))
    });
}

criterion_group!(benches, bench_cyclo, bench_irreps, bench_solver, bench_combinat);
criterion_main!(benches);
