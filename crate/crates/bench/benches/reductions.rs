use criterion::{black_box, criterion_group, criterion_main, Criterion};

use solvqi::exactlin::{int, q, Matrix};
use solvqi::liealg::LieAlgebra;
use solvqi::qiengine::{compare, table1_report};
use solvqi::reduction::{jordan_chevalley, rho1, rho_infinity};
use solvqi::structure::{builtin_extended, lookup, match_catalog, split_factors};

fn gen(name: &str, params: &[solvqi::exactlin::Rational]) -> LieAlgebra {
    lookup(name).unwrap().generator(params).unwrap()
}

fn jordan(c: &mut Criterion) {
    // Two Jordan blocks with a shared eigenvalue, conjugated to a dense basis.
    let mut m = Matrix::diagonal(&[int(1), int(1), int(1), q(1, 2), q(1, 2), int(3)]);
    m.set(0, 1, int(1));
    m.set(1, 2, int(1));
    m.set(3, 4, int(1));
    let p = Matrix::from_i64(&[
        &[1, 2, 0, 1, 0, 0],
        &[0, 1, 3, 0, 1, 0],
        &[1, 0, 1, 0, 0, 2],
        &[0, 0, 1, 1, 0, 0],
        &[2, 0, 0, 0, 1, 1],
        &[0, 1, 0, 0, 0, 1],
    ]);
    let dense = &(&p * &m) * &p.inverse().unwrap();
    c.bench_function("jordan_chevalley 6x6 dense", |b| b.iter(|| jordan_chevalley(black_box(&dense)).unwrap()));
}

fn reductions(c: &mut Criterion) {
    let g490 = gen("g4_9_0", &[]);
    let g519 = gen("g5_19", &[int(1), q(1, 2)]);
    c.bench_function("rho1 g4_9_0", |b| b.iter(|| rho1(black_box(&g490)).unwrap()));
    c.bench_function("rho1 g5_19(1,1/2)", |b| b.iter(|| rho1(black_box(&g519)).unwrap()));
    c.bench_function("rhoinf g5_19(1,1/2)", |b| b.iter(|| rho_infinity(black_box(&g519)).unwrap()));
    let image = rho1(&g519).unwrap().output;
    c.bench_function("split rho1 g5_19(1,1/2)", |b| b.iter(|| split_factors(black_box(&image)).unwrap()));
}

fn matching(c: &mut Criterion) {
    let p = Matrix::from_i64(&[&[2, 1, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]);
    let mixed = gen("g4_9", &[q(1, 2)]).transport(&p).unwrap();
    c.bench_function("match g4_9(1/2) mixed basis", |b| b.iter(|| match_catalog(black_box(&mixed)).unwrap()));
    let lhs = gen("g4_9_0", &[]);
    let rhs = LieAlgebra::direct_sum(&LieAlgebra::abelian(1), &gen("g3_5", &[q(1, 2)]));
    c.bench_function("compare g4_9_0 vs R x g3_5(1/2)", |b| b.iter(|| compare(black_box(&lhs), black_box(&rhs)).unwrap()));
}

fn tables(c: &mut Criterion) {
    let ext = builtin_extended().unwrap();
    let mut group = c.benchmark_group("tables");
    group.sample_size(10);
    group.bench_function("table1 with extended rows", |b| b.iter(|| table1_report(black_box(&ext))));
    group.finish();
}

criterion_group!(benches, jordan, reductions, matching, tables);
criterion_main!(benches);
