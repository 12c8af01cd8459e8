use proptest::prelude::*;

use solvqi::exactlin::{int, q, unit, Matrix, Rational, Subspace};
use solvqi::liealg::LieAlgebra;
use solvqi::reduction::{
    cone_dimension, exponential_radical, is_class_c1, jordan_chevalley, rho1, rho_infinity, ReductionError,
};
use solvqi::structure::{catalog, fingerprint, lookup, match_catalog, split_factors};

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

/// Upper triangular, dimension <= 6, diagonal drawn from a small pool so
/// that repeated eigenvalues (and nontrivial nilpotent parts) are common.
fn upper_triangular() -> impl Strategy<Value = Matrix> {
    (1usize..=6, prop::collection::vec(rational(), 1..=3)).prop_flat_map(|(n, pool)| {
        (
            prop::collection::vec(0..pool.len(), n),
            prop::collection::vec(prop::option::weighted(0.6, rational()), n * n),
        )
            .prop_map(move |(diag, above)| {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    m.set(i, i, pool[diag[i]].clone());
                    for j in i + 1..n {
                        if let Some(v) = &above[i * n + j] {
                            m.set(i, j, v.clone());
                        }
                    }
                }
                m
            })
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |v| Matrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()))
        .prop_filter("singular", |m| m.inverse().is_some())
}

fn gen(name: &str, params: &[Rational]) -> LieAlgebra {
    lookup(name).unwrap().generator(params).unwrap()
}

fn instances() -> Vec<LieAlgebra> {
    catalog()
        .iter()
        .flat_map(|e| e.samples().into_iter().map(move |p| e.generator(&p).unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn jordan_chevalley_properties(m in upper_triangular()) {
        let n = m.rows();
        let jp = jordan_chevalley(&m).unwrap();
        let (s, nil) = (&jp.semisimple, &jp.nilpotent);
        prop_assert_eq!(&(s + nil), &m);
        prop_assert_eq!(s * nil, nil * s);
        let mu = s.min_poly().unwrap();
        prop_assert_eq!(mu.gcd(&mu.derivative()).degree(), Some(0));
        prop_assert!(nil.pow(n as u32).is_zero());
        prop_assert_eq!(&jp.witness.eval_matrix(&m).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_chevalley_recovers_commuting_pairs(
        lams in prop::collection::vec(rational(), 2),
        n0 in prop::collection::vec(rational(), 2),
        p in invertible(4),
    ) {
        // D = diag(l0,l0,l1,l1), N0 strictly upper inside each 2x2 block.
        let d = Matrix::diagonal(&[lams[0].clone(), lams[0].clone(), lams[1].clone(), lams[1].clone()]);
        let mut nn = Matrix::zeros(4, 4);
        nn.set(0, 1, n0[0].clone());
        nn.set(2, 3, n0[1].clone());
        let pi = p.inverse().unwrap();
        let (dd, nd) = (&(&p * &d) * &pi, &(&p * &nn) * &pi);
        let jp = jordan_chevalley(&(&dd + &nd)).unwrap();
        prop_assert_eq!(jp.semisimple, dd);
        prop_assert_eq!(jp.nilpotent, nd);
    }
}

#[test]
fn jordan_chevalley_examples() {
    let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
    let jp = jordan_chevalley(&n).unwrap();
    assert!(jp.semisimple.is_zero() && jp.nilpotent == n);
    let jp = jordan_chevalley(&Matrix::identity(2)).unwrap();
    assert!(jp.is_semisimple());
    let jp = jordan_chevalley(&Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
    assert_eq!((jp.semisimple, jp.nilpotent), (Matrix::identity(2), n));
    let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
    assert!(matches!(jordan_chevalley(&rot), Err(ReductionError::IrrationalSpectrum)));
}

#[test]
fn reduction_identities_on_catalog() {
    for g in instances() {
        let r1 = rho1(&g).unwrap().output;
        assert!(r1.validate().is_ok(), "{}", g.name());
        assert_eq!(r1.dim(), g.dim());
        assert!(is_class_c1(&r1).unwrap().holds, "{}", g.name());
        assert_eq!(fingerprint(&rho1(&r1).unwrap().output), fingerprint(&r1), "{}", g.name());
        let rinf = rho_infinity(&g).unwrap().output;
        assert_eq!(fingerprint(&rho_infinity(&r1).unwrap().output), fingerprint(&rinf), "{}", g.name());
        assert_eq!(cone_dimension(&r1).unwrap(), cone_dimension(&g).unwrap());
    }
}

#[test]
fn exponential_radical_sits_in_derived_algebra() {
    for g in instances() {
        let e = exponential_radical(&g).unwrap();
        assert!(g.derived_algebra().contains_subspace(&e), "{}", g.name());
        assert!(g.quotient(&e).unwrap().algebra.is_nilpotent(), "{}", g.name());
    }
}

#[test]
fn cone_dimension_is_additive() {
    let all = instances();
    for a in all.iter().step_by(3) {
        for b in all.iter().step_by(4) {
            let sum = LieAlgebra::direct_sum(a, b);
            assert_eq!(
                cone_dimension(&sum).unwrap(),
                cone_dimension(a).unwrap() + cone_dimension(b).unwrap(),
                "{} + {}",
                a.name(),
                b.name()
            );
        }
    }
}

#[test]
fn worked_examples() {
    let g490 = gen("g4_9_0", &[]);
    assert_eq!(exponential_radical(&g490).unwrap(), Subspace::from_vectors(4, &[unit(4, 0), unit(4, 1)]));
    let g519 = gen("g5_19", &[int(1), q(1, 2)]);
    assert_eq!(
        exponential_radical(&g519).unwrap(),
        Subspace::from_vectors(5, &[unit(5, 0), unit(5, 2), unit(5, 3)])
    );
    let heis = gen("heis", &[]);
    assert!(exponential_radical(&heis).unwrap().is_zero());
    assert_eq!(cone_dimension(&g519).unwrap(), 2);
    assert_eq!(cone_dimension(&LieAlgebra::abelian(4)).unwrap(), 4);
    assert_eq!(cone_dimension(&LieAlgebra::direct_sum(&heis, &gen("a2", &[]))).unwrap(), 4);

    // ad(e4) on u is the identity and ad(e3) on u is a nilpotent Jordan block.
    let u = exponential_radical(&g490).unwrap();
    assert_eq!(g490.adjoint_on(&unit(4, 3), &u).unwrap(), Matrix::identity(2));
    let ad3 = g490.adjoint_on(&unit(4, 2), &u).unwrap();
    assert!(!ad3.is_zero() && ad3.pow(2).is_zero());

    let c1 = |g: &LieAlgebra| is_class_c1(g).unwrap().holds;
    assert!(c1(&gen("g3_3", &[])));
    assert!(!c1(&g490));
    assert!(c1(&LieAlgebra::abelian(3)));

    let r = rho1(&g490).unwrap();
    let s = split_factors(&r.output).unwrap();
    assert_eq!(s.euclidean_dim, 1);
    assert_eq!(match_catalog(&s.factors[0]).unwrap().name, "g3_3");
    assert_eq!(fingerprint(&rho_infinity(&g490).unwrap().output), fingerprint(&r.output));

    let s = split_factors(&rho1(&g519).unwrap().output).unwrap();
    assert_eq!(s.euclidean_dim, 1);
    assert_eq!(match_catalog(&s.factors[0]).unwrap().to_string(), "g4_5(1/2,1)");

    let g33 = gen("g3_3", &[]);
    assert!(rho1(&g33).unwrap().output.same_constants(&g33));
    assert!(rho_infinity(&g33).unwrap().output.same_constants(&g33));
    assert_eq!(fingerprint(&rho_infinity(&heis).unwrap().output), fingerprint(&heis));
}
