use proptest::prelude::*;

use solvqi::exactlin::{int, q, Matrix, Rational};
use solvqi::geometry::{
    conformal_dimension, detect_diagonal_heintze, identify_rank_one_iwasawa, strong_pointed_sphere, NilradicalKind,
    Spsp, SymmetricTag,
};
use solvqi::liealg::{DerivationAction, LieAlgebra};
use solvqi::structure::lookup;

fn gen(name: &str, params: &[Rational]) -> LieAlgebra {
    lookup(name).unwrap().generator(params).unwrap()
}

/// `R^n x| R` acting by a diagonal matrix.
fn abelian_extension(diag: &[Rational]) -> LieAlgebra {
    let act = DerivationAction::new(LieAlgebra::abelian(1), LieAlgebra::abelian(diag.len()), vec![Matrix::diagonal(diag)])
        .unwrap();
    LieAlgebra::semidirect_product(&act).unwrap()
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn heintze_family() -> Vec<LieAlgebra> {
    vec![
        gen("g3_3", &[]),
        gen("g3_5", &[q(1, 2)]),
        gen("g3_5", &[q(1, 3)]),
        gen("g4_5", &[q(1, 2), int(1)]),
        gen("g4_5", &[int(1), int(1)]),
        gen("g4_9", &[int(1)]),
        gen("g4_9", &[q(1, 2)]),
        abelian_extension(&[int(1), int(2), int(2), int(3)]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conformal_dimension_ignores_rescaling(c in positive(), which in 0usize..8) {
        let g = &heintze_family()[which];
        let n = g.dim();
        let mut p = Matrix::identity(n);
        let h = detect_diagonal_heintze(g).unwrap();
        // Replace the generator by c times itself.
        let gen_index = (0..n).find(|&i| h.generator[i] != int(0)).unwrap();
        for (r, v) in h.generator.iter().enumerate() {
            p.set(r, gen_index, v * &c);
        }
        prop_assume!(p.inverse().is_some());
        let scaled = g.transport(&p).unwrap();
        let hs = detect_diagonal_heintze(&scaled).unwrap();
        prop_assert_eq!(conformal_dimension(&hs), conformal_dimension(&h));
        prop_assert_eq!(&hs.normalized_spectrum, &h.normalized_spectrum);
    }

    #[test]
    fn conformal_dimension_bounds_nilradical_dimension(
        d in prop::collection::vec(positive(), 1..5),
    ) {
        let g = abelian_extension(&d);
        let h = detect_diagonal_heintze(&g).unwrap();
        let cd = conformal_dimension(&h);
        let n = int(h.nilradical.dim() as i64);
        prop_assert!(cd >= n);
        let scalar = h.spectrum.len() == 1;
        prop_assert_eq!(cd == n, scalar);
        prop_assert_eq!(identify_rank_one_iwasawa(&h) == SymmetricTag::SO(d.len() + 1), scalar);
        let s = strong_pointed_sphere(&h).value;
        prop_assert_eq!(s, if scalar { Spsp::False } else { Spsp::True });
    }

    #[test]
    fn g3_5_family_is_never_symmetric(n in 1i64..40) {
        let a = q(n, 40);
        let h = detect_diagonal_heintze(&gen("g3_5", std::slice::from_ref(&a))).unwrap();
        prop_assert_eq!(identify_rank_one_iwasawa(&h), SymmetricTag::None);
        prop_assert_eq!(conformal_dimension(&h), int(1) + a.recip());
    }
}

#[test]
fn limit_case_is_real_hyperbolic() {
    let h = detect_diagonal_heintze(&abelian_extension(&[int(1), int(1)])).unwrap();
    assert_eq!(identify_rank_one_iwasawa(&h), SymmetricTag::SO(3));
}

#[test]
fn symmetric_tags_lack_strong_pointed_sphere() {
    for g in heintze_family() {
        let h = detect_diagonal_heintze(&g).unwrap();
        let tag = identify_rank_one_iwasawa(&h);
        let s = strong_pointed_sphere(&h).value;
        if tag.is_some() {
            assert_eq!(s, Spsp::False, "{}", g.name());
        } else if h.nilradical_kind == NilradicalKind::Abelian {
            assert_eq!(s, Spsp::True, "{}", g.name());
        }
    }
}

#[test]
fn worked_examples() {
    let spec = |g: &LieAlgebra| {
        let h = detect_diagonal_heintze(g).unwrap();
        (h.nilradical_kind, h.normalized_spectrum.clone())
    };
    assert_eq!(
        spec(&gen("g3_5", &[q(1, 2)])),
        (NilradicalKind::Abelian, vec![(int(1), 1), (int(2), 1)])
    );
    let h = detect_diagonal_heintze(&gen("g3_5", &[q(1, 2)])).unwrap();
    assert_eq!(h.spectrum, vec![(q(1, 2), 1), (int(1), 1)]);
    let h = detect_diagonal_heintze(&gen("g4_9", &[q(1, 2)])).unwrap();
    assert_eq!(h.nilradical_kind, NilradicalKind::Heisenberg);
    assert_eq!(h.spectrum, vec![(q(1, 2), 1), (int(1), 1), (q(3, 2), 1)]);
    assert_eq!(spec(&gen("g3_3", &[])), (NilradicalKind::Abelian, vec![(int(1), 2)]));

    let cd = |g: LieAlgebra| conformal_dimension(&detect_diagonal_heintze(&g).unwrap());
    assert_eq!(cd(gen("g3_3", &[])), int(2));
    assert_eq!(cd(gen("g3_5", &[q(1, 2)])), int(3));
    assert_eq!(cd(gen("g4_9", &[int(1)])), int(4));

    assert!(detect_diagonal_heintze(&gen("heis", &[])).is_err());
    assert!(detect_diagonal_heintze(&gen("g4_9_0", &[])).is_err());
    // Sol: eigenvalues of both signs.
    assert!(detect_diagonal_heintze(&gen("g3_5", &[int(-1)])).is_err());
}
