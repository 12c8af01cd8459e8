use solvqi::exactlin::{int, q, Rational};
use solvqi::liealg::LieAlgebra;
use solvqi::qiengine::{canonical_image, compare, family_report, table1_report, Outcome, RowStatus, VerdictKind};
use solvqi::reduction::rho1;
use solvqi::structure::{builtin_extended, catalog, lookup};

fn gen(name: &str, params: &[Rational]) -> LieAlgebra {
    lookup(name).unwrap().generator(params).unwrap()
}

fn instances() -> Vec<LieAlgebra> {
    catalog()
        .iter()
        .flat_map(|e| e.samples().into_iter().map(move |p| e.generator(&p).unwrap()))
        .collect()
}

fn completely_solvable_pool() -> Vec<LieAlgebra> {
    let mut pool: Vec<_> = instances().into_iter().step_by(2).collect();
    pool.push(LieAlgebra::direct_sum(&LieAlgebra::abelian(1), &gen("g3_5", &[q(1, 2)])));
    pool.push(LieAlgebra::direct_sum(&gen("heis", &[]), &gen("a2", &[])));
    pool
}

#[test]
fn verdicts_are_symmetric_and_certificates_replay() {
    let pool = completely_solvable_pool();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i..] {
            let (ab, ba) = match (compare(a, b), compare(b, a)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(x), Err(y)) => {
                    assert!(x.is_unsupported() && y.is_unsupported());
                    continue;
                }
                other => panic!("asymmetric support for {} / {}: {other:?}", a.name(), b.name()),
            };
            assert_eq!(ab.kind, ba.kind, "{} vs {}", a.name(), b.name());
            assert!(ab.replay() && ba.replay(), "{} vs {}", a.name(), b.name());
            let separating = ab.certificate.iter().filter(|r| r.outcome == Outcome::Separates).count();
            assert_eq!(separating > 0, ab.kind == VerdictKind::NotQuasiisometric);
            // rules run in order and stop at the first separation
            let ids: Vec<_> = ab.certificate.iter().map(|r| r.rule_id).collect();
            assert!(ids.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn reduction_is_never_separated_from_its_source() {
    for g in instances() {
        let Ok(r) = rho1(&g) else { continue };
        if let Ok(v) = compare(&g, &r.output) {
            assert_ne!(v.kind, VerdictKind::NotQuasiisometric, "{}", g.name());
        }
    }
}

#[test]
fn reflexive_comparisons() {
    for g in completely_solvable_pool() {
        if let Ok(v) = compare(&g, &g) {
            assert_eq!(v.kind, VerdictKind::OLogEquivalent, "{}", g.name());
        }
    }
}

#[test]
fn worked_examples() {
    let v = compare(
        &gen("g4_9_0", &[]),
        &LieAlgebra::direct_sum(&LieAlgebra::abelian(1), &gen("g3_5", &[q(1, 2)])),
    )
    .unwrap();
    assert_eq!(v.kind, VerdictKind::NotQuasiisometric);
    assert_eq!(v.separating_rule().unwrap().rule_id, "R3");

    let v = compare(&gen("g5_19", &[int(1), q(1, 3)]), &gen("g5_19", &[int(1), q(1, 2)])).unwrap();
    assert_eq!(v.kind, VerdictKind::NotQuasiisometric);

    // Two members of the same rank-three family: both reduce to R^2 x g3_3.
    let r2 = LieAlgebra::abelian(2);
    let a = LieAlgebra::direct_sum(&r2, &gen("g3_3", &[]));
    let b = LieAlgebra::direct_sum(&LieAlgebra::abelian(1), &gen("g4_9_0", &[]));
    let v = compare(&a, &b).unwrap();
    assert_eq!(v.kind, VerdictKind::OLogEquivalent);
}

#[test]
fn tables_reproduce() {
    let ext = builtin_extended().unwrap();
    let t = table1_report(&ext);
    assert!(t.all_attempted_pass(), "{t:?}");
    assert!(t.rows.iter().any(|r| r.status == RowStatus::Skipped));
    for r in t.rows.iter().filter(|r| r.status == RowStatus::Pass) {
        let expected = canonical_image(&r.expected_image).unwrap();
        assert_eq!(r.computed_image.as_deref(), Some(expected.as_str()), "{}", r.row);
        assert_eq!(r.computed_conedim, Some(r.expected_conedim), "{}", r.row);
    }
    let f = family_report(&ext);
    assert_eq!(f.failed, 0);
    assert!(f.passed >= 20);
    assert!(f
        .pairs
        .iter()
        .filter(|p| p.family_a != p.family_b)
        .all(|p| p.verdict == Some(VerdictKind::NotQuasiisometric)));

    let bare = table1_report(&[]);
    assert_eq!(bare.failed, 0);
    assert!(bare.skipped > t.skipped);
}
