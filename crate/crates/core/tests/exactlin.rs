use proptest::prelude::*;

use solvqi::exactlin::{int, q, rational_roots, Matrix, Poly, Rational, Subspace};

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(rational(), c), r).prop_map(Matrix::from_rows)
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(rational(), n), n).prop_map(Matrix::from_rows))
}

fn row_space(m: &Matrix) -> Subspace {
    Subspace::from_vectors(m.cols(), &m.row_vectors())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_preserves_row_space(m in matrix(5, 5)) {
        let (r, rank) = m.rref();
        prop_assert_eq!(rank, m.rank());
        let (a, b) = (row_space(&m), row_space(&r));
        prop_assert!(a.contains_subspace(&b) && b.contains_subspace(&a));
        for row in m.row_vectors() {
            prop_assert!(r.transpose().solve(&row).is_some());
        }
    }

    #[test]
    fn kernel_is_sound_and_complete(m in matrix(5, 6)) {
        let k = m.kernel();
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == int(0)));
        }
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
    }

    #[test]
    fn cayley_hamilton(m in square(6)) {
        let chi = m.char_poly().unwrap();
        prop_assert_eq!(chi.degree(), Some(m.rows()));
        prop_assert!(chi.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn min_poly_divides_char_poly(m in square(5)) {
        let mu = m.min_poly().unwrap();
        prop_assert!(mu.is_monic());
        prop_assert!(mu.eval_matrix(&m).unwrap().is_zero());
        prop_assert!(m.char_poly().unwrap().rem(&mu).is_zero());
    }

    #[test]
    fn squarefree_part_is_squarefree(roots in prop::collection::vec((rational(), 1usize..=3), 1..4)) {
        let p = Poly::from_roots(&roots);
        let s = p.squarefree_part().unwrap();
        prop_assert_eq!(s.gcd(&s.derivative()).degree(), Some(0));
        prop_assert!(p.rem(&s).is_zero());
    }

    #[test]
    fn split_polynomials_reconstruct(roots in prop::collection::vec((rational(), 1usize..=3), 1..4), c in 1i64..5) {
        let p = Poly::from_roots(&roots).scale(&int(c));
        let r = rational_roots(&p).unwrap();
        prop_assert!(r.fully_split);
        prop_assert_eq!(Poly::from_roots(&r.roots).scale(&int(c)), p);
    }

    #[test]
    fn inverse_and_determinant(a in square(4), seed in rational()) {
        let n = a.rows();
        let b = &a + &Matrix::identity(n).scale(&seed);
        let (da, db) = (a.determinant().unwrap(), b.determinant().unwrap());
        prop_assert_eq!((&a * &b).determinant().unwrap(), &da * &db);
        match a.inverse() {
            Some(inv) => {
                prop_assert!(da != int(0));
                prop_assert_eq!(&a * &inv, Matrix::identity(n));
            }
            None => prop_assert_eq!(da, int(0)),
        }
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(3, 5), b in matrix(3, 5)) {
        prop_assume!(a.cols() == b.cols());
        let (u, w) = (row_space(&a), row_space(&b));
        prop_assert_eq!(u.sum(&w).dim() + u.intersection(&w).dim(), u.dim() + w.dim());
        let i = u.intersection(&w);
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }
}

#[test]
fn worked_examples() {
    let (r, rank) = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
    assert_eq!((r, rank), (Matrix::from_i64(&[&[1, 2], &[0, 0]]), 1));
    let k = Matrix::from_i64(&[&[1, 1]]).kernel();
    assert_eq!(k, Subspace::from_vectors(2, &[vec![int(1), int(-1)]]));
    assert_eq!(Matrix::zeros(3, 3).kernel().dim(), 3);

    let d = Matrix::diagonal(&[int(1), int(1), int(2)]);
    assert_eq!(d.min_poly().unwrap(), Poly::from_roots(&[(int(1), 1), (int(2), 1)]));
    let x2_x1 = Poly::from_roots(&[(int(0), 2), (int(1), 1)]);
    let r = rational_roots(&x2_x1).unwrap();
    assert_eq!(r.roots, vec![(int(0), 2), (int(1), 1)]);
    assert!(r.fully_split);
    let x2_minus_2 = Poly::new(vec![int(-2), int(0), int(1)]);
    let r = rational_roots(&x2_minus_2).unwrap();
    assert!(r.roots.is_empty() && !r.fully_split);

    let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
    assert_eq!(n.eigenspace(&int(0)).unwrap(), Subspace::from_vectors(2, &[vec![int(1), int(0)]]));
    let half = Matrix::diagonal(&[int(1), q(1, 2)]);
    assert_eq!(half.eigenspace(&q(1, 2)).unwrap().dim(), 1);
    assert!(half.eigenspace(&q(1, 2)).unwrap().contains(&[int(0), int(1)]));
}
