use coxlab::linalg::Matrix;
use coxlab::multiplicity::{character_group, count_transporter, multiplicity_data, transporter_row, verify_counting};
use coxlab::smith::{is_smith_diagonal, smith_normal_form, Cokernel};
use coxlab::twisted::fixed_point_e;
use coxlab::verifier::sweep::{irreducible_twists, listed_representatives, Twist};
use coxlab::Rational;
use proptest::prelude::*;

fn det(m: &Matrix<i64>) -> i64 {
    let d = m.map(|&x| Rational::from_integer(x)).determinant();
    assert!(d.is_integer());
    d.to_integer()
}

fn small_twists() -> Vec<Twist> {
    irreducible_twists(3)
}

#[test]
fn group_order_is_the_determinant() {
    for tw in irreducible_twists(5) {
        let setup = tw.canonical_setup(vec![0; tw.datum.rank()]).unwrap();
        for q in [2, 3, 5, 7] {
            let g = character_group(&setup, q).unwrap();
            let n = tw.datum.rank();
            let a = setup.csigma_coweight_matrix().scale(&q).sub(&Matrix::identity(n));
            assert_eq!(g.order(), det(&a).unsigned_abs() as u128, "{} q={q}", tw.label);
            assert!(is_smith_diagonal(g.invariant_factors()));
            assert_eq!(g.characters().len() as u128, g.order());
        }
    }
}

#[test]
fn rows_sum_to_the_fixed_group_and_duality_holds() {
    for tw in small_twists() {
        for mu in listed_representatives(&tw) {
            let setup = tw.canonical_setup(mu).unwrap();
            let fp = fixed_point_e(&setup).unwrap();
            for q in [2, 3, 4, 7] {
                let data = multiplicity_data(&setup, &fp, q).unwrap();
                let (g, fixed) = (&data.group, &data.fixed);
                for chi in g.characters() {
                    let row = transporter_row(&chi, g, fixed).unwrap();
                    assert_eq!(row.values().sum::<u64>(), fixed.len() as u64);
                    for (chi2, &n) in &row {
                        assert_eq!(count_transporter(&chi, chi2, g, fixed).unwrap(), n);
                        // count(chi, chi') = count(chi', chi) through w -> w^-1
                        assert_eq!(count_transporter(chi2, &chi, g, fixed).unwrap(), n);
                    }
                    for w in fixed {
                        assert!(g.duality_holds(w, &chi).unwrap());
                        // the action is invertible on residues
                        assert_eq!(g.act(&w.inverse(), &g.act(w, &chi).unwrap()).unwrap(), chi);
                    }
                }
                let rep = verify_counting(&setup, &fp, q, 100_000).unwrap();
                assert!(rep.passed(), "{rep}");
            }
        }
    }
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Matrix<i64> {
    let mut m = Matrix::<i64>::identity(n);
    for &(a, b, k) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            m.swap_rows(a, (a + 1) % n);
        } else {
            for j in 0..n {
                let v = m[(b, j)] * k;
                m[(a, j)] += v;
            }
        }
    }
    m
}

fn matrix_case() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<(usize, usize, i64)>, Vec<(usize, usize, i64)>)> {
    (1usize..=4).prop_flat_map(|n| {
        let ops = || proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..6);
        (proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), n), ops(), ops())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn smith_form_is_invariant((rows, u, v) in matrix_case()) {
        let n = rows.len();
        let a = Matrix::from_rows(rows);
        let (u, v) = (unimodular(n, &u), unimodular(n, &v));
        let b = u.mul(&a).mul(&v);
        let sa = smith_normal_form(&a);
        let sb = smith_normal_form(&b);
        prop_assert_eq!(&sa.diagonal, &sb.diagonal);
        prop_assert!(is_smith_diagonal(&sa.diagonal));
        let d = sa.left.mul(&a).mul(&sa.right);
        prop_assert_eq!(d, Matrix::from_fn(n, n, |i, j| if i == j { sa.diagonal[i] } else { 0 }));
        prop_assert_eq!(det(&sa.left).abs(), 1);
        prop_assert_eq!(det(&sa.right).abs(), 1);
        prop_assert_eq!(sa.diagonal.iter().product::<i64>(), det(&a).abs());
        if let Some(coker) = Cokernel::new(&a) {
            prop_assert_eq!(coker.order(), det(&a).unsigned_abs() as u128);
            for class in coker.elements().into_iter().take(64) {
                prop_assert_eq!(coker.class_of(&coker.representative(&class)), class);
            }
        }
    }
}
