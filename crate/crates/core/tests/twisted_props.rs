use std::collections::BTreeSet;

use coxlab::linalg::Matrix;
use coxlab::rootsys::Family;
use coxlab::twisted::{
    canonical_coxeter, construct_i, coroot_matrix_of, fixed_point_e, is_twisted_coxeter, solve_fixed_point, subsequence_data, TwistedElement, TwistedSetup,
};
use coxlab::verifier::sweep::{irreducible_twists, listed_representatives, sweep_theorem_coxeter, sweep_transport, swapped_products, Twist};
use coxlab::{BigRational, Error, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn twists(max_rank: usize) -> Vec<Twist> {
    let mut t = irreducible_twists(max_rank);
    t.extend(swapped_products(2));
    t
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u32 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

fn mu_strategy() -> impl Strategy<Value = (usize, Vec<i64>)> {
    let n = twists(4).len();
    (0..n).prop_flat_map(|t| {
        let r = twists(4)[t].datum.rank();
        (Just(t), proptest::collection::vec(-3i64..=3, r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn fixed_point_solves_and_is_unique((t, mu) in mu_strategy()) {
        let tw = &twists(4)[t];
        let setup = tw.canonical_setup(mu.clone()).unwrap();
        let d = setup.datum();
        let e: Vec<Rational> = solve_fixed_point(&setup).unwrap();
        let m = coroot_matrix_of(d, &setup.csigma().root_perm(setup.sigma())).map(|&x| Rational::from_integer(x));
        let lhs: Vec<Rational> = e.iter().zip(m.mul_vec(&e)).map(|(a, b)| a - b).collect();
        let mu_q: Vec<Rational> = mu.iter().map(|&x| Rational::from_integer(x)).collect();
        prop_assert_eq!(lhs, d.omega_to_coroot(&mu_q));
        // 1 - c sigma is invertible, so any other scalar type gives the same e
        let big: Vec<BigRational> = solve_fixed_point(&setup).unwrap();
        let back: Vec<BigRational> = e.iter().map(|x| BigRational::new((*x.numer()).into(), (*x.denom()).into())).collect();
        prop_assert_eq!(big, back);
    }

    #[test]
    fn integral_subsystem_is_a_root_subsystem((t, mu) in mu_strategy()) {
        let tw = &twists(4)[t];
        let setup = tw.canonical_setup(mu).unwrap();
        let d = setup.datum();
        let fp = fixed_point_e(&setup).unwrap();
        let phi: BTreeSet<usize> = fp.phi_e.iter().copied().collect();
        for &k in &phi {
            prop_assert!(phi.contains(&d.negate(k)));
            // <beta, e> is an integer
            let pairing: Rational = (0..d.rank()).map(|i| {
                let col: Rational = (0..d.rank()).map(|j| Rational::from_integer(d.root(k)[j] * d.cartan()[(j, i)])).sum();
                col * fp.e[i]
            }).sum();
            prop_assert!(pairing.is_integer());
        }
        // Delta_e is linearly independent
        let rows: Vec<Vec<Rational>> = fp.delta_e.iter().map(|&k| d.root(k).iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        let n = rows.len();
        if n > 0 {
            let g = Matrix::from_fn(n, n, |i, j| rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum::<Rational>());
            prop_assert!(!g.determinant().is_zero());
        }
        // every positive root of Phi_e is a nonnegative integer combination of Delta_e
        for &k in fp.positive_roots() {
            prop_assert!(k < d.num_positive());
            let target: Vec<Rational> = d.root(k).iter().map(|&x| Rational::from_integer(x)).collect();
            let g = Matrix::from_fn(n, n, |i, j| rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum::<Rational>());
            let rhs: Vec<Rational> = rows.iter().map(|r| r.iter().zip(&target).map(|(a, b)| a * b).sum()).collect();
            let coeffs = g.solve(&rhs).unwrap();
            prop_assert!(coeffs.iter().all(|c| c.is_integer() && *c >= Rational::zero()), "{:?}", coeffs);
            let recon: Vec<Rational> = (0..d.rank()).map(|i| coeffs.iter().zip(&rows).map(|(c, r)| c * r[i]).sum()).collect();
            prop_assert_eq!(recon, target);
        }
        prop_assert_eq!(fp.phi_e.len(), 2 * fp.positive_roots().len());
    }
}

#[test]
fn splitting_reassembles_c_sigma() {
    for tw in twists(4) {
        let setup = tw.canonical_setup(vec![0; tw.datum.rank()]).unwrap();
        for pos in subsets(setup.word_len()) {
            let sd = subsequence_data(&setup, &pos).unwrap();
            let prod = TwistedElement::weyl(sd.c_i.clone()).mul(&sd.sigma_i, setup.sigma());
            assert_eq!(&prod, setup.csigma(), "{} {pos:?}", tw.label);
            assert_eq!(sd.delta_i.len() + pos.len(), setup.word_len());
        }
    }
}

#[test]
fn constructed_sequences_verify_up_to_rank_8() {
    let rep = sweep_theorem_coxeter(8);
    assert!(rep.instances_checked > 100, "{rep}");
    assert!(rep.passed(), "{rep}");
}

#[test]
fn transported_sequences_verify_up_to_rank_4() {
    let rep = sweep_transport(4);
    assert!(rep.instances_checked > 0);
    assert!(rep.passed(), "{rep}");
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[test]
fn construction_is_independent_of_word_ordering() {
    let mut checked = 0;
    for tw in irreducible_twists(5) {
        for word in permutations(&canonical_coxeter(&tw.sigma)) {
            assert!(is_twisted_coxeter(&tw.datum, &tw.sigma, &word));
            for mu in listed_representatives(&tw) {
                let setup = TwistedSetup::new(tw.datum.clone(), tw.sigma.clone(), word.clone(), mu.clone()).unwrap();
                match construct_i(&setup) {
                    Ok(c) => assert!(c.verdict.passed(), "{} {word:?} {mu:?}", tw.label),
                    Err(Error::UnsupportedCase(_)) => {}
                    Err(e) => panic!("{} {word:?} {mu:?}: {e}", tw.label),
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn nonzero_classes_of_2d_are_unsupported() {
    for n in 4..=6 {
        let tw = Twist::new(Family::D, n, 2).unwrap();
        let mut unsupported = 0;
        for i in 0..n {
            let mut mu = vec![0; n];
            mu[i] = 1;
            match construct_i(&tw.canonical_setup(mu).unwrap()) {
                Ok(c) => assert!(c.verdict.passed()),
                Err(Error::UnsupportedCase(_)) => unsupported += 1,
                Err(e) => panic!("{e}"),
            }
        }
        assert!(unsupported > 0, "2D{n}");
        assert!(construct_i(&tw.canonical_setup(vec![0; n]).unwrap()).is_ok());
    }
}

#[test]
fn trivial_mu_has_the_full_system() {
    for tw in twists(5) {
        let fp = fixed_point_e(&tw.canonical_setup(vec![0; tw.datum.rank()]).unwrap()).unwrap();
        assert!(fp.e.iter().all(Zero::is_zero));
        assert_eq!(fp.phi_e.len(), tw.datum.num_roots());
        assert_eq!(fp.delta_e.len(), tw.datum.rank());
    }
}
