use std::collections::BTreeSet;

use coxlab::conditions::{bipartite_coxeter, check_condition_star, constant_m, find_star_coxeter, order_n0, star_certificate};
use coxlab::rootsys::Family;
use coxlab::verifier::sweep::{irreducible_twists, m_table, sweep_lemma_ast, sweep_star_all_coxeter, sweep_star_existence, Twist};

#[test]
fn m_matches_the_reference_list() {
    let rows = m_table(8);
    assert!(rows.len() > 30);
    for row in &rows {
        assert!(row.matches(), "{row:?}");
    }
    let g2 = Twist::new(Family::G, 2, 1).unwrap();
    assert_eq!(constant_m(&g2.datum, &g2.sigma), 3);
    let e8 = Twist::new(Family::E, 8, 1).unwrap();
    assert_eq!(constant_m(&e8.datum, &e8.sigma), 6);
}

#[test]
fn bipartite_element_satisfies_star_for_even_coxeter_number() {
    for tw in irreducible_twists(8) {
        if !tw.sigma.is_identity() {
            continue;
        }
        let h = tw.datum.components()[0].coxeter_number();
        let word = bipartite_coxeter(&tw.datum, &tw.sigma);
        let cert = check_condition_star(&tw.datum, &tw.sigma, &word);
        if h % 2 == 0 {
            assert_eq!(cert.map(|c| c.n), Some(h as u64 / 2), "{}", tw.label);
        }
        let setup = tw.canonical_setup(vec![0; tw.datum.rank()]).unwrap();
        assert_eq!(order_n0(&setup), h as u64, "{}", tw.label);
    }
}

#[test]
fn star_fails_in_type_a_even() {
    // l(w_0) / l(c) = (n + 1) / 2 is not an integer
    for n in [2, 4, 6] {
        let tw = Twist::new(Family::A, n, 1).unwrap();
        let search = find_star_coxeter(&tw.datum, &tw.sigma);
        assert!(search.found.is_none(), "A{n}");
        assert!(star_certificate(&tw.datum, &tw.sigma, &search.bipartite_word).is_none());
    }
    let rep = sweep_star_existence(6);
    let failing: BTreeSet<&str> = rep.failures.iter().map(|w| w.setup.as_str()).collect();
    assert_eq!(failing, BTreeSet::from(["A2", "A4", "A6"]));
}

#[test]
fn even_coxeter_number_does_not_force_star_for_every_element() {
    let rep = sweep_star_all_coxeter(6);
    let failing: BTreeSet<&str> = rep.failures.iter().map(|w| w.setup.as_str()).collect();
    assert_eq!(failing, BTreeSet::from(["A3", "A5", "D5", "E6"]));
    assert_eq!(rep.failures.len(), 46);
    // A3: s1s3s2 and s2s1s3 are bipartite, s1s2s3 is not
    let a3 = Twist::new(Family::A, 3, 1).unwrap();
    assert!(check_condition_star(&a3.datum, &a3.sigma, &[0, 2, 1]).is_some());
    assert!(check_condition_star(&a3.datum, &a3.sigma, &[0, 1, 2]).is_none());
}

#[test]
fn star_consequences_hold_where_star_holds() {
    let rep = sweep_lemma_ast(6);
    assert!(rep.instances_checked > 20, "{rep}");
    assert!(rep.passed(), "{rep}");
}
