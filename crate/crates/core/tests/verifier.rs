use std::sync::Arc;

use coxlab::rootsys::{build_root_system, CoxeterSystem, Family};
use coxlab::verifier::sweep::{
    sweep_nonempty, sweep_nonzero, sweep_partial, sweep_proper, sweep_supports, sweep_theorem_coxeter, sweep_theorem_coxeter_with,
    sweep_unstable,
};
use coxlab::verifier::{bruhat_cell_product, demazure_product};
use proptest::prelude::*;

const TYPES: [(Family, usize); 5] = [(Family::A, 3), (Family::B, 3), (Family::G, 2), (Family::D, 4), (Family::A, 4)];

fn case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, Vec<usize>)> {
    (0..TYPES.len()).prop_flat_map(|t| {
        let n = TYPES[t].1;
        let w = || proptest::collection::vec(0..n, 0..10);
        (Just(t), w(), w(), w())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cell_products_are_monotone((t, a, b, word) in case()) {
        let (f, n) = TYPES[t];
        let sys = CoxeterSystem::full(Arc::new(build_root_system(f, n).unwrap()));
        let (u, v) = (sys.word_element(&a), sys.word_element(&b));
        let cells = bruhat_cell_product(&sys, &u, &word);
        let top = demazure_product(&sys, &u, &word);
        prop_assert!(cells.contains(&top));
        prop_assert_eq!(cells.max(&sys).map(|m| sys.length(&m)), Some(sys.length(&top)));
        // the ordinary product is always one of the cells
        prop_assert!(cells.contains(&u.mul(&sys.word_element(&word))));
        if sys.bruhat_leq(&u, &v) {
            prop_assert!(sys.bruhat_leq(&top, &demazure_product(&sys, &v, &word)));
        }
        let reduced = sys.reduced_word(&sys.word_element(&word));
        if reduced.len() == word.len() {
            // for a reduced word every cell lies below the Demazure product
            for w in sys.elements() {
                if cells.contains(&w) {
                    prop_assert!(sys.bruhat_leq(&w, &top));
                }
            }
        }
    }
}

#[test]
fn sweeps_pass_and_are_deterministic() {
    let run = || {
        let (stable, connected) = sweep_supports(4, 2);
        vec![
            sweep_theorem_coxeter(5),
            stable,
            connected,
            sweep_partial(3, 3),
            sweep_proper(4),
            sweep_unstable(3),
            sweep_nonempty(3),
            sweep_nonzero(5, None),
            sweep_nonzero(4, Some(7)),
        ]
    };
    let first = run();
    for rep in &first {
        assert!(rep.instances_checked > 0, "{rep}");
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.truncated, 0);
    }
    assert_eq!(first, run());
}

#[test]
fn corrupted_sequences_are_caught() {
    let rep = sweep_theorem_coxeter_with(3, true);
    assert!(!rep.passed());
    assert_eq!(rep.failures.len(), 10);
}
