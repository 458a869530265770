//! Products of Bruhat cells in a Coxeter system, by the BN-pair rule
//! `BxB . BsB = BxsB` if `xs > x`, and `BxsB u BxB` otherwise.

use std::collections::BTreeSet;

use crate::rootsys::{CoxeterSystem, WeylElement};

/// The set of `w` with `BwB` inside a product of cells.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellSet {
    pub elements: BTreeSet<WeylElement>,
}

impl CellSet {
    pub fn single(w: WeylElement) -> Self {
        CellSet { elements: BTreeSet::from([w]) }
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.elements.contains(w)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Right multiplication by the cell of the simple reflection `letter`.
    pub fn times_simple(&self, sys: &CoxeterSystem, letter: usize) -> CellSet {
        let s = sys.reflection(letter);
        let mut out = BTreeSet::new();
        for x in &self.elements {
            if sys.is_right_descent(x, letter) {
                out.insert(x.clone());
            }
            out.insert(x.mul(s));
        }
        CellSet { elements: out }
    }

    /// The longest member, which is the Demazure product.
    pub fn max(&self, sys: &CoxeterSystem) -> Option<WeylElement> {
        self.elements.iter().max_by_key(|w| sys.length(w)).cloned()
    }
}

/// Cells in `BuB . Bs_{a_1}B ... Bs_{a_k}B` for `word = (a_1, ..., a_k)`.
pub fn bruhat_cell_product(sys: &CoxeterSystem, u: &WeylElement, word: &[usize]) -> CellSet {
    word.iter().fold(CellSet::single(u.clone()), |acc, &j| acc.times_simple(sys, j))
}

/// `u * s_{a_1} * ... * s_{a_k}` in the 0-Hecke monoid.
pub fn demazure_product(sys: &CoxeterSystem, u: &WeylElement, word: &[usize]) -> WeylElement {
    word.iter().fold(u.clone(), |x, &j| if sys.is_right_descent(&x, j) { x } else { x.mul(sys.reflection(j)) })
}

/// Cells in `BaB . BbB` (`b` given as an element of `sys`).
pub fn cell_product(sys: &CoxeterSystem, a: &WeylElement, b: &WeylElement) -> CellSet {
    bruhat_cell_product(sys, a, &sys.reduced_word(b))
}
