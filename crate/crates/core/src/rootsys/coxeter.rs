//! Coxeter-system machinery for reflection subgroups of `W`.
//!
//! A [`CoxeterSystem`] is a reflection subgroup `W'` of the ambient Weyl
//! group together with a simple system `Delta'` (root indices of the ambient
//! datum). The full group is the case `Delta' = Delta`; the groups `W_e` and
//! parabolic subgroups are other instances. Lengths, descents, reduced words
//! and the Bruhat order are all intrinsic to `(W', Delta')`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::rootsys::datum::RootDatum;
use crate::rootsys::perm::Perm;
use crate::rootsys::weyl::WeylElement;

#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    datum: Arc<RootDatum>,
    simple: Vec<usize>,
    reflections: Vec<WeylElement>,
    positive: Vec<usize>,
    member: Vec<bool>,
}

impl CoxeterSystem {
    /// `(W, S)` itself.
    pub fn full(datum: Arc<RootDatum>) -> Self {
        let simple = (0..datum.rank()).collect();
        Self::new(datum, simple)
    }

    /// The reflection subgroup generated by `s_beta`, `beta` in `simple`.
    /// `simple` must be a simple system of a root subsystem (positive roots
    /// of the ambient datum whose pairwise pairings are nonpositive).
    pub fn new(datum: Arc<RootDatum>, simple: Vec<usize>) -> Self {
        debug_assert!(simple.iter().all(|&b| datum.is_positive(b)));
        let reflections: Vec<WeylElement> = simple.iter().map(|&b| datum.reflection(b)).collect();
        let total = datum.num_roots();
        let mut member = vec![false; total];
        let mut queue: VecDeque<usize> = simple.iter().copied().collect();
        for &b in &simple {
            member[b] = true;
        }
        while let Some(k) = queue.pop_front() {
            for s in &reflections {
                let img = s.apply_root(k);
                if !member[img] {
                    member[img] = true;
                    queue.push_back(img);
                }
            }
        }
        let positive = (0..datum.num_positive()).filter(|&k| member[k]).collect();
        CoxeterSystem { datum, simple, reflections, positive, member }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Simple roots as ambient root indices.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn reflection(&self, letter: usize) -> &WeylElement {
        &self.reflections[letter]
    }

    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    pub fn contains_root(&self, k: usize) -> bool {
        self.member[k]
    }

    /// Letter index of an ambient simple-system root.
    pub fn letter_of(&self, root: usize) -> Option<usize> {
        self.simple.iter().position(|&b| b == root)
    }

    pub fn identity(&self) -> WeylElement {
        self.datum.identity()
    }

    /// Number of positive roots of the subsystem sent to negative roots.
    /// Also meaningful for any root permutation stabilizing the subsystem's
    /// positive cone up to sign (twisted elements).
    pub fn length_of_perm(&self, p: &Perm) -> usize {
        self.positive.iter().filter(|&&k| !self.datum.is_positive(p.apply(k))).count()
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        self.length_of_perm(w.perm())
    }

    #[inline]
    pub fn is_right_descent(&self, w: &WeylElement, letter: usize) -> bool {
        !self.datum.is_positive(w.apply_root(self.simple[letter]))
    }

    pub fn is_left_descent(&self, w: &WeylElement, letter: usize) -> bool {
        self.is_right_descent(&w.inverse(), letter)
    }

    fn first_right_descent(&self, w: &WeylElement) -> Option<usize> {
        (0..self.rank()).find(|&j| self.is_right_descent(w, j))
    }

    /// Reduced word in letters `0..rank()`, or `None` if `w` is not in the
    /// subgroup.
    pub fn try_reduced_word(&self, w: &WeylElement) -> Option<Vec<usize>> {
        let mut w = w.clone();
        let mut rev = Vec::new();
        while !w.is_identity() {
            let j = self.first_right_descent(&w)?;
            rev.push(j);
            w = w.mul(&self.reflections[j]);
        }
        rev.reverse();
        Some(rev)
    }

    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        self.try_reduced_word(w).expect("element lies in the reflection subgroup")
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.try_reduced_word(w).is_some()
    }

    pub fn word_element(&self, letters: &[usize]) -> WeylElement {
        letters.iter().fold(self.identity(), |acc, &j| acc.mul(&self.reflections[j]))
    }

    /// Letters occurring in one (equivalently every) reduced word.
    pub fn support(&self, w: &WeylElement) -> BTreeSet<usize> {
        self.reduced_word(w).into_iter().collect()
    }

    /// Membership in the standard parabolic subgroup `W_K`.
    pub fn in_parabolic(&self, w: &WeylElement, k: &[usize]) -> bool {
        match self.try_reduced_word(w) {
            Some(word) => word.iter().all(|j| k.contains(j)),
            None => false,
        }
    }

    /// Bruhat order by the subword criterion, processed along the reduced
    /// word of `w` from the right: when `s` is a right descent of `w`,
    /// `u <= w` iff `min(u, us) <= ws`.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        let mut u = u.clone();
        let mut w = w.clone();
        if self.length(&u) > self.length(&w) {
            return false;
        }
        while let Some(j) = self.first_right_descent(&w) {
            if self.is_right_descent(&u, j) {
                u = u.mul(&self.reflections[j]);
            }
            w = w.mul(&self.reflections[j]);
        }
        u.is_identity()
    }

    /// The longest element of the parabolic subgroup `W_K`.
    pub fn longest_element(&self, k: &[usize]) -> WeylElement {
        let mut w = self.identity();
        'grow: loop {
            for &j in k {
                if !self.is_right_descent(&w, j) {
                    w = w.mul(&self.reflections[j]);
                    continue 'grow;
                }
            }
            return w;
        }
    }

    pub fn longest(&self) -> WeylElement {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.longest_element(&all)
    }

    /// All elements of the parabolic subgroup `W_K`, ordered by length then
    /// permutation.
    pub fn parabolic_elements(&self, k: &[usize]) -> Vec<WeylElement> {
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(w) = queue.pop_front() {
            for &j in k {
                let next = w.mul(&self.reflections[j]);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<WeylElement> = seen.into_iter().collect();
        out.sort_by_cached_key(|w| (self.length(w), w.perm().clone()));
        out
    }

    pub fn elements(&self) -> Vec<WeylElement> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.parabolic_elements(&all)
    }

    /// `^K W`: elements with no left descent in `K`.
    pub fn is_min_left(&self, w: &WeylElement, k: &[usize]) -> bool {
        let inv = w.inverse();
        k.iter().all(|&j| !self.is_right_descent(&inv, j))
    }

    /// `W^K`: elements with no right descent in `K`.
    pub fn is_min_right(&self, w: &WeylElement, k: &[usize]) -> bool {
        k.iter().all(|&j| !self.is_right_descent(w, j))
    }

    /// Minimal-length representatives of `W_{K1} \ W / W_{K2}`.
    pub fn min_double_coset_reps(&self, k1: &[usize], k2: &[usize]) -> Vec<WeylElement> {
        self.elements()
            .into_iter()
            .filter(|w| self.is_min_left(w, k1) && self.is_min_right(w, k2))
            .collect()
    }

    pub fn min_left_coset_reps(&self, k: &[usize]) -> Vec<WeylElement> {
        self.elements().into_iter().filter(|w| self.is_min_left(w, k)).collect()
    }

    pub fn min_right_coset_reps(&self, k: &[usize]) -> Vec<WeylElement> {
        self.elements().into_iter().filter(|w| self.is_min_right(w, k)).collect()
    }

    /// Every reduced word of `w` (exponential; meant for small checks).
    pub fn all_reduced_words(&self, w: &WeylElement) -> Vec<Vec<usize>> {
        let mut memo: HashMap<WeylElement, Vec<Vec<usize>>> = HashMap::new();
        self.words_rec(w, &mut memo)
    }

    fn words_rec(&self, w: &WeylElement, memo: &mut HashMap<WeylElement, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![vec![]];
        }
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for j in 0..self.rank() {
            if self.is_right_descent(w, j) {
                for mut prefix in self.words_rec(&w.mul(&self.reflections[j]), memo) {
                    prefix.push(j);
                    out.push(prefix);
                }
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Maps a set of subsystem roots by `w` and reports whether it lands on
    /// `target` as a set.
    pub fn maps_roots_onto(&self, w: &WeylElement, from: &[usize], target: &[usize]) -> bool {
        let img: BTreeSet<usize> = from.iter().map(|&k| w.apply_root(k)).collect();
        let tgt: BTreeSet<usize> = target.iter().copied().collect();
        img == tgt
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::cartan::Family;
    use crate::rootsys::datum::build_root_system;

    fn full(f: Family, n: usize) -> CoxeterSystem {
        CoxeterSystem::full(Arc::new(build_root_system(f, n).unwrap()))
    }

    /// Subword oracle: all products of subwords of one reduced word.
    fn subword_products(sys: &CoxeterSystem, word: &[usize]) -> HashSet<WeylElement> {
        let mut set = HashSet::from([sys.identity()]);
        for &j in word {
            let more: Vec<WeylElement> = set.iter().map(|x| x.mul(sys.reflection(j))).collect();
            set.extend(more);
        }
        set
    }

    #[test]
    fn group_orders() {
        assert_eq!(full(Family::A, 3).elements().len(), 24);
        assert_eq!(full(Family::B, 3).elements().len(), 48);
        assert_eq!(full(Family::G, 2).elements().len(), 12);
        assert_eq!(full(Family::D, 4).elements().len(), 192);
    }

    #[test]
    fn longest_elements() {
        let a1 = full(Family::A, 1);
        assert!(a1.longest_element(&[]).is_identity());
        assert_eq!(a1.longest(), a1.reflection(0).clone());

        let a2 = full(Family::A, 2);
        assert_eq!(a2.length(&a2.longest()), 3);
        assert_eq!(a2.longest(), a2.word_element(&[0, 1, 0]));

        // A3 in the S4 model: s_i = (i i+1) acting on positions; w0 = (14)(23)
        let a3 = full(Family::A, 3);
        let w0 = a3.longest();
        let max = a3.elements().into_iter().max_by_key(|w| a3.length(w)).unwrap();
        assert_eq!(w0, max);
        assert_eq!(s4_image(&a3, &w0), vec![3, 2, 1, 0]);
    }

    /// The S_4 model: track where each of positions 0..4 goes under a word of
    /// adjacent transpositions.
    fn s4_image(sys: &CoxeterSystem, w: &WeylElement) -> Vec<usize> {
        let mut p: Vec<usize> = (0..4).collect();
        for &j in sys.reduced_word(w).iter().rev() {
            for x in p.iter_mut() {
                if *x == j {
                    *x = j + 1;
                } else if *x == j + 1 {
                    *x = j;
                }
            }
        }
        p
    }

    #[test]
    fn length_properties_exhaustive() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::G, 2), (Family::D, 4)] {
            let sys = full(f, n);
            let w0 = sys.longest();
            let l0 = sys.length(&w0);
            assert_eq!(l0, sys.datum().num_positive());
            for w in sys.elements() {
                assert_eq!(sys.length(&w), sys.length(&w.inverse()));
                assert_eq!(sys.length(&w0.mul(&w)), l0 - sys.length(&w));
                assert_eq!(sys.reduced_word(&w).len(), sys.length(&w));
                assert_eq!(w.length(), sys.length(&w));
            }
        }
    }

    #[test]
    fn bruhat_examples_a2() {
        let a2 = full(Family::A, 2);
        let s1 = a2.word_element(&[0]);
        let s2 = a2.word_element(&[1]);
        let s1s2 = a2.word_element(&[0, 1]);
        assert!(a2.bruhat_leq(&s1, &s1s2));
        assert!(!a2.bruhat_leq(&s2, &s1));
        let w0 = a2.longest();
        for u in a2.elements() {
            assert!(a2.bruhat_leq(&a2.identity(), &u));
            if u != w0 {
                assert!(!a2.bruhat_leq(&w0, &u));
            }
        }
    }

    #[test]
    fn bruhat_agrees_with_subword_oracle() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::G, 2)] {
            let sys = full(f, n);
            let elems = sys.elements();
            for w in &elems {
                let below = subword_products(&sys, &sys.reduced_word(w));
                for u in &elems {
                    assert_eq!(sys.bruhat_leq(u, w), below.contains(u));
                }
            }
        }
    }

    #[test]
    fn bruhat_is_partial_order_a3() {
        let sys = full(Family::A, 3);
        let elems = sys.elements();
        for a in &elems {
            assert!(sys.bruhat_leq(a, a));
            for b in &elems {
                if a != b && sys.bruhat_leq(a, b) {
                    assert!(!sys.bruhat_leq(b, a));
                    for c in &elems {
                        if sys.bruhat_leq(b, c) {
                            assert!(sys.bruhat_leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_bruhat_agrees_with_intrinsic_order() {
        // W_K for K = {s1, s3} in B3: the subsystem with its own simple roots
        let sys = full(Family::B, 3);
        let k = [0, 2];
        let sub = CoxeterSystem::new(sys.datum().clone(), vec![0, 2]);
        let elems = sys.parabolic_elements(&k);
        for u in &elems {
            for w in &elems {
                assert_eq!(sys.bruhat_leq(u, w), sub.bruhat_leq(u, w));
            }
        }
    }

    #[test]
    fn support_independent_of_reduced_word() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::A, 2), (Family::B, 2)] {
            let sys = full(f, n);
            for w in sys.elements() {
                let supp = sys.support(&w);
                for word in sys.all_reduced_words(&w) {
                    let s: BTreeSet<usize> = word.into_iter().collect();
                    assert_eq!(s, supp);
                }
            }
        }
        let a2 = full(Family::A, 2);
        assert!(a2.support(&a2.identity()).is_empty());
        assert_eq!(a2.support(&a2.word_element(&[0, 1, 0])), BTreeSet::from([0, 1]));
    }

    #[test]
    fn double_cosets_a2() {
        let a2 = full(Family::A, 2);
        assert_eq!(a2.min_double_coset_reps(&[], &[]).len(), 6);
        let all = a2.min_double_coset_reps(&[0, 1], &[0, 1]);
        assert_eq!(all, vec![a2.identity()]);
        let reps = a2.min_double_coset_reps(&[0], &[1]);
        assert_eq!(reps, vec![a2.identity(), a2.word_element(&[1, 0])]);
    }

    #[test]
    fn double_coset_partition_brute_force() {
        let sys = full(Family::B, 3);
        let elems = sys.elements();
        let subsets: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1, 2], vec![0, 2], vec![0, 1, 2]];
        for k1 in &subsets {
            for k2 in &subsets {
                let reps = sys.min_double_coset_reps(k1, k2);
                let wk1 = sys.parabolic_elements(k1);
                let wk2 = sys.parabolic_elements(k2);
                let mut owner: HashMap<WeylElement, usize> = HashMap::new();
                for (idx, x) in reps.iter().enumerate() {
                    for a in &wk1 {
                        for b in &wk2 {
                            let y = a.mul(x).mul(b);
                            let prev = owner.insert(y.clone(), idx);
                            assert!(prev.is_none() || prev == Some(idx), "double cosets overlap");
                            assert!(sys.length(x) <= sys.length(&y));
                        }
                    }
                }
                assert_eq!(owner.len(), elems.len());
            }
        }
    }

    #[test]
    fn subsystem_membership() {
        let sys = full(Family::A, 3);
        let s1s3 = sys.word_element(&[0, 2]);
        assert!(sys.in_parabolic(&s1s3, &[0, 2]));
        assert!(!sys.in_parabolic(&s1s3, &[0]));
        // reflection subgroup generated by alpha1+alpha2 and alpha2+alpha3
        let d = sys.datum().clone();
        let b1 = d.index_of(&[1, 1, 0]).unwrap();
        let b2 = d.index_of(&[0, 1, 1]).unwrap();
        let sub = CoxeterSystem::new(d.clone(), vec![b1, b2]);
        assert_eq!(sub.elements().len(), 4);
        assert!(!sub.contains(sys.reflection(0)));
        assert!(sub.contains(&d.reflection(b1).mul(&d.reflection(b2))));
    }
}
