//! Diagram automorphisms and sigma-orbits of simple roots.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::rootsys::cartan::Family;
use crate::rootsys::datum::RootDatum;
use crate::rootsys::perm::Perm;
use crate::rootsys::weyl::WeylElement;
use crate::scalar::Rational;

/// A permutation of the simple roots preserving the Cartan matrix, together
/// with the permutation it induces on all roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAut {
    nodes: Vec<usize>,
    order: u64,
    root_perm: Perm,
}

impl DiagramAut {
    pub fn identity(datum: &RootDatum) -> Self {
        DiagramAut { nodes: (0..datum.rank()).collect(), order: 1, root_perm: Perm::identity(datum.num_roots()) }
    }

    /// `nodes[i]` is the image of node `i` (0-based).
    pub fn from_nodes(datum: &RootDatum, nodes: Vec<usize>) -> Result<Self, Error> {
        let r = datum.rank();
        if nodes.len() != r {
            return Err(Error::InvalidDiagramAut(format!("expected {r} node images, got {}", nodes.len())));
        }
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        if set.len() != r || nodes.iter().any(|&x| x >= r) {
            return Err(Error::InvalidDiagramAut(format!("{nodes:?} is not a permutation")));
        }
        for i in 0..r {
            for j in 0..r {
                if datum.cartan()[(nodes[i], nodes[j])] != datum.cartan()[(i, j)] {
                    return Err(Error::InvalidDiagramAut(format!(
                        "{nodes:?} does not preserve the Cartan matrix at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let images = (0..datum.num_roots())
            .map(|k| {
                let mut img = vec![0i64; r];
                for (i, &c) in datum.root(k).iter().enumerate() {
                    img[nodes[i]] = c;
                }
                datum.index_of(&img).expect("diagram automorphisms permute roots")
            })
            .collect();
        let root_perm = Perm::from_images(images);
        let order = root_perm.order();
        Ok(DiagramAut { nodes, order, root_perm })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    #[inline]
    pub fn node(&self, i: usize) -> usize {
        self.nodes[i]
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn root_perm(&self) -> &Perm {
        &self.root_perm
    }

    /// `sigma^k` as a root permutation (`k` may be negative).
    pub fn root_perm_pow(&self, k: i64) -> Perm {
        let e = k.rem_euclid(self.order as i64) as u64;
        self.root_perm.pow(e)
    }

    pub fn node_pow(&self, i: usize, k: i64) -> usize {
        let e = k.rem_euclid(self.order as i64);
        (0..e).fold(i, |x, _| self.nodes[x])
    }

    pub fn inverse_node(&self, i: usize) -> usize {
        self.nodes.iter().position(|&x| x == i).expect("permutation")
    }

    /// `sigma^k w sigma^-k`.
    pub fn act_on(&self, w: &WeylElement, k: i64) -> WeylElement {
        if self.is_identity() {
            return w.clone();
        }
        let p = self.root_perm_pow(k);
        WeylElement::from_perm(p.conjugate(w.perm()))
    }

    /// sigma-orbits on the simple roots, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let r = self.nodes.len();
        let mut seen = vec![false; r];
        let mut out = Vec::new();
        for i in 0..r {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            let mut j = self.nodes[i];
            while j != i {
                seen[j] = true;
                orbit.push(j);
                j = self.nodes[j];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, i: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.contains(&i)).expect("every node lies in an orbit")
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter().all(|&i| set.contains(&self.nodes[i]))
    }

    /// `omega_O^vee = sum over O of omega_alpha^vee`, in the simple-coroot basis.
    pub fn orbit_coweight(&self, datum: &RootDatum, orbit: &[usize]) -> Result<Vec<Rational>, Error> {
        if orbit.is_empty() || !self.is_stable(orbit) || orbit.iter().any(|&i| i >= datum.rank()) {
            return Err(Error::InvalidOrbit(format!("{orbit:?} is not closed under sigma")));
        }
        let set: BTreeSet<usize> = orbit.iter().copied().collect();
        let mut acc = vec![Rational::from_integer(0); datum.rank()];
        for i in set {
            for (a, b) in acc.iter_mut().zip(datum.fundamental_coweight(i)) {
                *a += b;
            }
        }
        Ok(acc)
    }

    /// Same coweight in fundamental-coweight coordinates (an indicator vector).
    pub fn orbit_coweight_omega(&self, rank: usize, orbit: &[usize]) -> Vec<i64> {
        (0..rank).map(|i| i64::from(orbit.contains(&i))).collect()
    }
}

/// Every permutation of the simple roots preserving the Cartan matrix,
/// in lexicographic order of node images (identity first).
pub fn diagram_automorphisms(datum: &RootDatum) -> Vec<DiagramAut> {
    let r = datum.rank();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    let mut used = vec![false; r];
    search(datum, &mut current, &mut used, &mut out);
    out.into_iter().map(|nodes| DiagramAut::from_nodes(datum, nodes).expect("checked")).collect()
}

fn search(datum: &RootDatum, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let r = datum.rank();
    let i = current.len();
    if i == r {
        out.push(current.clone());
        return;
    }
    for cand in 0..r {
        if used[cand] {
            continue;
        }
        let ok = (0..i).all(|j| {
            datum.cartan()[(cand, current[j])] == datum.cartan()[(i, j)]
                && datum.cartan()[(current[j], cand)] == datum.cartan()[(j, i)]
        }) && datum.cartan()[(cand, cand)] == datum.cartan()[(i, i)];
        if ok {
            used[cand] = true;
            current.push(cand);
            search(datum, current, used, out);
            current.pop();
            used[cand] = false;
        }
    }
}

/// Node permutation of the standard twist of order `order` for an
/// irreducible type (`2A_n`, `2D_n`, `3D_4`, `2E_6`), 0-based.
pub fn standard_twist(family: Family, rank: usize, order: u64) -> Option<Vec<usize>> {
    let n = rank;
    match (family, order) {
        (_, 1) => Some((0..n).collect()),
        (Family::A, 2) if n >= 2 => Some((0..n).map(|i| n - 1 - i).collect()),
        (Family::D, 2) if n >= 4 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Some(p)
        }
        // 1 -> 3 -> 4 -> 1 on the outer nodes of D4
        (Family::D, 3) if n == 4 => Some(vec![2, 1, 3, 0]),
        (Family::E, 2) if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::datum::build_root_system;

    #[test]
    fn automorphism_counts() {
        let count = |f, n| diagram_automorphisms(&build_root_system(f, n).unwrap()).len();
        assert_eq!(count(Family::A, 1), 1);
        assert_eq!(count(Family::A, 2), 2);
        assert_eq!(count(Family::D, 4), 6);
        assert_eq!(count(Family::D, 5), 2);
        assert_eq!(count(Family::E, 6), 2);
        assert_eq!(count(Family::E, 7), 1);
        assert_eq!(count(Family::B, 3), 1);
        assert_eq!(count(Family::F, 4), 1);
        assert_eq!(count(Family::G, 2), 1);
    }

    #[test]
    fn a2_swap() {
        let d = build_root_system(Family::A, 2).unwrap();
        let auts = diagram_automorphisms(&d);
        assert!(auts[0].is_identity());
        assert_eq!(auts[1].nodes(), &[1, 0]);
        assert_eq!(auts[1].order(), 2);
    }

    #[test]
    fn standard_twists_are_automorphisms() {
        for (f, n, o) in [(Family::A, 5, 2), (Family::D, 5, 2), (Family::D, 4, 3), (Family::E, 6, 2)] {
            let d = build_root_system(f, n).unwrap();
            let s = DiagramAut::from_nodes(&d, standard_twist(f, n, o).unwrap()).unwrap();
            assert_eq!(s.order(), o);
        }
        let b2 = build_root_system(Family::B, 2).unwrap();
        assert!(DiagramAut::from_nodes(&b2, vec![1, 0]).is_err());
    }

    #[test]
    fn orbit_coweights() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        let id = DiagramAut::identity(&a1);
        assert_eq!(id.orbit_coweight(&a1, &[0]).unwrap(), a1.fundamental_coweight(0));

        let a2 = build_root_system(Family::A, 2).unwrap();
        let flip = DiagramAut::from_nodes(&a2, vec![1, 0]).unwrap();
        let w = flip.orbit_coweight(&a2, &[0, 1]).unwrap();
        let sum: Vec<Rational> =
            a2.fundamental_coweight(0).iter().zip(a2.fundamental_coweight(1)).map(|(a, b)| a + b).collect();
        assert_eq!(w, sum);
        assert!(flip.orbit_coweight(&a2, &[0]).is_err());

        let d4 = build_root_system(Family::D, 4).unwrap();
        let sig = DiagramAut::from_nodes(&d4, standard_twist(Family::D, 4, 2).unwrap()).unwrap();
        let outer = sig.orbit_of(2);
        assert_eq!(outer, vec![2, 3]);
        let w = sig.orbit_coweight(&d4, &outer).unwrap();
        let expect: Vec<Rational> =
            d4.fundamental_coweight(2).iter().zip(d4.fundamental_coweight(3)).map(|(a, b)| a + b).collect();
        assert_eq!(w, expect);
        // pairing with simple roots is the orbit indicator
        for i in 0..4 {
            assert_eq!(d4.pair_coweight(i, &w), Rational::from_integer(i64::from(outer.contains(&i))));
        }
    }

    #[test]
    fn sigma_preserves_pairings() {
        let d = build_root_system(Family::E, 6).unwrap();
        let s = DiagramAut::from_nodes(&d, standard_twist(Family::E, 6, 2).unwrap()).unwrap();
        for a in 0..d.num_roots() {
            for b in 0..d.num_roots() {
                assert_eq!(d.pair(a, b), d.pair(s.root_perm().apply(a), s.root_perm().apply(b)));
            }
        }
    }
}
