//! Elements of `W x| <sigma>`.

use crate::linalg::Matrix;
use crate::rootsys::{DiagramAut, Perm, RootDatum, WeylElement};

/// The pair `(w, sigma^power)`, multiplied by
/// `(w, sigma^a)(v, sigma^b) = (w sigma^a(v), sigma^(a+b))`.
/// `power` is kept reduced modulo the order of `sigma`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwistedElement {
    w: WeylElement,
    power: u64,
}

impl TwistedElement {
    pub fn new(w: WeylElement, power: u64, sigma: &DiagramAut) -> Self {
        TwistedElement { w, power: power % sigma.order() }
    }

    pub fn identity(num_roots: usize) -> Self {
        TwistedElement { w: WeylElement::identity(num_roots), power: 0 }
    }

    pub fn weyl(w: WeylElement) -> Self {
        TwistedElement { w, power: 0 }
    }

    pub fn sigma(num_roots: usize, sigma: &DiagramAut) -> Self {
        Self::new(WeylElement::identity(num_roots), 1, sigma)
    }

    pub fn weyl_part(&self) -> &WeylElement {
        &self.w
    }

    pub fn power(&self) -> u64 {
        self.power
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.w.is_identity()
    }

    pub fn mul(&self, rhs: &TwistedElement, sigma: &DiagramAut) -> TwistedElement {
        let moved = sigma.act_on(&rhs.w, self.power as i64);
        TwistedElement { w: self.w.mul(&moved), power: (self.power + rhs.power) % sigma.order() }
    }

    pub fn inverse(&self, sigma: &DiagramAut) -> TwistedElement {
        let a = self.power as i64;
        let w = sigma.act_on(&self.w.inverse(), -a);
        TwistedElement { w, power: (-a).rem_euclid(sigma.order() as i64) as u64 }
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64, sigma: &DiagramAut) -> TwistedElement {
        let base = if e < 0 { self.inverse(sigma) } else { self.clone() };
        let mut acc = TwistedElement::identity(self.w.perm().len());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq, sigma);
            }
            sq = sq.mul(&sq, sigma);
            k >>= 1;
        }
        acc
    }

    /// The permutation of roots `alpha |-> w(sigma^power(alpha))`.
    pub fn root_perm(&self, sigma: &DiagramAut) -> Perm {
        self.w.perm().compose(&sigma.root_perm_pow(self.power as i64))
    }

    /// The order in `W x| <sigma>`. A nontrivial diagram automorphism is
    /// never in `W`, so this is the order of the root permutation.
    pub fn order(&self, sigma: &DiagramAut) -> u64 {
        self.root_perm(sigma).order()
    }

    /// `self x self^-1` for `x` in `W`.
    pub fn conjugate(&self, x: &WeylElement, sigma: &DiagramAut) -> WeylElement {
        let prod = self.mul(&TwistedElement::weyl(x.clone()), sigma).mul(&self.inverse(sigma), sigma);
        debug_assert_eq!(prod.power, 0);
        prod.w
    }
}

/// Matrix of a root permutation's action on the coweight lattice in
/// fundamental-coweight coordinates: row `j` holds the root coordinates of
/// `p^-1(alpha_j)`.
pub fn coweight_matrix_of(datum: &RootDatum, p: &Perm) -> Matrix<i64> {
    let inv = p.inverse();
    let r = datum.rank();
    Matrix::from_fn(r, r, |j, k| datum.root(inv.apply(j))[k])
}

/// Matrix of a root permutation's action on `Q Phi^vee` in the simple-coroot
/// basis: column `j` holds the coroot coordinates of `p(alpha_j^vee)`.
pub fn coroot_matrix_of(datum: &RootDatum, p: &Perm) -> Matrix<i64> {
    let r = datum.rank();
    Matrix::from_fn(r, r, |i, j| datum.coroot(p.apply(j))[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, standard_twist, Family};

    #[test]
    fn twisted_group_laws() {
        let d = build_root_system(Family::A, 3).unwrap();
        let s = DiagramAut::from_nodes(&d, standard_twist(Family::A, 3, 2).unwrap()).unwrap();
        let x = TwistedElement::new(d.word_element(&[0, 1]), 1, &s);
        let y = TwistedElement::new(d.word_element(&[2]), 1, &s);
        let z = TwistedElement::new(d.word_element(&[1, 2, 1]), 0, &s);
        assert_eq!(x.mul(&y, &s).mul(&z, &s), x.mul(&y.mul(&z, &s), &s));
        assert!(x.mul(&x.inverse(&s), &s).is_identity());
        // root permutations multiply the same way
        assert_eq!(x.mul(&y, &s).root_perm(&s), x.root_perm(&s).compose(&y.root_perm(&s)));
        let n = x.order(&s) as i64;
        assert!(x.pow(n, &s).is_identity());
        assert_eq!(x.pow(-1, &s), x.inverse(&s));
        assert_eq!(x.pow(3, &s), x.mul(&x, &s).mul(&x, &s));
    }

    #[test]
    fn sigma_is_not_in_w() {
        let d = build_root_system(Family::D, 4).unwrap();
        let s = DiagramAut::from_nodes(&d, standard_twist(Family::D, 4, 3).unwrap()).unwrap();
        let t = TwistedElement::sigma(d.num_roots(), &s);
        assert_eq!(t.order(&s), 3);
        assert!(!t.is_identity());
    }

    #[test]
    fn coweight_matrix_is_a_representation() {
        let d = build_root_system(Family::B, 3).unwrap();
        let u = d.word_element(&[0, 1, 2]);
        let v = d.word_element(&[2, 1]);
        let m = |w: &WeylElement| coweight_matrix_of(&d, w.perm());
        assert_eq!(m(&u.mul(&v)), m(&u).mul(&m(&v)));
        assert_eq!(m(&u), u.coweight_matrix(&d));
        let c = |w: &WeylElement| coroot_matrix_of(&d, w.perm());
        assert_eq!(c(&u.mul(&v)), c(&u).mul(&c(&v)));
    }
}
