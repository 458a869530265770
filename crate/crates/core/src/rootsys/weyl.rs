//! Weyl group elements as signed permutations of the root set.

use std::str::FromStr;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rootsys::datum::RootDatum;
use crate::rootsys::perm::Perm;
use crate::scalar::ExactRing;

/// Coordinate system for vectors acted on by the Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Simple roots.
    Root,
    /// Simple coroots.
    Coroot,
    /// Fundamental coweights (dual to the simple roots).
    Coweight,
}

impl Basis {
    /// Parses an optional basis flag; a missing flag is an error.
    pub fn from_flag(flag: Option<&str>) -> Result<Basis, Error> {
        flag.ok_or(Error::MissingBasis)?.parse()
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "root" => Ok(Basis::Root),
            "coroot" => Ok(Basis::Coroot),
            "coweight" | "omega" => Ok(Basis::Coweight),
            _ => Err(Error::MissingBasis),
        }
    }
}

/// An element of `W`, canonically the permutation it induces on the root
/// indices of its [`RootDatum`]. It commutes with negation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElement {
    perm: Perm,
}

impl WeylElement {
    pub fn identity(num_roots: usize) -> Self {
        WeylElement { perm: Perm::identity(num_roots) }
    }

    pub fn from_perm(perm: Perm) -> Self {
        WeylElement { perm }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    #[inline]
    pub fn apply_root(&self, k: usize) -> usize {
        self.perm.apply(k)
    }

    pub fn mul(&self, rhs: &WeylElement) -> WeylElement {
        WeylElement { perm: self.perm.compose(&rhs.perm) }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { perm: self.perm.inverse() }
    }

    pub fn pow(&self, e: u64) -> WeylElement {
        WeylElement { perm: self.perm.pow(e) }
    }

    pub fn order(&self) -> u64 {
        self.perm.order()
    }

    fn n_pos(&self) -> usize {
        self.perm.len() / 2
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.n_pos();
        (0..n).filter(|&k| self.perm.apply(k) >= n).count()
    }

    /// Reduced word in 0-based simple-reflection indices, built by peeling
    /// off the first right descent at each step.
    pub fn reduced_word(&self, datum: &RootDatum) -> Vec<usize> {
        let n = self.n_pos();
        let mut w = self.clone();
        let mut rev = Vec::new();
        'outer: while !w.is_identity() {
            for i in 0..datum.rank() {
                if w.apply_root(i) >= n {
                    rev.push(i);
                    w = w.mul(datum.simple_reflection(i));
                    continue 'outer;
                }
            }
            unreachable!("nonidentity element without a descent");
        }
        rev.reverse();
        rev
    }

    /// Images of the simple roots, which determine the element.
    pub fn simple_images(&self, rank: usize) -> Vec<usize> {
        (0..rank).map(|i| self.apply_root(i)).collect()
    }

    /// Exact image of `v`, expressed in `basis`.
    pub fn apply<T: ExactRing>(&self, datum: &RootDatum, v: &[T], basis: Basis) -> Result<Vec<T>, Error> {
        let r = datum.rank();
        if v.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: v.len() });
        }
        let mut out = vec![T::zero(); r];
        match basis {
            Basis::Root | Basis::Coroot => {
                for (i, vi) in v.iter().enumerate() {
                    if vi.is_zero() {
                        continue;
                    }
                    let k = self.apply_root(i);
                    let img = if basis == Basis::Root { datum.root(k) } else { datum.coroot(k) };
                    for (o, &c) in out.iter_mut().zip(img) {
                        if c != 0 {
                            *o = o.clone() + T::from_int(c) * vi.clone();
                        }
                    }
                }
            }
            Basis::Coweight => {
                // (w x)_j = <alpha_j, w x> = <w^-1 alpha_j, x>
                let inv = self.inverse();
                for (j, o) in out.iter_mut().enumerate() {
                    let root = datum.root(inv.apply_root(j));
                    for (&c, vi) in root.iter().zip(v) {
                        if c != 0 {
                            *o = o.clone() + T::from_int(c) * vi.clone();
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Integer matrix of the action on the coweight lattice in
    /// fundamental-coweight coordinates.
    pub fn coweight_matrix(&self, datum: &RootDatum) -> Matrix<i64> {
        let inv = self.inverse();
        let r = datum.rank();
        Matrix::from_fn(r, r, |j, k| datum.root(inv.apply_root(j))[k])
    }
}
