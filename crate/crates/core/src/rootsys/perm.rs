//! Permutations of the root index set.

use std::fmt;

/// A permutation of `0..n`, stored as its image table. Root systems up to
/// `E_8` have 240 roots, so every index fits in a byte.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u8]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 256, "root sets larger than 256 are not supported");
        Perm((0..n).map(|i| i as u8).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Perm(images.into_iter().map(|i| i as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `(self * rhs)(k) = self(rhs(k))`.
    pub fn compose(&self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.len(), rhs.len());
        Perm(rhs.0.iter().map(|&k| self.0[k as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize] = i as u8;
        }
        Perm(out.into_boxed_slice())
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut acc = Perm::identity(self.len());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &Perm) -> Perm {
        self.compose(x).compose(&self.inverse())
    }

    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&v| v as usize)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Perm::from_images(vec![1, 2, 0]);
        let b = Perm::from_images(vec![0, 2, 1]);
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), a.apply(b.apply(1)));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(a.pow(3), Perm::identity(3));
        assert_eq!(a.conjugate(&b).order(), 2);
    }
}
