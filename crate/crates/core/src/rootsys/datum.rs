//! Root data: roots, coroots, pairings and fundamental coweights.

use std::collections::{HashMap, VecDeque};

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rootsys::cartan::{CartanType, Family, SimpleType};
use crate::rootsys::perm::Perm;
use crate::rootsys::weyl::WeylElement;
use crate::scalar::{ExactField, ExactRing, Rational};

/// A finite crystallographic root system with its coroots.
///
/// Roots are integer vectors in the simple-root basis and coroots integer
/// vectors in the simple-coroot basis. Indices `0..N` are the positive roots
/// sorted by height and then reverse-lexicographically (so index `i < rank`
/// is the simple root `alpha_{i+1}`), and index `N + k` is `-root(k)`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Matrix<i64>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    n_pos: usize,
    index: HashMap<Vec<i64>, usize>,
    coweights: Matrix<Rational>,
    pairing: Vec<i8>,
    simple_reflections: Vec<WeylElement>,
    /// Cartan rank of the (semisimple) lattices modeled here; the central
    /// torus part is always zero.
    center_rank: usize,
}

/// Builds the root system of an irreducible type.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootDatum, Error> {
    Ok(RootDatum::new(CartanType::simple(family, rank)?))
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Self {
        let rank = cartan_type.rank();
        let cartan = Matrix::from_rows(cartan_type.cartan_matrix());

        // closure of the simple (root, coroot) pairs under simple reflections
        let unit = |i: usize| -> Vec<i64> { (0..rank).map(|j| i64::from(i == j)).collect() };
        let mut found: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = (0..rank).map(|i| (unit(i), unit(i))).collect();
        while let Some((root, coroot)) = queue.pop_front() {
            if found.contains_key(&root) {
                continue;
            }
            for i in 0..rank {
                // <root, alpha_i^vee> and <alpha_i, coroot>
                let a: i64 = (0..rank).map(|j| root[j] * cartan[(j, i)]).sum();
                let b: i64 = (0..rank).map(|j| cartan[(i, j)] * coroot[j]).sum();
                let mut r = root.clone();
                r[i] -= a;
                let mut c = coroot.clone();
                c[i] -= b;
                if !found.contains_key(&r) {
                    queue.push_back((r, c));
                }
            }
            found.insert(root, coroot);
        }

        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            found.into_iter().filter(|(r, _)| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = positive.len();
        let mut roots = Vec::with_capacity(2 * n_pos);
        let mut coroots = Vec::with_capacity(2 * n_pos);
        for (r, c) in &positive {
            roots.push(r.clone());
            coroots.push(c.clone());
        }
        for (r, c) in &positive {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        let total = roots.len();
        let mut pairing = vec![0i8; total * total];
        for a in 0..total {
            for b in 0..total {
                let mut s = 0i64;
                for i in 0..rank {
                    if roots[a][i] == 0 {
                        continue;
                    }
                    for j in 0..rank {
                        s += roots[a][i] * cartan[(i, j)] * coroots[b][j];
                    }
                }
                pairing[a * total + b] = s as i8;
            }
        }

        let cartan_q = cartan.map(|&x| Rational::from_int(x));
        let coweights = cartan_q.inverse().expect("Cartan matrix is nonsingular");

        let mut datum = RootDatum {
            cartan_type,
            cartan,
            roots,
            coroots,
            n_pos,
            index,
            coweights,
            pairing,
            simple_reflections: Vec::new(),
            center_rank: 0,
        };
        datum.simple_reflections = (0..rank).map(|i| datum.reflection(i)).collect();
        datum
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn type_label(&self) -> String {
        self.cartan_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn center_rank(&self) -> usize {
        self.center_rank
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &[i64]> {
        self.roots[..self.n_pos].iter().map(Vec::as_slice)
    }

    #[inline]
    pub fn is_positive(&self, k: usize) -> bool {
        k < self.n_pos
    }

    #[inline]
    pub fn negate(&self, k: usize) -> usize {
        if k < self.n_pos {
            k + self.n_pos
        } else {
            k - self.n_pos
        }
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn height(&self, k: usize) -> i64 {
        self.roots[k].iter().sum()
    }

    /// `<root a, coroot b>`.
    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> i64 {
        i64::from(self.pairing[a * self.roots.len() + b])
    }

    /// `<root k, x>` for `x` in the simple-coroot basis.
    pub fn pair_coweight<T: ExactRing>(&self, k: usize, x: &[T]) -> T {
        let mut acc = T::zero();
        for (i, &a) in self.roots[k].iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, xj) in x.iter().enumerate() {
                let c = self.cartan[(i, j)];
                if c != 0 {
                    acc = acc + T::from_int(a * c) * xj.clone();
                }
            }
        }
        acc
    }

    /// `<root k, x>` for an integral coweight in fundamental-coweight coordinates.
    pub fn pair_coweight_omega(&self, k: usize, x: &[i64]) -> i64 {
        self.roots[k].iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// The fundamental coweight `omega_i^vee` in the simple-coroot basis.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<Rational> {
        self.coweights.column(i)
    }

    /// Converts fundamental-coweight coordinates to simple-coroot coordinates.
    pub fn omega_to_coroot<T: ExactField>(&self, x: &[T]) -> Vec<T> {
        let rank = self.rank();
        (0..rank)
            .map(|i| {
                (0..rank).fold(T::zero(), |acc, j| {
                    let (n, d) = self.coweights[(i, j)].to_fraction().expect("small coweight entries");
                    acc + x[j].clone() * T::from_int(n as i64) / T::from_int(d as i64)
                })
            })
            .collect()
    }

    /// Converts simple-coroot coordinates to fundamental-coweight coordinates
    /// (these are the pairings with the simple roots).
    pub fn coroot_to_omega<T: ExactRing>(&self, x: &[T]) -> Vec<T> {
        (0..self.rank()).map(|i| self.pair_coweight(i, x)).collect()
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.simple_reflections[i]
    }

    pub fn simple_reflections(&self) -> &[WeylElement] {
        &self.simple_reflections
    }

    /// The reflection `s_beta` for the root with index `k`, as a root permutation.
    pub fn reflection(&self, k: usize) -> WeylElement {
        let beta = &self.roots[k];
        let images = (0..self.num_roots())
            .map(|a| {
                let p = self.pair(a, k);
                if p == 0 {
                    return a;
                }
                let img: Vec<i64> = self.roots[a].iter().zip(beta).map(|(x, b)| x - p * b).collect();
                self.index[&img]
            })
            .collect();
        WeylElement::from_perm(Perm::from_images(images))
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...` (0-based nodes).
    pub fn word_element(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(&self.simple_reflections[i]))
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.num_roots())
    }

    /// Simple-root support of a root.
    pub fn support_root(&self, k: usize) -> Vec<usize> {
        self.roots[k].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect()
    }

    /// Adjacency in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[(i, j)] != 0
    }

    /// Connected components of the Dynkin diagram, each sorted, in order of
    /// their smallest node.
    pub fn dynkin_components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in 0..n {
                    if comp[w] == usize::MAX && self.adjacent(v, w) {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The highest root of each irreducible component (they are the roots of
    /// maximal height within each component).
    pub fn highest_roots(&self) -> Vec<usize> {
        self.dynkin_components()
            .iter()
            .map(|comp| {
                (0..self.n_pos)
                    .filter(|&k| self.support_root(k).iter().all(|i| comp.contains(i)))
                    .max_by_key(|&k| self.height(k))
                    .expect("component has roots")
            })
            .collect()
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.cartan_type.components
    }
}
