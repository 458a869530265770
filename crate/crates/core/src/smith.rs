//! Smith normal form of integer matrices.
//!
//! `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
//! each diagonal entry dividing the next. The cokernel `Z^n / A Z^m` is then
//! `(+) Z/d_i`, and `x |-> U x` reads off coordinates in that decomposition.

use num_integer::Integer;

use crate::linalg::Matrix;
use crate::scalar::{one, ExactRing};

#[derive(Clone, Debug)]
pub struct SmithForm<T: std::fmt::Display> {
    /// Diagonal of `D`, length `min(rows, cols)`.
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: ExactRing + Integer> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form<T: ExactRing + Integer>(a: &Matrix<T>) -> SmithForm<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::<T>::identity(m);
    let mut v = Matrix::<T>::identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            let p = d[(t, t)].clone();
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let f = d[(i, t)].div_floor(&p);
                add_row(&mut d, i, t, &-f.clone());
                add_row(&mut u, i, t, &-f);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let f = d[(t, j)].div_floor(&p);
                add_col(&mut d, j, t, &-f.clone());
                add_col(&mut v, j, t, &-f);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, &one());
                    add_row(&mut u, t, i, &one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }

    let diagonal = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    SmithForm { diagonal, left: u, right: v }
}

fn add_row<T: ExactRing>(m: &mut Matrix<T>, target: usize, src: usize, f: &T) {
    if f.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = m[(src, j)].clone() * f.clone();
        m[(target, j)] = m[(target, j)].clone() + v;
    }
}

fn add_col<T: ExactRing>(m: &mut Matrix<T>, target: usize, src: usize, f: &T) {
    if f.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = m[(i, src)].clone() * f.clone();
        m[(i, target)] = m[(i, target)].clone() + v;
    }
}

/// Inverse of a unimodular integer matrix, via the adjugate-free route of
/// solving over the rationals and checking integrality.
pub fn unimodular_inverse(m: &Matrix<i64>) -> Option<Matrix<i64>> {
    use crate::scalar::{ExactField, Rational};
    let q = m.map(|&x| Rational::from_int(x));
    let inv = q.inverse()?;
    let n = m.rows();
    let mut out = Matrix::<i64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &inv[(i, j)];
            if !x.is_integral() {
                return None;
            }
            out[(i, j)] = *x.numer();
        }
    }
    Some(out)
}

/// Absolute determinant through the Smith diagonal.
pub fn abs_determinant<T: ExactRing + Integer>(a: &Matrix<T>) -> T {
    smith_normal_form(a).diagonal.into_iter().fold(one(), |acc, d| acc * d)
}

pub fn is_smith_diagonal<T: ExactRing + Integer>(diag: &[T]) -> bool {
    let nonneg = diag.iter().all(|d| !d.is_negative());
    let chain = diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        }
    });
    nonneg && chain
}

/// The finite cokernel `Z^n / A Z^n` of a nonsingular square integer matrix,
/// in invariant-factor coordinates. Factors equal to 1 are dropped, so the
/// trivial group has no coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    factors: Vec<i64>,
    /// Rows of `U` for the kept factors.
    coords: Vec<Vec<i128>>,
    /// Full `U` and its inverse, for transporting endomorphisms.
    left: Matrix<i128>,
    left_inv: Matrix<i128>,
    kept: Vec<usize>,
}

impl Cokernel {
    /// Returns `None` when `a` is singular.
    pub fn new(a: &Matrix<i64>) -> Option<Cokernel> {
        let n = a.rows();
        assert_eq!(n, a.cols(), "cokernel of a square matrix");
        let wide = a.map(|&x| x as i128);
        let snf = smith_normal_form(&wide);
        if snf.diagonal.iter().any(|d| *d == 0) {
            return None;
        }
        let kept: Vec<usize> = (0..n).filter(|&i| snf.diagonal[i] != 1).collect();
        let factors = kept.iter().map(|&i| i64::try_from(snf.diagonal[i]).expect("factor fits i64")).collect();
        let coords = kept.iter().map(|&i| snf.left.row(i).to_vec()).collect();
        let left_inv = integer_inverse(&snf.left).expect("U is unimodular");
        Some(Cokernel { factors, coords, left: snf.left, left_inv, kept })
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Coordinates of the class of `x`, each reduced into `0..d_i`.
    pub fn class_of(&self, x: &[i64]) -> Vec<i64> {
        self.coords
            .iter()
            .zip(&self.factors)
            .map(|(row, &d)| {
                let v: i128 = row.iter().zip(x).map(|(a, &b)| a * b as i128).sum();
                v.rem_euclid(d as i128) as i64
            })
            .collect()
    }

    /// A lattice vector representing the class with the given coordinates.
    pub fn representative(&self, class: &[i64]) -> Vec<i64> {
        let n = self.left.rows();
        let mut y = vec![0i128; n];
        for (&k, &c) in self.kept.iter().zip(class) {
            y[k] = c as i128;
        }
        (0..n).map(|i| (0..n).map(|j| self.left_inv[(i, j)] * y[j]).sum::<i128>() as i64).collect()
    }

    /// `U T U^-1` restricted to the kept coordinates, for an endomorphism
    /// `T` of the lattice preserving `A Z^n`.
    pub fn transport(&self, t: &Matrix<i64>) -> Matrix<i128> {
        let wide = t.map(|&x| x as i128);
        let full = self.left.mul(&wide).mul(&self.left_inv);
        let k = self.kept.len();
        Matrix::from_fn(k, k, |i, j| full[(self.kept[i], self.kept[j])])
    }

    /// Every class, in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..d).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

fn integer_inverse(m: &Matrix<i128>) -> Option<Matrix<i128>> {
    use crate::scalar::{ExactField, Rational128};
    let q = m.map(|&x| Rational128::from_integer(x));
    let inv = q.inverse()?;
    let n = m.rows();
    let mut out = Matrix::<i128>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &inv[(i, j)];
            if !x.is_integral() {
                return None;
            }
            out[(i, j)] = *x.numer();
        }
    }
    Some(out)
}
