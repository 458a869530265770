//! The fixed point `e` of `x |-> mu + c sigma(x)` and the subsystem `Phi_e`.

use std::collections::HashSet;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rootsys::{CoxeterSystem, RootDatum};
use crate::scalar::{ExactField, Rational};
use crate::twisted::element::coroot_matrix_of;
use crate::twisted::setup::TwistedSetup;

#[derive(Clone, Debug)]
pub struct FixedPointData {
    /// `e` in the simple-coroot basis.
    pub e: Vec<Rational>,
    /// Root indices of `Phi_e`, increasing.
    pub phi_e: Vec<usize>,
    /// Root indices of `Delta_e`, increasing.
    pub delta_e: Vec<usize>,
    /// `W_e` with simple system `Delta_e`.
    pub w_e: CoxeterSystem,
}

impl FixedPointData {
    pub fn positive_roots(&self) -> &[usize] {
        self.w_e.positive_roots()
    }
}

/// Solves `(1 - c sigma) e = mu` on `Q Phi^vee` over any exact field.
pub fn solve_fixed_point<T: ExactField>(setup: &TwistedSetup) -> Result<Vec<T>, Error> {
    let datum = setup.datum();
    let r = datum.rank();
    let p = setup.csigma().root_perm(setup.sigma());
    let m = coroot_matrix_of(datum, &p);
    let a = Matrix::<T>::from_fn(r, r, |i, j| {
        let id = if i == j { T::one() } else { T::zero() };
        id - T::from_int(m[(i, j)])
    });
    let mu: Vec<T> = setup.mu().iter().map(|&x| T::from_int(x)).collect();
    let rhs = datum.omega_to_coroot(&mu);
    a.solve(&rhs).ok_or(Error::SingularFixedPointSystem)
}

/// Indecomposable elements of a positive system given as root indices.
pub fn indecomposables(datum: &RootDatum, positive: &[usize]) -> Vec<usize> {
    let set: HashSet<&[i64]> = positive.iter().map(|&k| datum.root(k)).collect();
    let mut out: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&b| {
            let beta = datum.root(b);
            !positive.iter().any(|&g| {
                if g == b {
                    return false;
                }
                let diff: Vec<i64> = beta.iter().zip(datum.root(g)).map(|(x, y)| x - y).collect();
                set.contains(diff.as_slice())
            })
        })
        .collect();
    out.sort_unstable();
    out
}

pub fn fixed_point_e(setup: &TwistedSetup) -> Result<FixedPointData, Error> {
    let datum = setup.datum();
    let e: Vec<Rational> = solve_fixed_point(setup)?;
    let phi_e: Vec<usize> = (0..datum.num_roots()).filter(|&k| datum.pair_coweight(k, &e).is_integral()).collect();
    let positive: Vec<usize> = phi_e.iter().copied().filter(|&k| datum.is_positive(k)).collect();
    let delta_e = indecomposables(datum, &positive);
    let w_e = CoxeterSystem::new(datum.clone(), delta_e.clone());
    if w_e.positive_roots() != positive.as_slice() {
        return Err(Error::Internal("Delta_e does not generate Phi_e".into()));
    }
    Ok(FixedPointData { e, phi_e, delta_e, w_e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, DiagramAut, Family};
    use crate::scalar::BigRational;
    use std::sync::Arc;

    fn setup(f: Family, n: usize, mu: Vec<i64>) -> TwistedSetup {
        let d = Arc::new(build_root_system(f, n).unwrap());
        let s = DiagramAut::identity(&d);
        TwistedSetup::canonical(d, s, mu).unwrap()
    }

    #[test]
    fn mu_zero_gives_everything() {
        let st = setup(Family::D, 5, vec![0; 5]);
        let fp = fixed_point_e(&st).unwrap();
        assert!(fp.e.iter().all(|x| *x == Rational::from_integer(0)));
        assert_eq!(fp.delta_e, vec![0, 1, 2, 3, 4]);
        assert_eq!(fp.phi_e.len(), st.datum().num_roots());
    }

    #[test]
    fn a1_examples() {
        // e - s(e) = 2e; mu = omega = alpha^vee / 2 gives e = alpha^vee / 4
        let fp = fixed_point_e(&setup(Family::A, 1, vec![1])).unwrap();
        assert_eq!(fp.e, vec![Rational::new(1, 4)]);
        assert!(fp.phi_e.is_empty() && fp.delta_e.is_empty());
        assert_eq!(fp.w_e.rank(), 0);

        // mu = alpha^vee = 2 omega
        let fp = fixed_point_e(&setup(Family::A, 1, vec![2])).unwrap();
        assert_eq!(fp.e, vec![Rational::new(1, 2)]);
        assert_eq!(fp.phi_e, vec![0, 1]);
        assert_eq!(fp.delta_e, vec![0]);
    }

    #[test]
    fn big_rationals_agree() {
        let st = setup(Family::E, 7, vec![0, 0, 0, 0, 0, 0, 1]);
        let small: Vec<Rational> = solve_fixed_point(&st).unwrap();
        let big: Vec<BigRational> = solve_fixed_point(&st).unwrap();
        for (a, b) in small.iter().zip(&big) {
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn fixed_point_equation_holds() {
        let st = setup(Family::B, 4, vec![1, 0, 0, 0]);
        let fp = fixed_point_e(&st).unwrap();
        let d = st.datum();
        let m = coroot_matrix_of(d, &st.csigma().root_perm(st.sigma()));
        let ce = m.map(|&x| Rational::from_integer(x)).mul_vec(&fp.e);
        let mu = d.omega_to_coroot(&[1, 0, 0, 0].map(Rational::from_integer));
        for i in 0..4 {
            assert_eq!(mu[i] + ce[i] - fp.e[i], Rational::from_integer(0));
        }
    }
}
