//! Twisted setups `(Phi, sigma, c, mu)` and sigma-Coxeter words.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rootsys::{DiagramAut, RootDatum, WeylElement};
use crate::twisted::element::{coweight_matrix_of, TwistedElement};

/// The canonical sigma-Coxeter word: the smallest node of each sigma-orbit,
/// in increasing order (0-based nodes).
pub fn canonical_coxeter(sigma: &DiagramAut) -> Vec<usize> {
    let mut reps: Vec<usize> = sigma.orbits().iter().map(|o| o[0]).collect();
    reps.sort_unstable();
    reps
}

/// True iff `word` is reduced and uses exactly one letter from each
/// sigma-orbit.
pub fn is_twisted_coxeter(datum: &RootDatum, sigma: &DiagramAut, word: &[usize]) -> bool {
    if word.iter().any(|&i| i >= datum.rank()) {
        return false;
    }
    let orbits = sigma.orbits();
    let hits_once = orbits.iter().all(|o| word.iter().filter(|i| o.contains(i)).count() == 1);
    hits_once && word.len() == orbits.len() && datum.word_element(word).length() == word.len()
}

/// `(Phi, sigma, c = s_{a_1} ... s_{a_r}, mu)`, with `mu` an integral
/// coweight in fundamental-coweight coordinates.
#[derive(Clone, Debug)]
pub struct TwistedSetup {
    datum: Arc<RootDatum>,
    sigma: DiagramAut,
    c_word: Vec<usize>,
    mu: Vec<i64>,
    c: WeylElement,
    csigma: TwistedElement,
}

impl TwistedSetup {
    pub fn new(datum: Arc<RootDatum>, sigma: DiagramAut, c_word: Vec<usize>, mu: Vec<i64>) -> Result<Self, Error> {
        if sigma.nodes().len() != datum.rank() {
            return Err(Error::InvalidSetup("sigma acts on a different number of nodes".into()));
        }
        if !is_twisted_coxeter(&datum, &sigma, &c_word) {
            let shown: Vec<usize> = c_word.iter().map(|i| i + 1).collect();
            return Err(Error::InvalidSetup(format!("c = {shown:?} is not sigma-Coxeter")));
        }
        if mu.len() != datum.rank() {
            return Err(Error::DimensionMismatch { expected: datum.rank(), got: mu.len() });
        }
        let c = datum.word_element(&c_word);
        let csigma = TwistedElement::new(c.clone(), 1, &sigma);
        Ok(TwistedSetup { datum, sigma, c_word, mu, c, csigma })
    }

    pub fn canonical(datum: Arc<RootDatum>, sigma: DiagramAut, mu: Vec<i64>) -> Result<Self, Error> {
        let word = canonical_coxeter(&sigma);
        Self::new(datum, sigma, word, mu)
    }

    pub fn with_mu(&self, mu: Vec<i64>) -> Result<Self, Error> {
        Self::new(self.datum.clone(), self.sigma.clone(), self.c_word.clone(), mu)
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn sigma(&self) -> &DiagramAut {
        &self.sigma
    }

    pub fn c_word(&self) -> &[usize] {
        &self.c_word
    }

    /// Number of letters `r` of the Coxeter word (= number of sigma-orbits).
    pub fn word_len(&self) -> usize {
        self.c_word.len()
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn c(&self) -> &WeylElement {
        &self.c
    }

    pub fn csigma(&self) -> &TwistedElement {
        &self.csigma
    }

    /// Action of `c sigma` on `P` in fundamental-coweight coordinates.
    pub fn csigma_coweight_matrix(&self) -> Matrix<i64> {
        coweight_matrix_of(&self.datum, &self.csigma.root_perm(&self.sigma))
    }

    /// `1 - c sigma` on `P`, in fundamental-coweight coordinates.
    pub fn one_minus_csigma(&self) -> Matrix<i64> {
        Matrix::<i64>::identity(self.datum.rank()).sub(&self.csigma_coweight_matrix())
    }

    /// Orbits of `alpha |-> c sigma(alpha)` on all roots. Each orbit starts
    /// at its smallest index and follows the map; orbits are ordered by
    /// their first element.
    pub fn csigma_orbits(&self) -> Vec<Vec<usize>> {
        let p = self.csigma.root_perm(&self.sigma);
        let n = self.datum.num_roots();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = p.apply(start);
            while k != start {
                seen[k] = true;
                orbit.push(k);
                k = p.apply(k);
            }
            out.push(orbit);
        }
        out
    }

    /// Simple-root support of a set of roots.
    pub fn support(&self, roots: &[usize]) -> BTreeSet<usize> {
        roots.iter().flat_map(|&k| self.datum.support_root(k)).collect()
    }
}

impl fmt::Display for TwistedSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma: Vec<String> = self.sigma.nodes().iter().map(|i| (i + 1).to_string()).collect();
        let c: Vec<String> = self.c_word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{} sigma=({}) c={} mu={:?}", self.datum.type_label(), sigma.join(","), c.join(""), self.mu)
    }
}
