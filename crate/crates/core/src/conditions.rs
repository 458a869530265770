//! The constant `M`, condition (*) on the Coxeter element, the order `N_0`
//! of `c sigma`, and the consequences of (*) inside `W_e`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Error;
use crate::rootsys::{CoxeterSystem, DiagramAut, RootDatum};
use crate::twisted::{canonical_coxeter, FixedPointData, SubsequenceData, TwistedElement, TwistedSetup};

/// `max <gamma, omega_O>` over positive roots `gamma` and sigma-orbits `O`.
///
/// For a product of components permuted by sigma this agrees with the
/// maximum over components taken with the smallest power of sigma fixing
/// each, since a sigma-orbit meets a component in one orbit of that power.
pub fn constant_m(datum: &RootDatum, sigma: &DiagramAut) -> i64 {
    let orbits = sigma.orbits();
    (0..datum.num_positive())
        .flat_map(|k| orbits.iter().map(move |o| o.iter().map(|&i| datum.root(k)[i]).sum::<i64>()))
        .max()
        .unwrap_or(0)
        .max(1)
}

/// Evidence for (*): `(c sigma)^N = w_0 sigma^N` and `N l(c) = l(w_0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCertificate {
    #[serde(rename = "N")]
    pub n: u64,
    pub check_power: bool,
    pub check_length: bool,
}

impl StarCertificate {
    pub fn is_valid(&self) -> bool {
        self.check_power && self.check_length
    }
}

/// Tests (*) at the only candidate `N = l(w_0) / l(c)`. Returns `None` if
/// `l(c)` does not divide `l(w_0)`.
pub fn star_certificate(datum: &Arc<RootDatum>, sigma: &DiagramAut, c_word: &[usize]) -> Option<StarCertificate> {
    let c = datum.word_element(c_word);
    let lc = c.length();
    let lw0 = datum.num_positive();
    if lc == 0 || lw0 % lc != 0 {
        return None;
    }
    let n = (lw0 / lc) as u64;
    let csigma = TwistedElement::new(c, 1, sigma);
    let w0 = CoxeterSystem::full(datum.clone()).longest();
    let rhs = TwistedElement::new(w0, n % sigma.order(), sigma);
    Some(StarCertificate { n, check_power: csigma.pow(n as i64, sigma) == rhs, check_length: n as usize * lc == lw0 })
}

/// The certificate for `c` if it satisfies (*).
pub fn check_condition_star(datum: &Arc<RootDatum>, sigma: &DiagramAut, c_word: &[usize]) -> Option<StarCertificate> {
    star_certificate(datum, sigma, c_word).filter(StarCertificate::is_valid)
}

/// Result of searching the sigma-Coxeter words on the canonical
/// representatives for one satisfying (*).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarSearch {
    /// Distinct Coxeter elements examined.
    pub elements_checked: usize,
    /// Number of those satisfying (*).
    pub elements_valid: usize,
    pub bipartite_word: Vec<usize>,
    pub found: Option<(Vec<usize>, StarCertificate)>,
}

/// Alternating word: representatives of one colour class of the orbit
/// graph, then the other. The colour of the smallest representative is 0.
pub fn bipartite_coxeter(datum: &RootDatum, sigma: &DiagramAut) -> Vec<usize> {
    let reps = canonical_coxeter(sigma);
    let adjacent = |a: usize, b: usize| {
        a != b && sigma.orbit_of(a).iter().any(|&x| sigma.orbit_of(b).iter().any(|&y| datum.adjacent(x, y)))
    };
    let mut colour = vec![None; datum.rank()];
    for &start in &reps {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(0u8);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &b in &reps {
                if colour[b].is_none() && adjacent(a, b) {
                    colour[b] = Some(1 - colour[a].unwrap());
                    stack.push(b);
                }
            }
        }
    }
    let mut word: Vec<usize> = reps.iter().copied().filter(|&r| colour[r] == Some(0)).collect();
    word.extend(reps.iter().copied().filter(|&r| colour[r] == Some(1)));
    word
}

/// Every ordering of `items`.
pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Exhaustive search over orderings of the canonical representatives,
/// deduplicated by element. The bipartite word is preferred when valid.
pub fn find_star_coxeter(datum: &Arc<RootDatum>, sigma: &DiagramAut) -> StarSearch {
    let bip = bipartite_coxeter(datum, sigma);
    let mut seen = HashSet::new();
    let mut checked = 0;
    let mut valid = 0;
    let mut first = None;
    for word in std::iter::once(bip.clone()).chain(permutations(&canonical_coxeter(sigma))) {
        if !seen.insert(datum.word_element(&word)) {
            continue;
        }
        checked += 1;
        if let Some(cert) = check_condition_star(datum, sigma, &word) {
            valid += 1;
            if first.is_none() {
                first = Some((word, cert));
            }
        }
    }
    StarSearch { elements_checked: checked, elements_valid: valid, bipartite_word: bip, found: first }
}

/// `N_0`, the order of `c sigma` in `W x| <sigma>`.
pub fn order_n0(setup: &TwistedSetup) -> u64 {
    setup.csigma().order(setup.sigma())
}

/// Outcome of checking the consequences of (*) inside `W_e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AstReport {
    #[serde(rename = "N")]
    pub n: u64,
    /// `(c_I sigma_I)^N = w_e sigma_I^N`.
    pub power_identity: bool,
    /// `N l_e(c_I) = l_e(w_e)`.
    pub length_identity: bool,
    /// `i` in `1..N` where `l_e` fails to add along powers of `c_I sigma_I`.
    pub additivity_failures: Vec<u64>,
}

impl AstReport {
    pub fn passed(&self) -> bool {
        self.power_identity && self.length_identity && self.additivity_failures.is_empty()
    }
}

/// `l_e` of a twisted element: positive roots of `Phi_e` sent negative.
fn length_e(fp: &FixedPointData, x: &TwistedElement, sigma: &DiagramAut) -> usize {
    let p = x.root_perm(sigma);
    fp.w_e.length_of_perm(&p)
}

pub fn verify_lemma_ast(setup: &TwistedSetup, fp: &FixedPointData, sd: &SubsequenceData) -> Result<AstReport, Error> {
    let datum = setup.datum();
    let sigma = setup.sigma();
    let cert = check_condition_star(datum, sigma, setup.c_word())
        .ok_or_else(|| Error::Precondition(format!("{setup} does not satisfy (*)")))?;
    let n = cert.n;
    let ci = TwistedElement::weyl(sd.c_i.clone());
    let x = ci.mul(&sd.sigma_i, sigma);
    let lhs = x.pow(n as i64, sigma);
    let rhs = TwistedElement::weyl(fp.w_e.longest()).mul(&sd.sigma_i.pow(n as i64, sigma), sigma);
    let l1 = length_e(fp, &x, sigma);
    let additivity_failures = (1..n)
        .filter(|&i| {
            let a = length_e(fp, &x.pow(i as i64, sigma), sigma);
            let b = length_e(fp, &x.pow(i as i64 + 1, sigma), sigma);
            b != a + l1
        })
        .collect();
    Ok(AstReport {
        n,
        power_identity: lhs == rhs,
        length_identity: n as usize * fp.w_e.length(&sd.c_i) == fp.positive_roots().len(),
        additivity_failures,
    })
}
