//! Exhaustive checks of the Weyl-group lemmas on one setup.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::conditions::{check_condition_star, constant_m, permutations};
use crate::error::Error;
use crate::rootsys::{CoxeterSystem, Perm, WeylElement};
use crate::twisted::{FixedPointData, SubsequenceData, TwistedElement, TwistedSetup};
use crate::verifier::cells::bruhat_cell_product;
use crate::verifier::report::LemmaReport;

pub const CELL_MODEL_NOTE: &str =
    "cell hypotheses are modeled by Bruhat cell products in W_e (finite BN-pair rule), not by the deep-level groups";

fn fmt_set(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Images of the letters of `sys` under a root permutation that stabilizes
/// its simple system.
pub fn letter_permutation(sys: &CoxeterSystem, tau: &Perm) -> Option<Vec<usize>> {
    sys.simple_roots().iter().map(|&b| sys.letter_of(tau.apply(b))).collect()
}

/// `tau w tau^-1`.
fn conj(tau: &Perm, w: &WeylElement) -> WeylElement {
    WeylElement::from_perm(tau.conjugate(w.perm()))
}

/// Subsets of `0..n` (as sorted vectors) stable under `perm`, ordered by
/// bitmask.
pub fn stable_subsets(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    (0u32..(1 << n))
        .filter(|mask| (0..n).all(|i| mask >> i & 1 == 0 || mask >> perm[i] & 1 == 1))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Orbits of `perm` inside the stable set `k`.
fn orbits_in(perm: &[usize], k: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &i in k {
        if seen.contains(&i) {
            continue;
        }
        let mut orbit = vec![i];
        seen.insert(i);
        let mut j = perm[i];
        while j != i {
            seen.insert(j);
            orbit.push(j);
            j = perm[j];
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Distinct twisted Coxeter elements of `W_K`: one letter from each orbit
/// of `perm` on `K`, in every order.
pub fn twisted_coxeter_elements(sys: &CoxeterSystem, perm: &[usize], k: &[usize]) -> Vec<WeylElement> {
    let orbits = orbits_in(perm, k);
    let mut choices: Vec<Vec<usize>> = vec![vec![]];
    for o in &orbits {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                o.iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    let set: BTreeSet<WeylElement> =
        choices.iter().flat_map(|reps| permutations(reps)).map(|word| sys.word_element(&word)).collect();
    set.into_iter().collect()
}

/// Smallest element of `w W_K`.
fn min_in_left_coset(sys: &CoxeterSystem, w: &WeylElement, k: &[usize]) -> WeylElement {
    let mut x = w.clone();
    while let Some(&j) = k.iter().find(|&&j| sys.is_right_descent(&x, j)) {
        x = x.mul(sys.reflection(j));
    }
    x
}

fn closure(perm: &[usize], set: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = set.into_iter().collect();
    let mut stack: Vec<usize> = out.iter().copied().collect();
    while let Some(i) = stack.pop() {
        if out.insert(perm[i]) {
            stack.push(perm[i]);
        }
    }
    out
}

/// Every `c sigma`-orbit on roots has sigma-stable support.
pub fn verify_support_stable(setup: &TwistedSetup) -> LemmaReport {
    let mut rep = LemmaReport::new("support_stable");
    let sigma = setup.sigma();
    for orbit in setup.csigma_orbits() {
        let supp = setup.support(&orbit);
        let image: BTreeSet<usize> = supp.iter().map(|&i| sigma.node(i)).collect();
        rep.check(image == supp, setup, || format!("orbit of root {} has support {:?}", orbit[0], supp));
    }
    rep
}

/// Every `c sigma`-orbit has support equal to the sigma-saturation of a
/// connected component of the diagram.
pub fn verify_support_connected(setup: &TwistedSetup) -> LemmaReport {
    let mut rep = LemmaReport::new("support_connected");
    let sigma = setup.sigma();
    let saturations: Vec<BTreeSet<usize>> = setup
        .datum()
        .dynkin_components()
        .into_iter()
        .map(|h| closure(sigma.nodes(), h))
        .collect();
    for orbit in setup.csigma_orbits() {
        let supp = setup.support(&orbit);
        rep.check(saturations.contains(&supp), setup, || format!("orbit of root {} has support {:?}", orbit[0], supp));
    }
    rep
}

/// For every proper `sigma_I`-stable `K` of `Delta_e`, exhibits a proper
/// sigma-stable `J` of `Delta` with `sigma_I in W_J sigma` and
/// `w_e W_K in w_0 W_J`.
pub fn verify_corollary_proper(setup: &TwistedSetup, fp: &FixedPointData, sd: &SubsequenceData) -> Result<LemmaReport, Error> {
    let datum = setup.datum();
    let sigma = setup.sigma();
    check_condition_star(datum, sigma, setup.c_word())
        .ok_or_else(|| Error::Precondition(format!("{setup} does not satisfy (*)")))?;
    let mut rep = LemmaReport::new("corollary_proper");
    let sys = &fp.w_e;
    let tau = sd.sigma_i.root_perm(sigma);
    let perm = letter_permutation(sys, &tau).ok_or_else(|| Error::Internal("sigma_I does not preserve Delta_e".into()))?;
    let full = CoxeterSystem::full(datum.clone());
    let target = full.longest().inverse().mul(&sys.longest());
    let twist_support: BTreeSet<usize> = sd.sigma_i.weyl_part().reduced_word(datum).into_iter().collect();

    let works = |j_set: &BTreeSet<usize>, k_roots: &[usize]| {
        let j: Vec<usize> = j_set.iter().copied().collect();
        j.len() < datum.rank()
            && sigma.is_stable(&j)
            && twist_support.is_subset(j_set)
            && k_roots.iter().all(|&b| datum.support_root(b).iter().all(|i| j_set.contains(i)))
            && full.in_parabolic(&target, &j)
    };

    for k in stable_subsets(&perm) {
        if k.len() == sys.rank() {
            continue;
        }
        let k_roots: Vec<usize> = k.iter().map(|&l| sys.simple_roots()[l]).collect();
        let recipe: Vec<BTreeSet<usize>> = sd
            .complement
            .iter()
            .zip(&sd.delta_i)
            .filter(|(_, beta)| !k_roots.contains(beta))
            .map(|(&j, _)| {
                let orbit = sigma.orbit_of(setup.c_word()[j]);
                (0..datum.rank()).filter(|i| !orbit.contains(i)).collect()
            })
            .collect();
        if recipe.iter().any(|j| works(j, &k_roots)) {
            rep.check(true, setup, String::new);
            continue;
        }
        let orbits = sigma.orbits();
        let found = (0u32..(1 << orbits.len()) - 1).any(|mask| {
            let j: BTreeSet<usize> =
                orbits.iter().enumerate().filter(|(o, _)| mask >> o & 1 == 1).flat_map(|(_, o)| o.iter().copied()).collect();
            works(&j, &k_roots)
        });
        if found {
            rep.note("some K needed a J other than the complement of one orbit O_i");
        }
        rep.check(found, setup, || format!("K = {} admits no J", fmt_set(&k)));
    }
    if sys.rank() == 0 {
        rep.note("Delta_e is empty: vacuous");
    }
    Ok(rep)
}

/// For all `tau`-stable `K_1, K_2`, twisted Coxeter elements `c_1, c_2` of
/// `W_{K_1}, W_{K_2}` and `w` with `c_1 tau(w) = w c_2`: the minimal element
/// `x` of `w W_{K_2}` lies in `^{K_1}W` and maps `K_2` onto `K_1`.
pub fn verify_lemma_partial(sys: &CoxeterSystem, tau: &Perm, label: &str) -> Result<LemmaReport, Error> {
    let mut rep = LemmaReport::new("lemma_partial");
    let perm = letter_permutation(sys, tau).ok_or_else(|| Error::Precondition("tau does not stabilize the simple system".into()))?;
    let elements = sys.elements();
    let stable = stable_subsets(&perm);
    let coxeter: Vec<Vec<WeylElement>> = stable.iter().map(|k| twisted_coxeter_elements(sys, &perm, k)).collect();
    let mut owner: HashMap<&WeylElement, usize> = HashMap::new();
    for (idx, cs) in coxeter.iter().enumerate() {
        for c in cs {
            owner.insert(c, idx);
        }
    }
    let twisted: Vec<WeylElement> = elements.iter().map(|w| conj(tau, w).inverse()).collect();
    for (k2_idx, k2) in stable.iter().enumerate() {
        let roots2: Vec<usize> = k2.iter().map(|&l| sys.simple_roots()[l]).collect();
        for c2 in &coxeter[k2_idx] {
            for (w, tw_inv) in elements.iter().zip(&twisted) {
                let c1 = w.mul(c2).mul(tw_inv);
                let Some(&k1_idx) = owner.get(&c1) else {
                    rep.skipped += 1;
                    continue;
                };
                let k1 = &stable[k1_idx];
                let roots1: Vec<usize> = k1.iter().map(|&l| sys.simple_roots()[l]).collect();
                let x = min_in_left_coset(sys, w, k2);
                let ok = sys.is_min_left(&x, k1) && sys.maps_roots_onto(&x, &roots2, &roots1);
                rep.check(ok, label, || {
                    format!("K1 = {}, K2 = {}, w = {:?}", fmt_set(k1), fmt_set(k2), sys.reduced_word(w))
                });
            }
        }
    }
    Ok(rep)
}

struct KernelData {
    x: TwistedElement,
    fixed: HashSet<WeylElement>,
    elements: Vec<WeylElement>,
    n: u64,
}

fn kernel_data(setup: &TwistedSetup, fp: &FixedPointData, sd: &SubsequenceData) -> Result<KernelData, Error> {
    let sigma = setup.sigma();
    let cert = check_condition_star(setup.datum(), sigma, setup.c_word())
        .ok_or_else(|| Error::Precondition(format!("{setup} does not satisfy (*)")))?;
    let x = TwistedElement::weyl(sd.c_i.clone()).mul(&sd.sigma_i, sigma);
    let elements = fp.w_e.elements();
    let fixed = elements.iter().filter(|w| &setup.csigma().conjugate(w, sigma) == *w).cloned().collect();
    Ok(KernelData { x, fixed, elements, n: cert.n })
}

/// Checks, for `w` in `W_e` outside `W_e^{c sigma}` and the given `i`: if
/// `c_I B sigma_I(w_i) B` meets `B w_i B sigma_I^i(c_I)` (cells of `W_e`),
/// then `w_i in w_e W_K` for a proper `sigma_I`-stable `K`, where
/// `w_i = w (c_I sigma_I)^i sigma_I^-i`.
pub fn verify_unstable_kernel(setup: &TwistedSetup, fp: &FixedPointData, sd: &SubsequenceData, i: u64) -> Result<LemmaReport, Error> {
    let data = kernel_data(setup, fp, sd)?;
    unstable_with(setup, fp, sd, &data, i)
}

/// [`verify_unstable_kernel`] for `i` in `0..2N`.
pub fn verify_unstable_kernel_all(setup: &TwistedSetup, fp: &FixedPointData, sd: &SubsequenceData) -> Result<LemmaReport, Error> {
    let data = kernel_data(setup, fp, sd)?;
    let mut rep = LemmaReport::new("unstable_kernel");
    for i in 0..2 * data.n {
        rep.merge(unstable_with(setup, fp, sd, &data, i)?);
    }
    Ok(rep)
}

fn unstable_with(
    setup: &TwistedSetup,
    fp: &FixedPointData,
    sd: &SubsequenceData,
    data: &KernelData,
    i: u64,
) -> Result<LemmaReport, Error> {
    let sigma = setup.sigma();
    let sys = &fp.w_e;
    let mut rep = LemmaReport::new("unstable_kernel");
    rep.note(CELL_MODEL_NOTE);
    if sys.rank() == 0 {
        rep.note("Delta_e is empty: vacuous");
        return Ok(rep);
    }
    let tau = sd.sigma_i.root_perm(sigma);
    let perm = letter_permutation(sys, &tau).ok_or_else(|| Error::Internal("sigma_I does not preserve Delta_e".into()))?;
    let shift = data.x.pow(i as i64, sigma).mul(&sd.sigma_i.pow(-(i as i64), sigma), sigma);
    if shift.power() != 0 {
        return Err(Error::Internal("(c_I sigma_I)^i sigma_I^-i is not in W".into()));
    }
    let d = sd.sigma_i.pow(i as i64, sigma).conjugate(&sd.c_i, sigma);
    let d_word = sys.reduced_word(&d);
    let c_word = sys.reduced_word(&sd.c_i);
    let we_inv = sys.longest().inverse();
    for w in &data.elements {
        if data.fixed.contains(w) {
            rep.skipped += 1;
            continue;
        }
        let wi = w.mul(shift.weyl_part());
        let target = conj(&tau, &wi).inverse();
        // c_I B y B meets B w_i B d  <=>  some z has Bz B in both
        // B w_i B . B d B  and  B c_I B . B y B, with y = sigma_I(w_i).
        let hypothesis = bruhat_cell_product(sys, &wi, &d_word)
            .elements
            .iter()
            .any(|z| bruhat_cell_product(sys, &z.inverse(), &c_word).contains(&target));
        if !hypothesis {
            rep.skipped += 1;
            continue;
        }
        let k = closure(&perm, sys.support(&we_inv.mul(&wi)));
        rep.check(k.len() < sys.rank(), setup, || {
            format!("i = {i}, w = {:?}: smallest stable K is all of Delta_e", sys.reduced_word(w))
        });
    }
    Ok(rep)
}

/// For `i` in `0..2N` and `w, u` in `W_e^{c sigma}` such that
/// `B w X^i B . B c_I sigma_I B` meets `B u X^{i+1} B` (`X = c_I sigma_I`):
/// some `v <=_e c_I` has `w X^i v sigma_I = u X^{i+1}`, and `w = u` unless
/// `sigma_I` acts trivially on `Delta_e` and `w c_I^i = w_e`.
pub fn verify_nonempty_kernel(setup: &TwistedSetup, fp: &FixedPointData, sd: &SubsequenceData) -> Result<LemmaReport, Error> {
    let data = kernel_data(setup, fp, sd)?;
    let sigma = setup.sigma();
    let sys = &fp.w_e;
    let mut rep = LemmaReport::new("nonempty_kernel");
    rep.note(CELL_MODEL_NOTE);
    let tau = sd.sigma_i.root_perm(sigma);
    let perm = letter_permutation(sys, &tau).ok_or_else(|| Error::Internal("sigma_I does not preserve Delta_e".into()))?;
    let trivial_twist = perm.iter().enumerate().all(|(a, &b)| a == b);
    let we = sys.longest();
    let sigma_inv = sd.sigma_i.inverse(sigma);
    // X^j sigma_I^-j, an element of W_e
    let shift = |j: i64| {
        let s = data.x.pow(j, sigma).mul(&sd.sigma_i.pow(-j, sigma), sigma);
        debug_assert_eq!(s.power(), 0);
        s.weyl_part().clone()
    };
    let mut fixed: Vec<&WeylElement> = data.fixed.iter().collect();
    fixed.sort();
    for i in 0..2 * data.n {
        let xi_inv = data.x.pow(-(i as i64), sigma);
        let xi1 = data.x.pow(i as i64 + 1, sigma);
        let ci_pow = sd.c_i.pow(i);
        let (shift_i, shift_next) = (shift(i as i64), shift(i as i64 + 1));
        let d_word = sys.reduced_word(&sd.sigma_i.pow(i as i64, sigma).conjugate(&sd.c_i, sigma));
        for &w in &fixed {
            let cells = bruhat_cell_product(sys, &w.mul(&shift_i), &d_word);
            for &u in &fixed {
                if !cells.contains(&u.mul(&shift_next)) {
                    rep.skipped += 1;
                    continue;
                }
                let mid = TwistedElement::weyl(w.inverse().mul(u));
                let v = xi_inv.mul(&mid, sigma).mul(&xi1, sigma).mul(&sigma_inv, sigma);
                let v_ok = v.power() == 0 && sys.contains(v.weyl_part()) && sys.bruhat_leq(v.weyl_part(), &sd.c_i);
                let exempt = trivial_twist && w.mul(&ci_pow) == we;
                rep.check(v_ok && (exempt || w == u), setup, || {
                    let v = if v_ok { "" } else { " (no v <= c_I)" };
                    format!("i = {i}, w = {:?}, u = {:?}{v}", sys.reduced_word(w), sys.reduced_word(u))
                });
            }
        }
    }
    Ok(rep)
}

/// For `chi` in `{(c sigma)^j omega_O}`, every `c sigma`-orbit `C` on which
/// `chi` is non-central with `|<chi, beta>| < q`, and `gamma` in `C`:
/// `sum_{i < N_0} q^i <gamma, (c sigma)^i chi> != 0`. Also checks
/// `|<chi, beta>| <= M` on all roots.
pub fn verify_lemma_nonzero(setup: &TwistedSetup, q: i64) -> Result<LemmaReport, Error> {
    let datum = setup.datum();
    let sigma = setup.sigma();
    let m = constant_m(datum, sigma);
    if q <= m {
        return Err(Error::QTooSmall { q, m });
    }
    let mut rep = LemmaReport::new("lemma_nonzero");
    let p_inv = setup.csigma().root_perm(sigma).inverse();
    let n0 = p_inv.order() as usize;
    let n = datum.num_roots();
    // back[t][k] = (c sigma)^-t (root k)
    let mut back: Vec<Vec<usize>> = vec![(0..n).collect()];
    for t in 1..2 * n0 {
        let prev = &back[t - 1];
        back.push((0..n).map(|k| p_inv.apply(prev[k])).collect());
    }
    let orbits = setup.csigma_orbits();
    let qb = BigInt::from(q);
    for o in sigma.orbits() {
        let f = |k: usize| o.iter().map(|&i| datum.root(k)[i]).sum::<i64>();
        for j in 0..n0 {
            // <beta, (c sigma)^j omega_O> = f((c sigma)^-j beta)
            let pair = |k: usize| f(back[j][k]);
            let worst = (0..n).map(|k| pair(k).abs()).max().unwrap_or(0);
            rep.check(worst <= m, setup, || format!("|<chi, beta>| = {worst} > M for O = {}, j = {j}", fmt_set(&o)));
            for c in &orbits {
                let vals: Vec<i64> = c.iter().map(|&b| pair(b)).collect();
                if vals.iter().all(|&v| v == 0) || vals.iter().any(|&v| v.abs() >= q) {
                    rep.skipped += 1;
                    continue;
                }
                for &gamma in c {
                    let mut sum = BigInt::zero();
                    let mut qi = BigInt::one();
                    for i in 0..n0 {
                        sum += &qi * f(back[i + j][gamma]);
                        qi *= &qb;
                    }
                    rep.check(!sum.is_zero(), setup, || {
                        format!("O = {}, j = {j}, gamma = root {gamma}: sum vanishes", fmt_set(&o))
                    });
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, diagram_automorphisms, standard_twist, DiagramAut, Family};
    use crate::twisted::{construct_i, TwistedSetup};
    use std::sync::Arc;

    fn setup(f: Family, n: usize, word: Vec<usize>, mu: Vec<i64>) -> TwistedSetup {
        let d = Arc::new(build_root_system(f, n).unwrap());
        let s = DiagramAut::identity(&d);
        TwistedSetup::new(d, s, word, mu).unwrap()
    }

    #[test]
    fn supports() {
        let d = Arc::new(build_root_system(Family::A, 3).unwrap());
        let flip = DiagramAut::from_nodes(&d, standard_twist(Family::A, 3, 2).unwrap()).unwrap();
        let st = TwistedSetup::canonical(d, flip, vec![0; 3]).unwrap();
        assert!(verify_support_stable(&st).passed());
        assert!(verify_support_connected(&st).passed());
        let st = setup(Family::A, 1, vec![0], vec![5]);
        let r = verify_support_connected(&st);
        assert!(r.passed());
        assert_eq!(r.instances_checked, 1);
    }

    #[test]
    fn support_of_swapped_product() {
        let d = Arc::new(crate::rootsys::RootDatum::new("A1xA1".parse().unwrap()));
        let swap = DiagramAut::from_nodes(&d, vec![1, 0]).unwrap();
        let st = TwistedSetup::canonical(d, swap, vec![0, 0]).unwrap();
        for o in st.csigma_orbits() {
            assert_eq!(st.support(&o), BTreeSet::from([0, 1]));
        }
        assert!(verify_support_connected(&st).passed());
    }

    #[test]
    fn partial_small_groups() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::A, 3)] {
            let d = Arc::new(build_root_system(f, n).unwrap());
            let sys = CoxeterSystem::full(d.clone());
            for s in diagram_automorphisms(&d) {
                let r = verify_lemma_partial(&sys, s.root_perm(), "x").unwrap();
                assert!(r.passed(), "{:?}", r.failures);
                assert!(r.instances_checked > 0);
            }
        }
    }

    #[test]
    fn partial_trivial_case_counts() {
        // K1 = K2 = empty: c1 = c2 = 1 and tau(w) = w, so every w is an instance
        let d = Arc::new(build_root_system(Family::A, 2).unwrap());
        let sys = CoxeterSystem::full(d.clone());
        let r = verify_lemma_partial(&sys, DiagramAut::identity(&d).root_perm(), "A2").unwrap();
        assert!(r.instances_checked >= 6);
    }

    #[test]
    fn kernels_on_b2() {
        let st = setup(Family::B, 2, vec![0, 1], vec![1, 0]);
        let c = construct_i(&st).unwrap();
        let u = verify_unstable_kernel_all(&st, &c.fixed_point, &c.data).unwrap();
        assert!(u.passed(), "{:?}", u.failures);
        let n = verify_nonempty_kernel(&st, &c.fixed_point, &c.data).unwrap();
        assert!(n.passed(), "{:?}", n.failures);
        let p = verify_corollary_proper(&st, &c.fixed_point, &c.data).unwrap();
        assert!(p.passed(), "{:?}", p.failures);
    }

    #[test]
    fn kernels_on_a3() {
        let st = setup(Family::A, 3, vec![0, 2, 1], vec![0, 1, 0]);
        let c = construct_i(&st).unwrap();
        for i in 0..2 {
            let r = verify_unstable_kernel(&st, &c.fixed_point, &c.data, i).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn kernels_need_star() {
        let st = setup(Family::A, 3, vec![0, 1, 2], vec![0, 1, 0]);
        let c = construct_i(&st).unwrap();
        assert!(matches!(verify_nonempty_kernel(&st, &c.fixed_point, &c.data), Err(Error::Precondition(_))));
    }

    #[test]
    fn nonzero_a1() {
        let st = setup(Family::A, 1, vec![0], vec![0]);
        let r = verify_lemma_nonzero(&st, 2).unwrap();
        assert!(r.passed());
        assert!(r.instances_checked > 0);
        assert!(matches!(verify_lemma_nonzero(&st, 1), Err(Error::QTooSmall { .. })));
    }
}
