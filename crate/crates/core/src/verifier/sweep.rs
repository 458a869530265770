//! Sweep domains and the aggregated checks run over them.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::{check_condition_star, constant_m, find_star_coxeter, verify_lemma_ast, StarCertificate};
use crate::error::Error;
use crate::multiplicity::verify_counting;
use crate::rootsys::{diagram_automorphisms, standard_twist, CartanType, CoxeterSystem, DiagramAut, Family, RootDatum, SimpleType};
use crate::twisted::{
    case_table, construct_i, movable_words, subsequence_data, verify_theorem_coxeter, Construction, Move, Step, TwistedSetup,
};
use crate::verifier::lemmas::{
    verify_corollary_proper, verify_lemma_nonzero, verify_lemma_partial, verify_nonempty_kernel, verify_support_connected,
    verify_support_stable, verify_unstable_kernel_all,
};
use crate::verifier::report::LemmaReport;

/// A root datum with a diagram automorphism.
#[derive(Clone, Debug)]
pub struct Twist {
    pub datum: Arc<RootDatum>,
    pub sigma: DiagramAut,
    pub label: String,
}

impl Twist {
    pub fn new(family: Family, rank: usize, order: u64) -> Option<Twist> {
        if !family.admits_rank(rank) {
            return None;
        }
        let nodes = standard_twist(family, rank, order)?;
        if order > 1 && nodes.iter().enumerate().all(|(i, &j)| i == j) {
            return None;
        }
        let datum = Arc::new(RootDatum::new(CartanType::simple(family, rank).ok()?));
        let sigma = DiagramAut::from_nodes(&datum, nodes).ok()?;
        Some(Twist { datum, sigma, label: twist_label(family, rank, order) })
    }

    pub fn canonical_setup(&self, mu: Vec<i64>) -> Result<TwistedSetup, Error> {
        TwistedSetup::canonical(self.datum.clone(), self.sigma.clone(), mu)
    }
}

pub fn twist_label(family: Family, rank: usize, order: u64) -> String {
    if order > 1 {
        format!("{order}{}{rank}", family.letter())
    } else {
        format!("{}{rank}", family.letter())
    }
}

/// All irreducible types of rank `<= max_rank` with their standard twists.
pub fn irreducible_twists(max_rank: usize) -> Vec<Twist> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in 1..=max_rank {
            for order in 1..=3 {
                out.extend(Twist::new(family, rank, order));
            }
        }
    }
    out
}

fn irreducible_types(max_rank: usize) -> Vec<SimpleType> {
    Family::ALL
        .iter()
        .flat_map(|&f| (1..=max_rank).filter_map(move |r| SimpleType::new(f, r).ok()))
        .collect()
}

/// `X x X` for irreducible `X` of rank `<= max_component_rank`, with every
/// diagram automorphism exchanging the two factors.
pub fn swapped_products(max_component_rank: usize) -> Vec<Twist> {
    let mut out = Vec::new();
    for t in irreducible_types(max_component_rank) {
        let datum = Arc::new(RootDatum::new(CartanType::product(vec![t, t]).expect("nonempty")));
        let r = t.rank;
        for sigma in diagram_automorphisms(&datum) {
            if sigma.node(0) >= r {
                out.push(Twist { datum: datum.clone(), sigma, label: format!("{t}x{t}") });
            }
        }
    }
    out
}

/// Products of at least two irreducible factors with total rank
/// `<= max_rank`, each with all of its diagram automorphisms.
pub fn small_products(max_rank: usize) -> Vec<Twist> {
    let types = irreducible_types(max_rank);
    let mut products: Vec<Vec<SimpleType>> = Vec::new();
    fn extend(types: &[SimpleType], from: usize, left: usize, cur: &mut Vec<SimpleType>, out: &mut Vec<Vec<SimpleType>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        for (idx, t) in types.iter().enumerate().skip(from) {
            if t.rank <= left {
                cur.push(*t);
                extend(types, idx, left - t.rank, cur, out);
                cur.pop();
            }
        }
    }
    extend(&types, 0, max_rank, &mut Vec::new(), &mut products);
    let mut out = Vec::new();
    for comps in products {
        let label = comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("x");
        let datum = Arc::new(RootDatum::new(CartanType::product(comps).expect("nonempty")));
        for sigma in diagram_automorphisms(&datum) {
            out.push(Twist { datum: datum.clone(), sigma, label: label.clone() });
        }
    }
    out
}

/// Class representatives of `P / (1 - c sigma)P` with a listed sequence,
/// always including 0.
pub fn listed_representatives(twist: &Twist) -> Vec<Vec<i64>> {
    let mut reps = vec![vec![0; twist.datum.rank()]];
    if let Some(table) = case_table(&twist.datum, &twist.sigma) {
        reps.extend(table.entries.into_iter().map(|e| e.mu));
    }
    reps
}

/// A setup from the case list together with its construction.
#[derive(Clone, Debug)]
pub struct CaseInstance {
    pub label: String,
    pub setup: TwistedSetup,
    pub construction: Construction,
    pub star: Option<StarCertificate>,
}

/// Which Coxeter word to use when building case instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordChoice {
    Canonical,
    /// The word returned by the (*) search; types without one are dropped.
    Star,
}

/// Case instances for all twists of rank `<= max_rank`. Construction errors
/// are returned alongside.
pub fn case_instances(twists: &[Twist], choice: WordChoice) -> (Vec<CaseInstance>, Vec<(String, Error)>) {
    let results: Vec<Vec<Result<CaseInstance, (String, Error)>>> = twists
        .par_iter()
        .map(|tw| {
            let word = match choice {
                WordChoice::Canonical => crate::twisted::canonical_coxeter(&tw.sigma),
                WordChoice::Star => match find_star_coxeter(&tw.datum, &tw.sigma).found {
                    Some((w, _)) => w,
                    None => return vec![],
                },
            };
            listed_representatives(tw)
                .into_iter()
                .map(|mu| {
                    let tag = format!("{} mu={:?}", tw.label, mu);
                    let setup = TwistedSetup::new(tw.datum.clone(), tw.sigma.clone(), word.clone(), mu)
                        .map_err(|e| (tag.clone(), e))?;
                    let construction = construct_i(&setup).map_err(|e| (tag.clone(), e))?;
                    let star = check_condition_star(&tw.datum, &tw.sigma, &word);
                    Ok(CaseInstance { label: tw.label.clone(), setup, construction, star })
                })
                .collect()
        })
        .collect();
    let mut ok = Vec::new();
    let mut errs = Vec::new();
    for r in results.into_iter().flatten() {
        match r {
            Ok(c) => ok.push(c),
            Err(e) => errs.push(e),
        }
    }
    (ok, errs)
}

fn merge_all(id: &str, reports: impl IntoIterator<Item = LemmaReport>) -> LemmaReport {
    let mut out = LemmaReport::new(id);
    for r in reports {
        out.merge(r);
    }
    out
}

fn error_report(id: &str, errs: Vec<(String, Error)>) -> LemmaReport {
    let mut rep = LemmaReport::new(id);
    for (tag, e) in errs {
        rep.check(false, tag, || e.to_string());
    }
    rep
}

/// Reference values of `M` for connected diagrams.
pub fn expected_m(family: Family, rank: usize, order: u64) -> Option<i64> {
    Some(match (family, order) {
        (Family::A, 1) => 1,
        (Family::B | Family::C | Family::D, 1) | (Family::A | Family::D, 2) => 2,
        (Family::G, 1) | (Family::D, 3) => 3,
        (Family::E, 1) if rank == 6 => 3,
        (Family::F, 1) | (Family::E, 2) => 4,
        (Family::E, 1) if rank == 7 => 4,
        (Family::E, 1) if rank == 8 => 6,
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MRow {
    pub label: String,
    pub computed: i64,
    pub expected: Option<i64>,
}

impl MRow {
    pub fn matches(&self) -> bool {
        self.expected == Some(self.computed)
    }
}

/// `M` for every twist of rank `<= max_rank`.
pub fn m_table(max_rank: usize) -> Vec<MRow> {
    let mut rows = Vec::new();
    for family in Family::ALL {
        for rank in 1..=max_rank {
            for order in 1..=3 {
                if let Some(tw) = Twist::new(family, rank, order) {
                    rows.push(MRow {
                        label: tw.label.clone(),
                        computed: constant_m(&tw.datum, &tw.sigma),
                        expected: expected_m(family, rank, order),
                    });
                }
            }
        }
    }
    rows
}

/// The listed constructions on canonical words of rank `<= max_rank`.
pub fn sweep_theorem_coxeter(max_rank: usize) -> LemmaReport {
    sweep_theorem_coxeter_with(max_rank, false)
}

/// As [`sweep_theorem_coxeter`]; with `corrupt` set, every nonempty `I` is
/// replaced by the empty sequence before checking (a negative control).
pub fn sweep_theorem_coxeter_with(max_rank: usize, corrupt: bool) -> LemmaReport {
    let twists: Vec<Twist> =
        irreducible_twists(max_rank).into_iter().filter(|t| case_table(&t.datum, &t.sigma).is_some_and(|c| c.case.is_some())).collect();
    let (mut cases, errs) = case_instances(&twists, WordChoice::Canonical);
    let mut rep = error_report("theorem_coxeter", errs);
    if corrupt {
        for c in cases.iter_mut().filter(|c| !c.construction.data.positions.is_empty()) {
            let bad = subsequence_data(&c.setup, &[]).expect("the empty sequence is valid");
            c.construction.verdict = verify_theorem_coxeter(&c.setup, &c.construction.fixed_point, &bad);
            c.construction.data = bad;
        }
    }
    for c in &cases {
        let v = &c.construction.verdict;
        rep.check(v.passed(), &c.setup, || format!("I = {:?}: {:?}", c.construction.data.positions_1based(), v));
        if c.construction.flagged {
            rep.note(format!(
                "{} mu={:?}: I = {:?} via {}",
                c.label,
                c.setup.mu(),
                c.construction.data.positions_1based(),
                c.construction.reading
            ));
        }
        for (name, verdict) in v.all() {
            if let crate::twisted::Verdict::Vacuous { reason } = verdict {
                rep.note(format!("{} mu={:?}: property {name} vacuous ({reason})", c.label, c.setup.mu()));
            }
        }
    }
    rep
}

/// Every move reachable from the listed setups of rank `<= max_rank`,
/// modulo commutations, with `I` transported and re-verified.
pub fn sweep_transport(max_rank: usize) -> LemmaReport {
    let twists: Vec<Twist> = irreducible_twists(max_rank).into_iter().filter(|t| t.datum.rank() >= 1).collect();
    let (cases, errs) = case_instances(&twists, WordChoice::Canonical);
    let mut rep = error_report("transport", errs);
    let reports: Vec<LemmaReport> = cases.par_iter().map(transport_from).collect();
    for r in reports {
        rep.merge(r);
    }
    rep
}

fn transport_from(case: &CaseInstance) -> LemmaReport {
    let mut rep = LemmaReport::new("transport");
    let datum = case.setup.datum();
    let sigma = case.setup.sigma();
    let start = (case.setup.clone(), case.construction.data.positions.clone());
    let mut seen = HashSet::from([case.setup.c().clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((setup, pos)) = queue.pop_front() {
        for mv in [Move::First, Move::Last] {
            for word in movable_words(datum, setup.c_word(), mv) {
                let step = Step { word: word.clone(), mv };
                let new_pos = step.transport(setup.c_word(), &pos);
                let mu = {
                    let node = step.root(sigma);
                    let mut m = setup.mu().to_vec();
                    let p = m[node];
                    for (j, o) in m.iter_mut().enumerate() {
                        *o -= p * datum.cartan()[(j, node)];
                    }
                    m
                };
                let next = match TwistedSetup::new(datum.clone(), sigma.clone(), step.result(sigma), mu) {
                    Ok(s) => s,
                    Err(e) => {
                        rep.check(false, &setup, || e.to_string());
                        continue;
                    }
                };
                let ok = crate::twisted::fixed_point_e(&next)
                    .and_then(|fp| subsequence_data(&next, &new_pos).map(|sd| verify_theorem_coxeter(&next, &fp, &sd)));
                match ok {
                    Ok(v) => rep.check(v.passed(), &next, || format!("I' = {:?}: {:?}", new_pos, v)),
                    Err(e) => rep.check(false, &next, || e.to_string()),
                }
                if seen.insert(next.c().clone()) {
                    queue.push_back((next, new_pos));
                }
            }
        }
    }
    rep
}

/// For connected types of rank `<= max_rank` with `sigma = 1` and even
/// Coxeter number: Coxeter words (distinct elements) failing (*).
pub fn sweep_star_all_coxeter(max_rank: usize) -> LemmaReport {
    let mut rep = LemmaReport::new("star_every_coxeter");
    for tw in irreducible_twists(max_rank) {
        if !tw.sigma.is_identity() || tw.datum.components()[0].coxeter_number() % 2 != 0 {
            continue;
        }
        let letters: Vec<usize> = (0..tw.datum.rank()).collect();
        let mut seen = HashSet::new();
        for word in crate::conditions::permutations(&letters) {
            if !seen.insert(tw.datum.word_element(&word)) {
                continue;
            }
            let ok = check_condition_star(&tw.datum, &tw.sigma, &word).is_some();
            rep.check(ok, &tw.label, || {
                format!("c = {} fails (*)", word.iter().map(|i| format!("s{}", i + 1)).collect::<String>())
            });
        }
    }
    rep
}

/// For connected types of rank `<= max_rank`: some twisted Coxeter element
/// satisfies (*).
pub fn sweep_star_existence(max_rank: usize) -> LemmaReport {
    let mut rep = LemmaReport::new("star_existence");
    for tw in irreducible_twists(max_rank) {
        let search = find_star_coxeter(&tw.datum, &tw.sigma);
        rep.check(search.found.is_some(), &tw.label, || {
            format!("none of {} twisted Coxeter elements satisfies (*)", search.elements_checked)
        });
    }
    rep
}

/// The consequences of (*) in `W_e` for every listed setup on the (*)
/// word, rank `<= max_rank`.
pub fn sweep_lemma_ast(max_rank: usize) -> LemmaReport {
    let (cases, errs) = case_instances(&irreducible_twists(max_rank), WordChoice::Star);
    let mut rep = error_report("lemma_ast", errs);
    for c in &cases {
        match verify_lemma_ast(&c.setup, &c.construction.fixed_point, &c.construction.data) {
            Ok(a) => rep.check(a.passed(), &c.setup, || format!("{a:?}")),
            Err(e) => rep.check(false, &c.setup, || e.to_string()),
        }
    }
    for tw in irreducible_twists(max_rank) {
        if find_star_coxeter(&tw.datum, &tw.sigma).found.is_none() {
            rep.note(format!("{}: no sigma-Coxeter element satisfies (*)", tw.label));
        }
    }
    rep
}

/// Support lemmas over canonical setups of connected rank `<= max_rank`
/// and swapped products of components of rank `<= product_rank`, with
/// every ordering of the Coxeter word for the products.
pub fn sweep_supports(max_rank: usize, product_rank: usize) -> (LemmaReport, LemmaReport) {
    let mut setups: Vec<TwistedSetup> =
        irreducible_twists(max_rank).iter().filter_map(|t| t.canonical_setup(vec![0; t.datum.rank()]).ok()).collect();
    for tw in swapped_products(product_rank) {
        let reps = crate::twisted::canonical_coxeter(&tw.sigma);
        let mut seen = HashSet::new();
        for word in crate::conditions::permutations(&reps) {
            if seen.insert(tw.datum.word_element(&word)) {
                if let Ok(s) = TwistedSetup::new(tw.datum.clone(), tw.sigma.clone(), word, vec![0; tw.datum.rank()]) {
                    setups.push(s);
                }
            }
        }
    }
    let pairs: Vec<(LemmaReport, LemmaReport)> =
        setups.par_iter().map(|s| (verify_support_stable(s), verify_support_connected(s))).collect();
    let (a, b): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    (merge_all("support_stable", a), merge_all("support_connected", b))
}

/// Partial-conjugation lemma over: connected and reducible diagrams of
/// rank `<= max_rank` with every diagram automorphism, and the pairs
/// `(W_e, sigma_I)` of rank `<= max_rank` arising from listed setups of
/// rank `<= setup_rank`.
pub fn sweep_partial(max_rank: usize, setup_rank: usize) -> LemmaReport {
    let mut jobs: Vec<(CoxeterSystem, crate::rootsys::Perm, String)> = Vec::new();
    for tw in irreducible_twists(max_rank).into_iter().chain(small_products(max_rank)) {
        let sys = CoxeterSystem::full(tw.datum.clone());
        for sigma in diagram_automorphisms(&tw.datum) {
            jobs.push((sys.clone(), sigma.root_perm().clone(), format!("{} sigma={:?}", tw.label, sigma.nodes())));
        }
    }
    let (cases, errs) = case_instances(&irreducible_twists(setup_rank), WordChoice::Canonical);
    for c in cases {
        let fp = &c.construction.fixed_point;
        if fp.w_e.rank() <= max_rank {
            let tau = c.construction.data.sigma_i.root_perm(c.setup.sigma());
            jobs.push((fp.w_e.clone(), tau, format!("W_e of {}", c.setup)));
        }
    }
    let reports: Vec<LemmaReport> = jobs
        .par_iter()
        .map(|(sys, tau, label)| match verify_lemma_partial(sys, tau, label) {
            Ok(r) => r,
            Err(e) => error_report("lemma_partial", vec![(label.clone(), e)]),
        })
        .collect();
    let mut rep = error_report("lemma_partial", errs);
    for r in reports {
        rep.merge(r);
    }
    rep
}

type Checker = fn(&CaseInstance) -> Result<LemmaReport, Error>;

fn sweep_star_cases(id: &str, max_rank: usize, check: Checker) -> LemmaReport {
    let (cases, errs) = case_instances(&irreducible_twists(max_rank), WordChoice::Star);
    let reports: Vec<LemmaReport> = cases
        .par_iter()
        .map(|c| match check(c) {
            Ok(r) => r,
            Err(e) => error_report(id, vec![(c.setup.to_string(), e)]),
        })
        .collect();
    let mut rep = error_report(id, errs);
    for r in reports {
        rep.merge(r);
    }
    rep
}

/// Unstable-kernel lemma over listed setups on the (*) word.
pub fn sweep_unstable(max_rank: usize) -> LemmaReport {
    sweep_star_cases("unstable_kernel", max_rank, |c| {
        verify_unstable_kernel_all(&c.setup, &c.construction.fixed_point, &c.construction.data)
    })
}

/// Nonempty-kernel lemma over listed setups on the (*) word.
pub fn sweep_nonempty(max_rank: usize) -> LemmaReport {
    sweep_star_cases("nonempty_kernel", max_rank, |c| {
        verify_nonempty_kernel(&c.setup, &c.construction.fixed_point, &c.construction.data)
    })
}

/// Proper-subset corollary over listed setups on the (*) word.
pub fn sweep_proper(max_rank: usize) -> LemmaReport {
    sweep_star_cases("corollary_proper", max_rank, |c| {
        verify_corollary_proper(&c.setup, &c.construction.fixed_point, &c.construction.data)
    })
}

/// Non-vanishing lemma at `q = M + 1` (or the given `q` when larger than
/// `M`) over all twists of rank `<= max_rank`, on the canonical word and
/// on the (*) word when it differs.
pub fn sweep_nonzero(max_rank: usize, q: Option<i64>) -> LemmaReport {
    let twists = irreducible_twists(max_rank);
    let reports: Vec<LemmaReport> = twists
        .par_iter()
        .map(|tw| {
            let m = constant_m(&tw.datum, &tw.sigma);
            let q = q.filter(|&q| q > m).unwrap_or(m + 1);
            let mut words = vec![crate::twisted::canonical_coxeter(&tw.sigma)];
            if let Some((w, _)) = find_star_coxeter(&tw.datum, &tw.sigma).found {
                if tw.datum.word_element(&w) != tw.datum.word_element(&words[0]) {
                    words.push(w);
                }
            }
            let mut rep = LemmaReport::new("lemma_nonzero");
            for w in words {
                let setup = TwistedSetup::new(tw.datum.clone(), tw.sigma.clone(), w, vec![0; tw.datum.rank()]);
                match setup.and_then(|s| verify_lemma_nonzero(&s, q)) {
                    Ok(r) => rep.merge(r),
                    Err(e) => rep.merge(error_report("lemma_nonzero", vec![(tw.label.clone(), e)])),
                }
            }
            rep
        })
        .collect();
    merge_all("lemma_nonzero", reports)
}

/// Counting properties over the listed setups of rank `<= max_rank` at
/// each `q`. Groups of order above `max_order` are counted as truncated.
pub fn sweep_multiplicity(max_rank: usize, qs: &[i64], max_order: u128) -> LemmaReport {
    let (cases, errs) = case_instances(&irreducible_twists(max_rank), WordChoice::Canonical);
    let jobs: Vec<(&CaseInstance, i64)> = cases.iter().flat_map(|c| qs.iter().map(move |&q| (c, q))).collect();
    let reports: Vec<LemmaReport> = jobs
        .par_iter()
        .map(|&(c, q)| match verify_counting(&c.setup, &c.construction.fixed_point, q, max_order) {
            Ok(r) => r,
            Err(e) => error_report("multiplicity_counting", vec![(format!("{} q={q}", c.setup), e)]),
        })
        .collect();
    let mut rep = error_report("multiplicity_counting", errs);
    for r in reports {
        rep.merge(r);
    }
    rep
}
