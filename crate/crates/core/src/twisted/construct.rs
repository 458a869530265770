//! Constructing `I = I_{mu,c}`: reduction of `mu` modulo `(1 - c sigma)P`,
//! the conjugation moves that change `c`, and the explicit sequences for the
//! canonical Coxeter word of each irreducible type.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::Error;
use crate::rootsys::{DiagramAut, Family, RootDatum, WeylElement};
use crate::smith::Cokernel;
use crate::twisted::fixed_point::{fixed_point_e, FixedPointData};
use crate::twisted::sequence::{search_sequences, subsequence_data, verify_theorem_coxeter, CoxeterVerdict, SubsequenceData};
use crate::twisted::setup::TwistedSetup;

/// The two conjugation moves `c' = s_alpha c sigma(s_alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    /// `alpha = alpha_1`: `(a_1, ..., a_r) -> (a_2, ..., a_r, sigma(a_1))`.
    First,
    /// `alpha = sigma^-1(alpha_r)`: `(a_1, ..., a_r) -> (sigma^-1(a_r), a_1, ..., a_{r-1})`.
    Last,
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::First => Move::Last,
            Move::Last => Move::First,
        }
    }

    /// The simple root `alpha` (node) of the move.
    pub fn root(self, sigma: &DiagramAut, word: &[usize]) -> usize {
        match self {
            Move::First => word[0],
            Move::Last => sigma.inverse_node(word[word.len() - 1]),
        }
    }

    pub fn apply_word(self, sigma: &DiagramAut, word: &[usize]) -> Vec<usize> {
        let r = word.len();
        match self {
            Move::First => {
                let mut w = word[1..].to_vec();
                w.push(sigma.node(word[0]));
                w
            }
            Move::Last => {
                let mut w = vec![sigma.inverse_node(word[r - 1])];
                w.extend_from_slice(&word[..r - 1]);
                w
            }
        }
    }

    /// Transport of `I` (0-based positions) along the move.
    pub fn apply_positions(self, r: usize, positions: &[usize]) -> Vec<usize> {
        match self {
            Move::Last => {
                if positions.last() == Some(&(r - 1)) {
                    let mut out = vec![0];
                    out.extend(positions[..positions.len() - 1].iter().map(|i| i + 1));
                    out
                } else {
                    positions.iter().map(|i| i + 1).collect()
                }
            }
            Move::First => {
                if positions.first() == Some(&0) {
                    let mut out: Vec<usize> = positions[1..].iter().map(|i| i - 1).collect();
                    out.push(r - 1);
                    out
                } else {
                    positions.iter().map(|i| i - 1).collect()
                }
            }
        }
    }
}

/// `s_alpha(mu)` in fundamental-coweight coordinates.
fn reflect_coweight(datum: &RootDatum, node: usize, mu: &[i64]) -> Vec<i64> {
    let mut out = mu.to_vec();
    // s(x) = x - <alpha, x> alpha^vee, and alpha_i^vee = sum_j C[j][i] omega_j
    let p = mu[node];
    for (j, o) in out.iter_mut().enumerate() {
        *o -= p * datum.cartan()[(j, node)];
    }
    out
}

/// Applies a move to the setup and transports `I`. Returns the new setup and
/// the new positions.
pub fn conjugate_reduction(setup: &TwistedSetup, mv: Move, positions: &[usize]) -> Result<(TwistedSetup, Vec<usize>), Error> {
    let sigma = setup.sigma();
    let node = mv.root(sigma, setup.c_word());
    let word = mv.apply_word(sigma, setup.c_word());
    let mu = reflect_coweight(setup.datum(), node, setup.mu());
    let next = TwistedSetup::new(setup.datum().clone(), sigma.clone(), word, mu)?;
    debug_assert_eq!(
        next.c(),
        &setup.datum().simple_reflection(node).mul(setup.c()).mul(setup.datum().simple_reflection(sigma.node(node))),
    );
    Ok((next, mv.apply_positions(setup.word_len(), positions)))
}

/// Same as [`conjugate_reduction`], with the move named by its root
/// (0-based node); anything other than `alpha_1` or `sigma^-1(alpha_r)` is
/// rejected.
pub fn conjugate_reduction_by_root(setup: &TwistedSetup, node: usize, positions: &[usize]) -> Result<(TwistedSetup, Vec<usize>), Error> {
    let sigma = setup.sigma();
    for mv in [Move::First, Move::Last] {
        if mv.root(sigma, setup.c_word()) == node {
            return conjugate_reduction(setup, mv, positions);
        }
    }
    Err(Error::InvalidReductionRoot(format!("alpha_{} is neither alpha_1 nor sigma^-1(alpha_r)", node + 1)))
}

/// One move of a path: the word is first rewritten by commutations into
/// `word`, then `mv` is applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub word: Vec<usize>,
    pub mv: Move,
}

impl Step {
    pub fn root(&self, sigma: &DiagramAut) -> usize {
        self.mv.root(sigma, &self.word)
    }

    pub fn result(&self, sigma: &DiagramAut) -> Vec<usize> {
        self.mv.apply_word(sigma, &self.word)
    }

    /// Transports positions given in `from` (same element as `self.word`).
    pub fn transport(&self, from: &[usize], positions: &[usize]) -> Vec<usize> {
        let pos = rebase_positions(from, &self.word, positions);
        self.mv.apply_positions(self.word.len(), &pos)
    }
}

/// Words equal to `word` up to commutations that start (`Move::First`) or
/// end (`Move::Last`) with each possible letter.
pub fn movable_words(datum: &RootDatum, word: &[usize], mv: Move) -> Vec<Vec<usize>> {
    let commute = |a: usize, b: usize| datum.cartan()[(a, b)] == 0;
    let r = word.len();
    let mut out = Vec::new();
    for p in 0..r {
        let letter = word[p];
        let mut w = word.to_vec();
        match mv {
            Move::First => {
                if !word[..p].iter().all(|&x| commute(x, letter)) {
                    continue;
                }
                w.remove(p);
                w.insert(0, letter);
            }
            Move::Last => {
                if !word[p + 1..].iter().all(|&x| commute(x, letter)) {
                    continue;
                }
                w.remove(p);
                w.push(letter);
            }
        }
        out.push(w);
    }
    out
}

/// A shortest path of moves (modulo commutations) from the word `start` to
/// a word whose product is `target`. Returns the steps and the final word.
pub fn reach_coxeter(
    datum: &RootDatum,
    sigma: &DiagramAut,
    start: &[usize],
    target: &WeylElement,
) -> Result<(Vec<Step>, Vec<usize>), Error> {
    let start_elt = datum.word_element(start);
    let mut parent: HashMap<WeylElement, (WeylElement, Step)> = HashMap::new();
    let mut queue = VecDeque::from([(start.to_vec(), start_elt.clone())]);
    let mut seen = HashSet::from([start_elt.clone()]);
    while let Some((word, w)) = queue.pop_front() {
        if &w == target {
            let mut path = Vec::new();
            let mut cur = w;
            while cur != start_elt {
                let (prev, step) = parent.remove(&cur).expect("path");
                path.push(step);
                cur = prev;
            }
            path.reverse();
            return Ok((path, word));
        }
        for mv in [Move::First, Move::Last] {
            for u in movable_words(datum, &word, mv) {
                let step = Step { word: u, mv };
                let next = step.result(sigma);
                let e = datum.word_element(&next);
                if seen.insert(e.clone()) {
                    parent.insert(e.clone(), (w.clone(), step));
                    queue.push_back((next, e));
                }
            }
        }
    }
    let show = |w: &[usize]| w.iter().map(|i| format!("s{}", i + 1)).collect::<String>();
    Err(Error::UnreachableCoxeter {
        start: show(start),
        target: show(&target.reduced_word(datum)),
        explored: seen.len(),
    })
}

/// Follows a path, transporting `positions` given in the word `start`.
/// Returns the final word and positions.
pub fn transport_along(sigma: &DiagramAut, start: &[usize], path: &[Step], positions: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut word = start.to_vec();
    let mut pos = positions.to_vec();
    for step in path {
        pos = step.transport(&word, &pos);
        word = step.result(sigma);
    }
    (word, pos)
}

/// Rewrites positions of `I` in `from` (a word for the same element as `to`)
/// as positions in `to`. Both words have distinct letters, so they differ by
/// commutations, which leave the triple unchanged.
pub fn rebase_positions(from: &[usize], to: &[usize], positions: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = positions
        .iter()
        .map(|&p| to.iter().position(|&x| x == from[p]).expect("same letters"))
        .collect();
    out.sort_unstable();
    out
}

/// One reading of a case-table sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub reading: String,
    /// 0-based positions in the canonical word.
    pub positions: Vec<usize>,
}

/// How the sequence for one class representative is obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rule {
    /// Candidate sequences, tried in order.
    Direct { candidates: Vec<Candidate> },
    /// Obtained from the entry for `from` by the diagram symmetry `tau`
    /// (0-based node images).
    Symmetry { from: Vec<i64>, tau: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseEntry {
    /// Class representative in fundamental-coweight coordinates.
    pub mu: Vec<i64>,
    pub rule: Rule,
}

/// The case data for one irreducible twisted type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTable {
    /// Case number, or `None` for types without a case-table entry.
    pub case: Option<u8>,
    pub label: String,
    /// Canonical word (0-based nodes).
    pub c_word: Vec<usize>,
    /// Nonzero representatives; 0 is always included implicitly with `I = ()`.
    pub entries: Vec<CaseEntry>,
    pub notes: Vec<String>,
}

fn omega(rank: usize, node1: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[node1 - 1] = 1;
    v
}

fn direct(reading: &str, pos1: &[usize]) -> Candidate {
    let mut positions: Vec<usize> = pos1.iter().map(|p| p - 1).collect();
    positions.sort_unstable();
    positions.dedup();
    Candidate { reading: reading.into(), positions }
}

/// Positions (1-based) of the given nodes (1-based) in a word (0-based nodes).
fn node_positions(word: &[usize], nodes1: &[usize]) -> Vec<usize> {
    nodes1.iter().map(|&n| word.iter().position(|&x| x == n - 1).expect("node in word") + 1).collect()
}

/// The twist order and family of an irreducible setup.
fn classify(datum: &RootDatum, sigma: &DiagramAut) -> Option<(Family, usize, u64)> {
    let comps = datum.components();
    if comps.len() != 1 {
        return None;
    }
    Some((comps[0].family, comps[0].rank, sigma.order()))
}

pub fn case_table(datum: &RootDatum, sigma: &DiagramAut) -> Option<CaseTable> {
    let (family, r, order) = classify(datum, sigma)?;
    let word: Vec<usize> = match (family, order) {
        (Family::E, 1) if r == 6 => vec![0, 2, 3, 1, 4, 5],
        (Family::E, 1) if r == 7 => vec![6, 5, 4, 3, 1, 2, 0],
        _ => crate::twisted::setup::canonical_coxeter(sigma),
    };
    let mut notes = Vec::new();
    let (case, label, entries) = match (family, order) {
        (Family::A, 1) => {
            let n = r + 1;
            let entries = (1..n)
                .map(|k| {
                    let m = num_integer::gcd(k, n);
                    let excluded: Vec<usize> = (1..m).map(|t| t * n / m).collect();
                    let pos: Vec<usize> = (1..=r).filter(|p| !excluded.contains(p)).collect();
                    CaseEntry {
                        mu: omega(r, k),
                        rule: Rule::Direct { candidates: vec![direct(&format!("complement of multiples of n/m, m = {m}"), &pos)] },
                    }
                })
                .collect();
            (Some(1), format!("A{r}"), entries)
        }
        (Family::A, 2) => {
            let n = r + 1;
            let entries = if n % 2 == 0 {
                vec![CaseEntry {
                    mu: omega(r, 1),
                    rule: Rule::Direct { candidates: vec![direct("(n/2)", &[n / 2])] },
                }]
            } else {
                vec![]
            };
            (if n % 2 == 0 { Some(2) } else { None }, format!("2A{r}"), entries)
        }
        (Family::B, 1) => (
            Some(3),
            format!("B{r}"),
            vec![CaseEntry { mu: omega(r, 1), rule: Rule::Direct { candidates: vec![direct("(n)", &[r])] } }],
        ),
        (Family::C, 1) => {
            let last = if r % 2 == 1 { r } else { r - 1 };
            let pos: Vec<usize> = (1..=last).step_by(2).collect();
            (
                Some(4),
                format!("C{r}"),
                vec![CaseEntry { mu: omega(r, r), rule: Rule::Direct { candidates: vec![direct("(1, 3, ...)", &pos)] } }],
            )
        }
        (Family::D, 1) => {
            let n = r;
            let odd_to = |hi: usize| (1..=hi).step_by(2).collect::<Vec<usize>>();
            let second = if n % 2 == 0 {
                if n % 4 == 0 {
                    let mut pos = odd_to(n - 3);
                    pos.push(4);
                    let mut alt = odd_to(n - 3);
                    alt.push(n);
                    notes.push("the sequence (1, 3, ..., n-3, 4) is tried as a set, then with 4 replaced by n".into());
                    vec![direct("sorted {1, 3, ..., n-3, 4}", &pos), direct("(1, 3, ..., n-3, n)", &alt)]
                } else {
                    let mut pos = odd_to(n - 3);
                    pos.push(n - 1);
                    vec![direct("(1, 3, ..., n-3, n-1)", &pos)]
                }
            } else {
                let mut pos = odd_to(n - 2);
                pos.push(n);
                let mut alt = odd_to(n - 2);
                alt.extend([n - 1, n]);
                notes.push("for odd n, (1, 3, ..., n-2, n) is tried first, then (1, 3, ..., n-2, n-1, n)".into());
                vec![direct("(1, 3, ..., n-2, n)", &pos), direct("(1, 3, ..., n-2, n-1, n)", &alt)]
            };
            let mut tau: Vec<usize> = (0..n).collect();
            tau.swap(n - 2, n - 1);
            let entries = vec![
                CaseEntry { mu: omega(n, 1), rule: Rule::Direct { candidates: vec![direct("(n-1, n)", &[n - 1, n])] } },
                CaseEntry { mu: omega(n, n - 1), rule: Rule::Direct { candidates: second } },
                CaseEntry { mu: omega(n, n), rule: Rule::Symmetry { from: omega(n, n - 1), tau } },
            ];
            (Some(5), format!("D{n}"), entries)
        }
        (Family::E, 1) if r == 6 => {
            notes.push("(1, 3, 5, 6) is read first as node labels, then as word positions".into());
            let entries = vec![
                CaseEntry {
                    mu: omega(6, 1),
                    rule: Rule::Direct {
                        candidates: vec![
                            direct("nodes {1, 3, 5, 6}", &node_positions(&word, &[1, 3, 5, 6])),
                            direct("positions (1, 3, 5, 6)", &[1, 3, 5, 6]),
                        ],
                    },
                },
                CaseEntry { mu: omega(6, 6), rule: Rule::Symmetry { from: omega(6, 1), tau: vec![5, 1, 4, 3, 2, 0] } },
            ];
            (Some(6), "E6".to_string(), entries)
        }
        (Family::E, 1) if r == 7 => {
            notes.push("the case with s7 and omega_7 is built on E7".into());
            notes.push("(7, 5, 2) is read first as node labels, then as sorted word positions".into());
            let entries = vec![CaseEntry {
                mu: omega(7, 7),
                rule: Rule::Direct {
                    candidates: vec![
                        direct("nodes {7, 5, 2}", &node_positions(&word, &[7, 5, 2])),
                        direct("positions {2, 5, 7}", &[2, 5, 7]),
                    ],
                },
            }];
            (Some(7), "E7".to_string(), entries)
        }
        _ => (None, format!("{}{}{}", if order > 1 { order.to_string() } else { String::new() }, family.letter(), r), vec![]),
    };
    Some(CaseTable { case, label, c_word: word, entries, notes })
}

/// Result of [`construct_i`].
#[derive(Clone, Debug)]
pub struct Construction {
    pub case: Option<u8>,
    pub label: String,
    /// Representative of `mu` modulo `(1 - c_0 sigma)P` for the canonical
    /// word `c_0`, after pulling `mu` back along the moves.
    pub representative: Vec<i64>,
    pub moves: Vec<Step>,
    /// Which candidate sequence was used.
    pub reading: String,
    pub notes: Vec<String>,
    /// True when the result needed a reading other than the first or a
    /// brute-force search.
    pub flagged: bool,
    pub fixed_point: FixedPointData,
    pub data: SubsequenceData,
    pub verdict: CoxeterVerdict,
}

fn symmetric_sigma_ok(sigma: &DiagramAut, tau: &[usize]) -> bool {
    (0..tau.len()).all(|i| tau[sigma.node(i)] == sigma.node(tau[i]))
}

/// Positions for the canonical word of `table` and class representative `rep`.
fn positions_for(
    datum: &Arc<RootDatum>,
    sigma: &DiagramAut,
    table: &CaseTable,
    rep: &[i64],
) -> Result<(Vec<usize>, String, bool), Error> {
    let entry = table
        .entries
        .iter()
        .find(|e| e.mu == rep)
        .ok_or_else(|| Error::Internal(format!("no case entry for {rep:?}")))?;
    let setup = TwistedSetup::new(datum.clone(), sigma.clone(), table.c_word.clone(), rep.to_vec())?;
    let fp = fixed_point_e(&setup)?;
    match &entry.rule {
        Rule::Direct { candidates } => {
            for (idx, cand) in candidates.iter().enumerate() {
                let sd = subsequence_data(&setup, &cand.positions)?;
                if verify_theorem_coxeter(&setup, &fp, &sd).passed() {
                    return Ok((cand.positions.clone(), cand.reading.clone(), idx > 0));
                }
            }
            match search_sequences(&setup, &fp, false).into_iter().next() {
                Some(p) => Ok((p, "found by exhaustive search; listed sequences fail".into(), true)),
                None => Ok((candidates[0].positions.clone(), candidates[0].reading.clone(), true)),
            }
        }
        Rule::Symmetry { from, tau } => {
            if !symmetric_sigma_ok(sigma, tau) {
                return Err(Error::Internal("symmetry does not commute with sigma".into()));
            }
            let (base, reading, flagged) = positions_for(datum, sigma, table, from)?;
            // (tau mu, tau c tau^-1, I) is valid; move it back to the canonical word.
            let tau_word: Vec<usize> = table.c_word.iter().map(|&i| tau[i]).collect();
            let target = datum.word_element(&table.c_word);
            let (path, _) = reach_coxeter(datum, sigma, &tau_word, &target)?;
            let (word, pos) = transport_along(sigma, &tau_word, &path, &base);
            Ok((rebase_positions(&word, &table.c_word, &pos), format!("by symmetry from {reading}"), flagged))
        }
    }
}

/// Constructs `I_{mu,c}` for the setup and verifies it.
pub fn construct_i(setup: &TwistedSetup) -> Result<Construction, Error> {
    let datum = setup.datum();
    let sigma = setup.sigma();
    let quotient = Cokernel::new(&setup.one_minus_csigma()).ok_or(Error::SingularFixedPointSystem)?;
    let fp = fixed_point_e(setup)?;

    if quotient.class_of(setup.mu()).iter().all(|&x| x == 0) {
        let sd = subsequence_data(setup, &[])?;
        let verdict = verify_theorem_coxeter(setup, &fp, &sd);
        let table = case_table(datum, sigma);
        return Ok(Construction {
            case: table.as_ref().and_then(|t| t.case),
            label: table.map(|t| t.label).unwrap_or_else(|| datum.type_label()),
            representative: vec![0; datum.rank()],
            moves: vec![],
            reading: "mu = 0".into(),
            notes: vec![],
            flagged: false,
            fixed_point: fp,
            data: sd,
            verdict,
        });
    }

    let table = case_table(datum, sigma)
        .ok_or_else(|| Error::UnsupportedCase(format!("{} with nonzero mu is reducible", datum.type_label())))?;
    if table.entries.is_empty() {
        return Err(Error::UnsupportedCase(format!(
            "type {} has a nontrivial quotient P/(1 - c sigma)P of order {} but no listed case",
            table.label,
            quotient.order()
        )));
    }

    // Walk from the canonical word to the setup's element, pulling mu back.
    let (path, reached) = reach_coxeter(datum, sigma, &table.c_word, setup.c())?;
    let mut mu0 = setup.mu().to_vec();
    for step in path.iter().rev() {
        mu0 = reflect_coweight(datum, step.root(sigma), &mu0);
    }

    let canonical = TwistedSetup::new(datum.clone(), sigma.clone(), table.c_word.clone(), mu0.clone())?;
    let q0 = Cokernel::new(&canonical.one_minus_csigma()).ok_or(Error::SingularFixedPointSystem)?;
    let class = q0.class_of(&mu0);
    let rep = table
        .entries
        .iter()
        .map(|e| e.mu.clone())
        .find(|m| q0.class_of(m) == class)
        .ok_or_else(|| Error::UnsupportedCase(format!("mu class {class:?} of {} is not among the listed representatives", table.label)))?;

    let (pos0, reading, flagged) = positions_for(datum, sigma, &table, &rep)?;
    let (w, pos) = transport_along(sigma, &table.c_word, &path, &pos0);
    debug_assert_eq!(w, reached);
    let positions = rebase_positions(&w, setup.c_word(), &pos);
    let sd = subsequence_data(setup, &positions)?;
    let verdict = verify_theorem_coxeter(setup, &fp, &sd);
    Ok(Construction {
        case: table.case,
        label: table.label,
        representative: rep,
        moves: path,
        reading,
        notes: table.notes,
        flagged,
        fixed_point: fp,
        data: sd,
        verdict,
    })
}
