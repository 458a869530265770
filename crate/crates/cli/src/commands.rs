//! Command implementations. Each returns a [`Report`].

use coxlab::conditions::find_star_coxeter;
use coxlab::linalg::Matrix;
use coxlab::multiplicity::{count_transporter, is_regular, multiplicity_data, MODEL_NOTE};
use coxlab::rootsys::{CoxeterSystem, RootDatum};
use coxlab::smith::smith_normal_form;
use coxlab::twisted::{construct_i, Verdict};
use coxlab::verifier::sweep::{self, WordChoice};
use coxlab::verifier::LemmaReport;
use coxlab::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::record::SetupRecord;
use crate::report::{ExitStatus, Report};

pub fn status_of(e: &Error) -> ExitStatus {
    match e {
        Error::UnsupportedCase(_) => ExitStatus::Unsupported,
        Error::Internal(_) => ExitStatus::Failures,
        _ => ExitStatus::InputError,
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect()
}

fn nodes_1based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|i| i + 1).collect()
}

fn root_string(datum: &RootDatum, k: usize) -> String {
    let coeffs = datum.root(k);
    let negative = coeffs.iter().any(|&c| c < 0);
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        let c = c.abs();
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push(if negative { '-' } else { '+' });
        } else if negative {
            out.push('-');
        }
        if c > 1 {
            out.push_str(&c.to_string());
        }
        out.push_str(&format!("a{}", i + 1));
    }
    out
}

fn verdict_value(v: &Verdict) -> Value {
    match v {
        Verdict::Pass => json!("pass"),
        Verdict::Fail { witness } => json!(format!("FAIL: {witness}")),
        Verdict::Vacuous { reason } => json!(format!("vacuous: {reason}")),
    }
}

fn setup_value(rec: &SetupRecord, word: &[usize]) -> Value {
    json!({
        "source": rec.to_string(),
        "type": rec.type_label,
        "sigma": nodes_1based(&rec.sigma),
        "c": word_string(word),
        "mu": rec.mu,
    })
}

/// `M` for every type and twist up to rank 8, against the reference list.
pub fn table_m() -> Report {
    let rows = sweep::m_table(8);
    let all_match = rows.iter().all(|r| r.matches());
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"type": r.label, "M": r.computed, "expected": r.expected, "matches": r.matches()}))
        .collect();
    let status = if all_match { ExitStatus::Ok } else { ExitStatus::Failures };
    Report::new("table-m", status, json!({ "rows": rows, "all_match": all_match }))
}

fn construct_one(rec: &SetupRecord) -> (ExitStatus, Value) {
    let setup = match rec.setup() {
        Ok(s) => s,
        Err(e) => return (status_of(&e), json!({"setup": rec.to_string(), "error": e.to_string()})),
    };
    let word = setup.c_word().to_vec();
    let con = match construct_i(&setup) {
        Ok(c) => c,
        Err(e) => {
            let mut v = error_value(&e);
            v["setup"] = setup_value(rec, &word);
            return (status_of(&e), v);
        }
    };
    let datum = setup.datum();
    let full = CoxeterSystem::full(datum.clone());
    let sd = &con.data;
    let props: serde_json::Map<String, Value> =
        con.verdict.all().iter().map(|(name, v)| (name.to_string(), verdict_value(v))).collect();
    let passed = con.verdict.passed();
    let moves: Vec<Value> = con
        .moves
        .iter()
        .map(|s| json!({"move": format!("{:?}", s.mv).to_lowercase(), "from": word_string(&s.word)}))
        .collect();
    let body = json!({
        "setup": setup_value(rec, &word),
        "case": con.case,
        "case_label": con.label,
        "representative": con.representative,
        "moves": moves,
        "reading": con.reading,
        "flagged": con.flagged,
        "notes": con.notes,
        "I": sd.positions_1based(),
        "sigma_I": {
            "w": word_string(&full.reduced_word(sd.sigma_i.weyl_part())),
            "sigma_power": sd.sigma_i.power(),
        },
        "c_I": word_string(&full.reduced_word(&sd.c_i)),
        "Delta_I": sd.delta_i.iter().map(|&k| root_string(datum, k)).collect::<Vec<_>>(),
        "Delta_e": con.fixed_point.delta_e.iter().map(|&k| root_string(datum, k)).collect::<Vec<_>>(),
        "e": con.fixed_point.e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "properties": props,
        "passed": passed,
    });
    (if passed { ExitStatus::Ok } else { ExitStatus::Failures }, body)
}

/// The construction of `I` for each record.
pub fn construct(records: &[SetupRecord]) -> Report {
    let mut status = ExitStatus::Ok;
    let mut results = Vec::new();
    for rec in records {
        let (s, v) = construct_one(rec);
        status = status.worst(s);
        results.push(v);
    }
    Report::new("construct", status, json!({ "setups": results }))
}

/// Transporter count for one setup.
pub fn multiplicity(rec: &SetupRecord, q: Option<i64>, chi: &str, chi2: Option<&str>) -> Report {
    let run = || -> Result<Value, Error> {
        let q = q.or(rec.q).ok_or_else(|| Error::Precondition("q must be given by --q or in the record".into()))?;
        let setup = rec.setup()?;
        let fp = coxlab::twisted::fixed_point_e(&setup)?;
        let data = multiplicity_data(&setup, &fp, q)?;
        let parse = |s: &str| -> Result<Vec<i64>, Error> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| Error::InvalidCharacter(format!("{t:?} is not an integer"))))
                .collect()
        };
        let g = &data.group;
        let a = g.character(&parse(chi)?)?;
        let b = match chi2 {
            Some(s) => g.character(&parse(s)?)?,
            None => a.clone(),
        };
        let count = count_transporter(&a, &b, g, &data.fixed)?;
        Ok(json!({
            "setup": setup_value(rec, setup.c_word()),
            "q": q,
            "invariant_factors": g.invariant_factors(),
            "group_order": g.order().to_string(),
            "fixed_subgroup_order": data.fixed.len(),
            "chi": a.components,
            "chi_prime": b.components,
            "count": count,
            "chi_regular": is_regular(&a, g, &data.fixed)?,
            "model": MODEL_NOTE,
        }))
    };
    match run() {
        Ok(v) => Report::new("multiplicity", ExitStatus::Ok, v),
        Err(e) => Report::new("multiplicity", status_of(&e), json!({"setup": rec.to_string(), "error": e.to_string()})),
    }
}

/// Search for a twisted Coxeter element satisfying (*).
pub fn star_search(records: &[SetupRecord]) -> Report {
    let mut status = ExitStatus::Ok;
    let mut out = Vec::new();
    for rec in records {
        let (datum, sigma) = match rec.datum_and_sigma() {
            Ok(x) => x,
            Err(e) => {
                status = status.worst(status_of(&e));
                out.push(json!({"setup": rec.to_string(), "error": e.to_string()}));
                continue;
            }
        };
        let s = find_star_coxeter(&datum, &sigma);
        let found = s.found.as_ref().map(|(w, cert)| {
            json!({"c": word_string(w), "N": cert.n, "power_check": cert.check_power, "length_check": cert.check_length})
        });
        out.push(json!({
            "type": rec.type_label,
            "sigma": nodes_1based(&rec.sigma),
            "bipartite_word": word_string(&s.bipartite_word),
            "elements_checked": s.elements_checked,
            "elements_valid": s.elements_valid,
            "found": found,
        }));
    }
    Report::new("star-search", status, json!({ "searches": out }))
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_rank: usize,
    pub q: Option<i64>,
    pub max_group_order: u128,
    pub seed: u64,
    pub inject_bad_sequence: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_rank: 4, q: None, max_group_order: 10_000, seed: 0, inject_bad_sequence: false }
    }
}

fn suite_value(rep: &LemmaReport, domain: String) -> Value {
    let mut v = serde_json::to_value(rep).expect("report serializes");
    v["domain"] = json!(domain);
    v["verdict"] = json!(rep.verdict());
    v
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix<i128> {
    let mut m = Matrix::<i128>::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m[(0, 0)] = -1;
        }
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.gen_bool(0.2) {
            m.swap_rows(i, j);
        } else {
            let k: i128 = rng.gen_range(-2..=2);
            for col in 0..n {
                let add = k * m[(j, col)];
                m[(i, col)] += add;
            }
        }
    }
    m
}

/// Invariant factors of `q (c sigma) - 1` agree after random unimodular
/// changes of basis on both sides.
fn smith_invariance(max_rank: usize, qs: &[i64], seed: u64) -> LemmaReport {
    let mut rep = LemmaReport::new("smith_invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cases, _) = sweep::case_instances(&sweep::irreducible_twists(max_rank), WordChoice::Canonical);
    for c in &cases {
        let a = c.setup.csigma_coweight_matrix();
        let n = a.rows();
        for &q in qs {
            let m = a.scale(&q).sub(&Matrix::identity(n)).map(|&x| x as i128);
            let base = smith_normal_form(&m).diagonal;
            for _ in 0..3 {
                let (u, v) = (random_unimodular(n, &mut rng), random_unimodular(n, &mut rng));
                let other = smith_normal_form(&u.mul(&m).mul(&v)).diagonal;
                rep.check(other == base, &c.setup, || format!("q = {q}: {base:?} vs {other:?}"));
            }
        }
    }
    rep
}

/// Every sweep, with the ranks capped per suite.
pub fn verify_all(opts: &VerifyOptions) -> Report {
    if opts.max_rank == 0 || opts.max_rank > 8 {
        return Report::new(
            "verify-all",
            ExitStatus::InputError,
            json!({"error": format!("--max-rank must be in 1..=8, got {}", opts.max_rank)}),
        );
    }
    let r = opts.max_rank;
    let cap = |c: usize| r.min(c);
    let qs: Vec<i64> = match opts.q {
        Some(q) => vec![q],
        None => vec![2, 3, 7],
    };
    let mut suites: Vec<(LemmaReport, String)> = Vec::new();

    let mut m = LemmaReport::new("m_table");
    for row in sweep::m_table(r) {
        m.check(row.matches(), &row.label, || format!("computed {} but expected {:?}", row.computed, row.expected));
    }
    suites.push((m, format!("all types and twists, rank <= {r}")));
    suites.push((
        sweep::sweep_theorem_coxeter_with(r, opts.inject_bad_sequence),
        format!("listed cases, canonical words, rank <= {r}"),
    ));
    suites.push((sweep::sweep_transport(cap(5)), format!("all moves from listed cases, rank <= {}", cap(5))));
    suites.push((sweep::sweep_star_existence(cap(6)), format!("connected types, rank <= {}", cap(6))));
    suites.push((
        sweep::sweep_star_all_coxeter(cap(6)),
        format!("connected split types with even Coxeter number, every Coxeter element, rank <= {}", cap(6)),
    ));
    suites.push((sweep::sweep_lemma_ast(cap(6)), format!("listed cases on the (*) word, rank <= {}", cap(6))));
    let (stable, connected) = sweep::sweep_supports(cap(6), cap(3));
    let support_domain = format!("canonical setups rank <= {}, swapped products of rank <= {} components", cap(6), cap(3));
    suites.push((stable, support_domain.clone()));
    suites.push((connected, support_domain));
    suites.push((
        sweep::sweep_partial(cap(4), cap(4)),
        format!("all diagrams and automorphisms rank <= {0}, W_e of listed cases rank <= {0}", cap(4)),
    ));
    suites.push((sweep::sweep_proper(cap(4)), format!("listed cases on the (*) word, rank <= {}", cap(4))));
    suites.push((sweep::sweep_unstable(cap(4)), format!("listed cases on the (*) word, rank <= {}, i < 2N", cap(4))));
    suites.push((sweep::sweep_nonempty(cap(4)), format!("listed cases on the (*) word, rank <= {}, i < 2N", cap(4))));
    let q_desc = match opts.q {
        Some(q) => format!("q = {q} (M + 1 where q <= M)"),
        None => "q = M + 1".into(),
    };
    suites.push((sweep::sweep_nonzero(cap(6), opts.q), format!("all types and twists rank <= {}, {q_desc}", cap(6))));
    suites.push((
        sweep::sweep_multiplicity(cap(4), &qs, opts.max_group_order),
        format!("listed cases rank <= {}, q in {qs:?}, group order <= {}", cap(4), opts.max_group_order),
    ));
    suites.push((
        smith_invariance(cap(4), &qs, opts.seed),
        format!("listed cases rank <= {}, q in {qs:?}, 3 random bases each (seed {})", cap(4), opts.seed),
    ));

    let checked: u64 = suites.iter().map(|(s, _)| s.instances_checked).sum();
    let failures: usize = suites.iter().map(|(s, _)| s.failures.len()).sum();
    let truncated: u64 = suites.iter().map(|(s, _)| s.truncated).sum();
    let failing: Vec<&str> = suites.iter().filter(|(s, _)| !s.passed()).map(|(s, _)| s.lemma_id.as_str()).collect();
    let status = if failures > 0 {
        ExitStatus::Failures
    } else if truncated > 0 {
        ExitStatus::Truncated
    } else {
        ExitStatus::Ok
    };
    let body = json!({
        "max_rank": r,
        "seed": opts.seed,
        "injected_bad_sequence": opts.inject_bad_sequence,
        "suites": suites.iter().map(|(s, d)| suite_value(s, d.clone())).collect::<Vec<_>>(),
        "totals": {
            "instances_checked": checked,
            "failures": failures,
            "truncated": truncated,
            "failing_suites": failing,
        },
    });
    Report::new("verify-all", status, body)
}
