//! The ten acceptance criteria, one pass/fail line each. Runs without the
//! libtest harness so the lines are always printed.
//!
//! Every comparison is exact (integer or set equality); the only numeric
//! tolerances are the wall-clock limits below. Criterion 4 fails on its
//! first clause for mathematical reasons: Coxeter elements that are not
//! bipartite can violate (*) even when the Coxeter number is even. The
//! test asserts that the failure set is exactly the one predicted, so any
//! change in behaviour still breaks the build.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use coxlab::multiplicity::{count_transporter, multiplicity_data};
use coxlab::rootsys::Family;
use coxlab::twisted::fixed_point_e;
use coxlab::verifier::sweep::{
    m_table, sweep_lemma_ast, sweep_multiplicity, sweep_nonempty, sweep_nonzero, sweep_partial, sweep_star_all_coxeter, sweep_supports,
    sweep_theorem_coxeter, sweep_transport, sweep_unstable, Twist,
};
use coxlab::verifier::LemmaReport;

const LIMIT_M_TABLE: Duration = Duration::from_secs(1);
const LIMIT_COXETER: Duration = Duration::from_secs(30);
const LIMIT_TRANSPORT: Duration = Duration::from_secs(60);
const LIMIT_STAR: Duration = Duration::from_secs(120);
const LIMIT_SUPPORT: Duration = Duration::from_secs(120);
const LIMIT_PARTIAL: Duration = Duration::from_secs(600);
const LIMIT_KERNELS: Duration = Duration::from_secs(600);
const LIMIT_NONZERO: Duration = Duration::from_secs(60);
const LIMIT_COUNTING: Duration = Duration::from_secs(60);
const LIMIT_DETERMINISM: Duration = Duration::from_secs(600);

/// Largest character group enumerated by criterion 9.
const MAX_GROUP_ORDER: u128 = 10_000;

/// Types of rank <= 6 with even Coxeter number and a Coxeter element that
/// fails (*), and the number of such elements.
const STAR_COUNTEREXAMPLE_TYPES: [&str; 4] = ["A3", "A5", "D5", "E6"];
const STAR_COUNTEREXAMPLES: usize = 46;

struct Outcome {
    passed: bool,
    detail: String,
}

fn clean(reps: &[&LemmaReport]) -> bool {
    reps.iter().all(|r| r.passed() && r.truncated == 0 && r.instances_checked > 0)
}

fn summary(reps: &[&LemmaReport]) -> String {
    reps.iter()
        .map(|r| format!("{}: {} checked, {} failures", r.lemma_id, r.instances_checked, r.failures.len()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn criterion_1() -> Outcome {
    let rows = m_table(8);
    let bad: Vec<_> = rows.iter().filter(|r| !r.matches()).map(|r| r.label.clone()).collect();
    Outcome { passed: bad.is_empty() && rows.len() >= 30, detail: format!("{} types, mismatches {bad:?}", rows.len()) }
}

fn criterion_2() -> Outcome {
    let rep = sweep_theorem_coxeter(8);
    let flagged = rep.notes.iter().filter(|n| n.contains(" via ")).count();
    Outcome { passed: clean(&[&rep]), detail: format!("{}, {flagged} flagged readings", summary(&[&rep])) }
}

fn criterion_3() -> Outcome {
    let rep = sweep_transport(5);
    Outcome { passed: clean(&[&rep]), detail: summary(&[&rep]) }
}

fn criterion_4() -> Outcome {
    let every = sweep_star_all_coxeter(6);
    let ast = sweep_lemma_ast(6);
    let failing: BTreeSet<&str> = every.failures.iter().map(|w| w.setup.as_str()).collect();
    // The second clause must hold and the first must fail exactly as predicted.
    assert!(clean(&[&ast]), "{ast}");
    assert_eq!(failing, BTreeSet::from(STAR_COUNTEREXAMPLE_TYPES));
    assert_eq!(every.failures.len(), STAR_COUNTEREXAMPLES);
    Outcome {
        passed: every.passed() && ast.passed(),
        detail: format!(
            "{}; every-Coxeter clause fails for {failing:?} ({} elements); ast clause holds",
            summary(&[&every, &ast]),
            every.failures.len()
        ),
    }
}

fn criterion_5() -> Outcome {
    let (stable, connected) = sweep_supports(6, 3);
    Outcome { passed: clean(&[&stable, &connected]), detail: summary(&[&stable, &connected]) }
}

fn criterion_6() -> Outcome {
    let rep = sweep_partial(4, 4);
    Outcome { passed: clean(&[&rep]), detail: summary(&[&rep]) }
}

fn criterion_7() -> Outcome {
    let (a, b) = (sweep_unstable(4), sweep_nonempty(4));
    Outcome { passed: clean(&[&a, &b]), detail: summary(&[&a, &b]) }
}

fn criterion_8() -> Outcome {
    let rep = sweep_nonzero(6, None);
    Outcome { passed: clean(&[&rep]), detail: summary(&[&rep]) }
}

fn criterion_9() -> Outcome {
    let rep = sweep_multiplicity(4, &[2, 3, 7], MAX_GROUP_ORDER);
    let a1 = Twist::new(Family::A, 1, 1).unwrap();
    let setup = a1.canonical_setup(vec![0]).unwrap();
    let fp = fixed_point_e(&setup).unwrap();
    let data = multiplicity_data(&setup, &fp, 3).unwrap();
    let g = &data.group;
    let example = g.invariant_factors() == [4]
        && [1, 3].iter().all(|&a| {
            let chi = g.character(&[a]).unwrap();
            count_transporter(&chi, &chi, g, &data.fixed).unwrap() == 1
        });
    Outcome {
        passed: rep.passed() && rep.instances_checked > 0 && example,
        detail: format!("{} ({} groups over {MAX_GROUP_ORDER}); A1 at q=3 gives Z/{:?}", summary(&[&rep]), rep.truncated, g.invariant_factors()),
    }
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_coxlab"))
            .args(["--format", "json", "verify-all", "--max-rank", "4"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    Outcome {
        passed: a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty(),
        detail: format!("{} bytes, exit codes {:?} and {:?}", a.stdout.len(), a.status.code(), b.status.code()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("M table", criterion_1, LIMIT_M_TABLE),
        ("Coxeter cases to rank 8", criterion_2, LIMIT_COXETER),
        ("transport to rank 5", criterion_3, LIMIT_TRANSPORT),
        ("condition (*) and its consequences", criterion_4, LIMIT_STAR),
        ("support lemmas", criterion_5, LIMIT_SUPPORT),
        ("partial conjugation", criterion_6, LIMIT_PARTIAL),
        ("Weyl-group kernels", criterion_7, LIMIT_KERNELS),
        ("non-vanishing at q = M + 1", criterion_8, LIMIT_NONZERO),
        ("multiplicity counting", criterion_9, LIMIT_COUNTING),
        ("determinism", criterion_10, LIMIT_DETERMINISM),
    ];
    let mut unexpected = Vec::new();
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < limit;
        let ok = out.passed && in_time;
        println!(
            "criterion {:>2} {:<36} {} [{:.2?} / {:?}] {}",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            out.detail
        );
        // Criterion 4 is the one known mathematical failure; its exact shape
        // is asserted inside criterion_4.
        if !ok && !(k + 1 == 4 && in_time) {
            unexpected.push(k + 1);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
