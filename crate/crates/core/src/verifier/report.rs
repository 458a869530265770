//! Per-lemma results of a sweep.

use std::fmt;

use serde::Serialize;

/// One failing instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub setup: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub instances_checked: u64,
    /// Instances outside the lemma's hypothesis (not counted as checked).
    pub skipped: u64,
    /// Instances dropped by a resource limit.
    pub truncated: u64,
    pub failures: Vec<Witness>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn new(lemma_id: &str) -> Self {
        LemmaReport { lemma_id: lemma_id.into(), instances_checked: 0, skipped: 0, truncated: 0, failures: vec![], notes: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, ok: bool, setup: impl fmt::Display, detail: impl FnOnce() -> String) {
        self.instances_checked += 1;
        if !ok {
            self.failures.push(Witness { setup: setup.to_string(), detail: detail() });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Folds `other` into `self`. Witnesses and notes are kept sorted so the
    /// result does not depend on merge order.
    pub fn merge(&mut self, other: LemmaReport) {
        debug_assert_eq!(self.lemma_id, other.lemma_id);
        self.instances_checked += other.instances_checked;
        self.skipped += other.skipped;
        self.truncated += other.truncated;
        self.failures.extend(other.failures);
        self.failures.sort();
        for n in other.notes {
            self.note(n);
        }
        self.notes.sort();
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "verified on the swept domain"
        } else {
            "FAILED"
        }
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checked, {} skipped, {} failures)",
            self.lemma_id,
            self.verdict(),
            self.instances_checked,
            self.skipped,
            self.failures.len()
        )?;
        if self.truncated > 0 {
            write!(f, " [TRUNCATED: {} instances over the size limit]", self.truncated)?;
        }
        Ok(())
    }
}
