use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub group_label: String,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    /// A failed result always carries details; an empty string is replaced by a generic note.
    pub fn new(
        check_id: &str,
        group_label: &str,
        passed: bool,
        details: impl Into<String>,
    ) -> Self {
        let mut details = details.into();
        if !passed && details.is_empty() {
            details = "check failed".into();
        }
        CheckResult {
            check_id: check_id.into(),
            group_label: group_label.into(),
            passed,
            details,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_check: BTreeMap<String, Tally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub corpus: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl TheoremReport {
    pub fn new(corpus: impl Into<String>, results: Vec<CheckResult>) -> Self {
        let mut summary = Summary {
            total: results.len(),
            ..Summary::default()
        };
        for r in &results {
            let t = summary.by_check.entry(r.check_id.clone()).or_default();
            if r.passed {
                summary.passed += 1;
                t.passed += 1;
            } else {
                summary.failed += 1;
                t.failed += 1;
            }
        }
        TheoremReport {
            corpus: corpus.into(),
            results,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("corpus: {}\n", self.corpus);
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            writeln!(
                s,
                "{status} {} [{}] {}",
                r.check_id, r.group_label, r.details
            )
            .unwrap();
        }
        writeln!(
            s,
            "total {}: {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        )
        .unwrap();
        for (id, t) in &self.summary.by_check {
            writeln!(s, "  {id}: {} passed, {} failed", t.passed, t.failed).unwrap();
        }
        s
    }
}
