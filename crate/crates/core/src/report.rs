//! Structured verification reports.

use std::collections::BTreeMap;

use serde::Serialize;

/// Overall outcome of one verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// Outcome of a single checked claim inside a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetailStatus {
    Match,
    Mismatch,
    /// Documented observation that is neither confirmed nor refuted
    /// numerically (for example a typo note).
    Info,
    /// Could only be checked at a weaker level, by design.
    Indeterminate,
}

impl std::fmt::Display for DetailStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DetailStatus::Match => "match",
            DetailStatus::Mismatch => "mismatch",
            DetailStatus::Info => "info",
            DetailStatus::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// One checked claim: the stated value next to the recomputed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Detail {
    pub status: DetailStatus,
    pub claim: String,
    pub stated_value: String,
    pub computed_value: String,
    pub location: String,
}

/// A full verification report for one registry entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub id: String,
    pub anchor: String,
    pub params: BTreeMap<String, String>,
    pub claim: String,
    pub computed: String,
    pub verdict: Verdict,
    pub details: Vec<Detail>,
    pub counterexamples: Vec<String>,
}

impl Report {
    pub fn new(id: &str, anchor: &str, claim: &str) -> Report {
        Report {
            id: id.to_string(),
            anchor: anchor.to_string(),
            params: BTreeMap::new(),
            claim: claim.to_string(),
            computed: String::new(),
            verdict: Verdict::Match,
            details: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Record an equality check between a stated and a computed value.
    pub fn check<T: PartialEq + std::fmt::Display>(
        &mut self,
        claim: &str,
        location: &str,
        stated: T,
        computed: T,
    ) {
        let status = if stated == computed {
            DetailStatus::Match
        } else {
            DetailStatus::Mismatch
        };
        if status == DetailStatus::Mismatch {
            self.counterexamples
                .push(format!("{location}: {claim}: stated {stated}, computed {computed}"));
        }
        self.details.push(Detail {
            status,
            claim: claim.to_string(),
            stated_value: stated.to_string(),
            computed_value: computed.to_string(),
            location: location.to_string(),
        });
    }

    /// Record a boolean expectation.
    pub fn expect(&mut self, claim: &str, location: &str, ok: bool, computed: impl ToString) {
        let status = if ok { DetailStatus::Match } else { DetailStatus::Mismatch };
        if !ok {
            self.counterexamples
                .push(format!("{location}: {claim}: got {}", computed.to_string()));
        }
        self.details.push(Detail {
            status,
            claim: claim.to_string(),
            stated_value: "true".to_string(),
            computed_value: computed.to_string(),
            location: location.to_string(),
        });
    }

    pub fn info(&mut self, claim: &str, location: &str, stated: &str, computed: &str) {
        self.details.push(Detail {
            status: DetailStatus::Info,
            claim: claim.to_string(),
            stated_value: stated.to_string(),
            computed_value: computed.to_string(),
            location: location.to_string(),
        });
    }

    pub fn indeterminate(&mut self, claim: &str, location: &str, stated: &str, computed: &str) {
        self.details.push(Detail {
            status: DetailStatus::Indeterminate,
            claim: claim.to_string(),
            stated_value: stated.to_string(),
            computed_value: computed.to_string(),
            location: location.to_string(),
        });
    }

    /// Derive the verdict from the recorded details: any mismatch makes the
    /// report a mismatch; with no decided checks at all it is indeterminate.
    pub fn finish(mut self, computed_summary: impl Into<String>) -> Report {
        self.computed = computed_summary.into();
        let any_mismatch = self.details.iter().any(|d| d.status == DetailStatus::Mismatch);
        let any_decided = self.details.iter().any(|d| {
            matches!(d.status, DetailStatus::Match | DetailStatus::Mismatch)
        });
        self.verdict = if any_mismatch {
            Verdict::Mismatch
        } else if any_decided {
            Verdict::Match
        } else {
            Verdict::Indeterminate
        };
        self
    }

    pub fn mismatch_count(&self) -> usize {
        self.details
            .iter()
            .filter(|d| d.status == DetailStatus::Mismatch)
            .count()
    }
}
