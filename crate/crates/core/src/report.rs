use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Overall outcome of a verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    /// Every record passed but some input verdict is only evidence.
    ConditionalPass,
    Fail,
    /// A hypothesis of the check does not hold; nothing was compared.
    PreconditionFailed,
}

impl Outcome {
    pub fn passed(self) -> bool {
        matches!(self, Outcome::Pass | Outcome::ConditionalPass)
    }
}

/// One compared instance inside a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Per-identity record of a verification run with all intermediate values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub parameters: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub outcome: Outcome,
    pub conditional: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity: &str) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            parameters: BTreeMap::new(),
            records: Vec::new(),
            outcome: Outcome::Pass,
            conditional: false,
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn record(&mut self, label: impl Into<String>, lhs: impl ToString, rhs: impl ToString, pass: bool) {
        self.records.push(Record { label: label.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn precondition_failed(mut self, why: impl Into<String>) -> Self {
        self.notes.push(why.into());
        self.outcome = Outcome::PreconditionFailed;
        self
    }

    /// Sets the outcome from the records and the conditionality flag.
    pub fn finish(mut self) -> Self {
        if self.outcome == Outcome::PreconditionFailed {
            return self;
        }
        self.outcome = if self.records.iter().any(|r| !r.pass) {
            Outcome::Fail
        } else if self.conditional {
            Outcome::ConditionalPass
        } else {
            Outcome::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {:?}\n", self.identity, self.outcome);
        for (k, v) in &self.parameters {
            s.push_str(&format!("  {k} = {v}\n"));
        }
        for r in &self.records {
            s.push_str(&format!(
                "  [{}] {}: {} | {}\n",
                if r.pass { "ok" } else { "FAIL" },
                r.label,
                r.lhs,
                r.rhs
            ));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}
