use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::diag::Diagnostic;
use super::jobs::TaskResult;
use super::{Expect, TaskSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    ConditionalPass,
    Fail,
    PreconditionFailed,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskReport {
    pub id: String,
    pub command: String,
    /// The task record as written in the session.
    pub task: TaskSpec,
    pub expect: Expect,
    pub status: Status,
    /// The status matches the expectation.
    pub passed: bool,
    pub conditional: bool,
    pub payload: Value,
    pub evidence: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Diagnostic>,
    #[serde(skip)]
    pub text: String,
}

impl TaskReport {
    pub(crate) fn new(spec: &TaskSpec, command: String, res: TaskResult) -> Self {
        let expect = spec.expect.unwrap_or_default();
        let passed = match (expect, res.status) {
            (_, Status::Error) => false,
            (Expect::Pass, s) => matches!(s, Status::Pass | Status::ConditionalPass),
            (Expect::Fail, s) => matches!(s, Status::Fail | Status::PreconditionFailed),
            (Expect::PreconditionFailed, s) => s == Status::PreconditionFailed,
        };
        TaskReport {
            id: spec.id.clone(),
            command,
            task: spec.clone(),
            expect,
            status: res.status,
            passed,
            conditional: res.conditional,
            payload: res.payload,
            evidence: res.evidence,
            diagnostic: res.diagnostic,
            text: res.text,
        }
    }

    pub fn to_text(&self) -> String {
        let mark = match (self.passed, self.status) {
            (_, Status::Error) => "ERROR",
            (true, _) if self.conditional => "PASS*",
            (true, _) => "PASS",
            (false, _) => "FAIL",
        };
        let mut s = format!("[{mark}] {} ({}): {:?}", self.id, self.command, self.status);
        if self.expect != Expect::Pass {
            s.push_str(&format!(" (expected {:?})", self.expect));
        }
        s.push('\n');
        if let Some(d) = &self.diagnostic {
            s.push_str(&format!("  {d}\n"));
        }
        for line in self.text.lines() {
            s.push_str("  ");
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub conditional: usize,
    pub exit_code: i32,
}

/// Wall-clock times in milliseconds; excluded from reproducibility comparisons.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub tasks: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub session_sha256: String,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ReportEnvelope {
    pub fn new(session_sha256: String, tasks: Vec<TaskReport>, timing: Option<Timing>) -> Self {
        let errors = tasks.iter().filter(|t| t.status == Status::Error).count();
        let passed = tasks.iter().filter(|t| t.passed).count();
        let failed = tasks.len() - passed - errors;
        let exit_code = if errors > 0 {
            1
        } else if failed > 0 {
            2
        } else {
            0
        };
        let summary = Summary {
            total: tasks.len(),
            passed,
            failed,
            errors,
            conditional: tasks.iter().filter(|t| t.passed && t.conditional).count(),
            exit_code,
        };
        ReportEnvelope {
            schema_version: SCHEMA_VERSION,
            tool: "frobpow",
            tool_version: env!("CARGO_PKG_VERSION"),
            session_sha256,
            tasks,
            summary,
            timing,
        }
    }

    pub fn without_timing(&self) -> ReportEnvelope {
        ReportEnvelope { timing: None, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        format!(
            "{} tasks: {} passed ({} conditional), {} failed, {} errors",
            s.total, s.passed, s.conditional, s.failed, s.errors
        )
    }
}
