//! Session files, task execution and report envelopes.
//!
//! A session names rings, ideals and extensions and lists tasks. The whole
//! file is resolved and validated before any task runs.

mod args;
mod diag;
mod envelope;
mod jobs;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::basechange::{build_extension, FiberPresentation, FlatExtension};
use crate::groebner::Ideal;
use crate::ring::{Limits, Ring, RingPresentation};

pub use diag::{DResult, Diagnostic};
pub use envelope::{ReportEnvelope, Status, Summary, TaskReport, Timing, SCHEMA_VERSION};
pub use jobs::{canonical_verb, TaskResult, VERBS};

use diag::{DUPLICATE, IO, JSON, UNRESOLVED};
use jobs::Job;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub name: String,
    /// Ring text such as `GF(7)[z,x,y]/(x^3+y^3+z^3)`, or a builtin name.
    pub ring: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub name: String,
    pub ring: String,
    pub gens: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub name: String,
    pub base: String,
    pub fiber: String,
    /// System of parameters of the fiber, as a generator list.
    #[serde(default = "empty_gens")]
    pub z: String,
}

fn empty_gens() -> String {
    "()".into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    #[default]
    Pass,
    /// Negative control: a failed check or refused precondition counts as success.
    Fail,
    PreconditionFailed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub id: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
    #[serde(flatten)]
    pub args: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    /// Resource caps, as accepted by `FROBPOW_CAP`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<String>,
    #[serde(default)]
    pub rings: Vec<RingSpec>,
    #[serde(default)]
    pub ideals: Vec<IdealSpec>,
    #[serde(default)]
    pub extensions: Vec<ExtensionSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

impl SessionFile {
    pub fn from_json(text: &str) -> DResult<SessionFile> {
        serde_json::from_str(text).map_err(|e| Diagnostic::new(JSON, e.to_string()))
    }
}

/// Ring texts available by name without a session entry.
pub fn builtin_ring(name: &str) -> Option<String> {
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (family, p) = name.split_at(split);
    let p: u64 = p.parse().ok()?;
    Some(match family {
        "fermat" => format!("GF({p})[z,x,y]/(x^3+y^3+z^3)"),
        "node" => format!("GF({p})[u,v]/(u*v)"),
        "plane" => format!("GF({p})[x,y]"),
        "line" => format!("GF({p})[x]"),
        _ => return None,
    })
}

/// A resolved, validated session.
pub struct Session {
    pub file: SessionFile,
    pub sha256: String,
    pub limits: Limits,
    rings: BTreeMap<String, Ring>,
    ideals: BTreeMap<String, Ideal>,
    extensions: BTreeMap<String, FlatExtension>,
    jobs: Vec<Job>,
}

pub struct RunOutput {
    pub envelope: ReportEnvelope,
    pub exit_code: i32,
    pub csv: Vec<(String, String)>,
    pub text: String,
}

fn check_unique<'a>(kind: &str, names: impl Iterator<Item = &'a String>) -> DResult<()> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Diagnostic::new(DUPLICATE, format!("{kind} `{n}` is defined twice")));
        }
    }
    Ok(())
}

impl Session {
    pub fn load(path: &Path, cap_overrides: &[String]) -> DResult<Session> {
        let bytes = std::fs::read(path).map_err(|e| Diagnostic::new(IO, format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes).map_err(|e| Diagnostic::new(IO, format!("{}: {e}", path.display())))?;
        Session::from_json(&text, cap_overrides)
    }

    pub fn from_json(text: &str, cap_overrides: &[String]) -> DResult<Session> {
        let file = SessionFile::from_json(text)?;
        let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
        Session::new(file, sha256, cap_overrides)
    }

    /// Validates `file`; `sha256` identifies its source in reports.
    pub fn new(file: SessionFile, sha256: String, cap_overrides: &[String]) -> DResult<Session> {
        let mut limits = Limits::default();
        if let Some(l) = &file.limits {
            limits = limits.with_override(l).map_err(|e| Diagnostic::from(e).at("limits"))?;
        }
        for o in cap_overrides {
            limits = limits.with_override(o).map_err(|e| Diagnostic::from(e).at("cap override"))?;
        }
        check_unique("ring", file.rings.iter().map(|r| &r.name))?;
        check_unique("ideal", file.ideals.iter().map(|r| &r.name))?;
        check_unique("extension", file.extensions.iter().map(|r| &r.name))?;
        check_unique("task", file.tasks.iter().map(|r| &r.id))?;
        let mut s = Session {
            file: SessionFile::default(),
            sha256,
            limits,
            rings: BTreeMap::new(),
            ideals: BTreeMap::new(),
            extensions: BTreeMap::new(),
            jobs: Vec::new(),
        };
        for r in &file.rings {
            let ring = s.resolve_ring(&r.ring).map_err(|d| d.at(&format!("ring `{}`", r.name)))?;
            s.rings.insert(r.name.clone(), ring);
        }
        for i in &file.ideals {
            let ctx = format!("ideal `{}`", i.name);
            let ring = s.resolve_ring(&i.ring).map_err(|d| d.at(&ctx))?;
            let ideal = Ideal::parse(&ring, &i.gens).map_err(|e| Diagnostic::from(e).at(&ctx))?;
            s.ideals.insert(i.name.clone(), ideal);
        }
        for x in &file.extensions {
            let ctx = format!("extension `{}`", x.name);
            let ext = s.build_extension(&x.base, &x.fiber, &x.z).map_err(|d| d.at(&ctx))?;
            s.extensions.insert(x.name.clone(), ext);
        }
        let mut jobs = Vec::with_capacity(file.tasks.len());
        for t in &file.tasks {
            jobs.push(jobs::prepare(&s, t).map_err(|d| d.at(&format!("task `{}`", t.id)))?);
        }
        s.jobs = jobs;
        s.file = file;
        Ok(s)
    }

    /// Session name, then builtin catalog, then ring text.
    pub fn resolve_ring(&self, r: &str) -> DResult<Ring> {
        if let Some(ring) = self.rings.get(r) {
            return Ok(ring.clone());
        }
        let text = match builtin_ring(r) {
            Some(t) => t,
            None if r.contains('[') => r.to_string(),
            None => return Err(Diagnostic::new(UNRESOLVED, format!("ring `{r}`"))),
        };
        let pres = RingPresentation::parse(&text)?;
        Ok(Ring::with_limits(&pres, self.limits)?)
    }

    /// Session name, `m`, a generator list, or variable letters (`xy` = `(x, y)`).
    pub fn resolve_ideal(&self, ring: &Ring, text: &str) -> DResult<Ideal> {
        let t = text.trim();
        if let Some(i) = self.ideals.get(t) {
            if i.ring() != ring {
                return Err(Diagnostic::new(
                    diag::ARGUMENT,
                    format!("ideal `{t}` lives in {}, not {}", i.ring().describe(), ring.describe()),
                ));
            }
            // re-home the ideal in the ring carrying the session limits
            return Ok(Ideal::new(ring, i.gens().to_vec())?);
        }
        if t == "m" {
            return Ok(Ideal::maximal(ring));
        }
        if t.starts_with('(') || t.contains(',') || t.contains(['^', '*', '+', '-']) {
            return Ok(Ideal::parse(ring, t)?);
        }
        if !t.is_empty() && t.chars().all(|c| ring.var_index(&c.to_string()).is_some()) {
            let gens = t.chars().map(|c| ring.var(ring.var_index(&c.to_string()).unwrap())).collect();
            return Ok(Ideal::new(ring, gens)?);
        }
        if ring.var_index(t).is_some() || t.chars().all(|c| c.is_ascii_digit()) {
            return Ok(Ideal::parse(ring, t)?);
        }
        Err(Diagnostic::new(UNRESOLVED, format!("ideal `{t}` in {}", ring.describe())))
    }

    pub(crate) fn extension(&self, name: &str) -> DResult<FlatExtension> {
        self.extensions
            .get(name)
            .cloned()
            .ok_or_else(|| Diagnostic::new(UNRESOLVED, format!("extension `{name}`")))
    }

    pub(crate) fn build_extension(&self, base: &str, fiber: &str, z: &str) -> DResult<FlatExtension> {
        let r = self.resolve_ring(base)?;
        let t = self.resolve_ring(fiber)?;
        let fp = FiberPresentation::parse(&t, z)?;
        Ok(build_extension(&r, fp)?)
    }

    /// The task with id `filter`, or else every task whose command or verify verb matches.
    fn selected(&self, filter: Option<&str>) -> Vec<usize> {
        let Some(f) = filter else { return (0..self.jobs.len()).collect() };
        if let Some(k) = self.file.tasks.iter().position(|t| t.id == f) {
            return vec![k];
        }
        (0..self.jobs.len()).filter(|&k| self.file.tasks[k].command == f || self.jobs[k].matches_verb(f)).collect()
    }

    pub fn run(&self, filter: Option<&str>, parallel: bool) -> DResult<RunOutput> {
        let picked = self.selected(filter);
        if picked.is_empty() {
            if let Some(f) = filter {
                return Err(Diagnostic::new(UNRESOLVED, format!("no task matches `{f}`")));
            }
        }
        let start = Instant::now();
        let exec = |&k: &usize| {
            let t0 = Instant::now();
            let res = self.jobs[k].execute();
            (res, t0.elapsed().as_secs_f64() * 1000.0)
        };
        let results: Vec<(TaskResult, f64)> =
            if parallel { picked.par_iter().map(exec).collect() } else { picked.iter().map(exec).collect() };
        let mut tasks = Vec::new();
        let mut csv = Vec::new();
        let mut text = String::new();
        let mut timing = Timing { total_ms: 0.0, tasks: BTreeMap::new() };
        for (&k, (res, ms)) in picked.iter().zip(results) {
            let spec = &self.file.tasks[k];
            if let Some(c) = &res.csv {
                csv.push((spec.id.clone(), c.clone()));
            }
            timing.tasks.insert(spec.id.clone(), ms);
            let report = TaskReport::new(spec, self.jobs[k].label(), res);
            text.push_str(&report.to_text());
            tasks.push(report);
        }
        timing.total_ms = start.elapsed().as_secs_f64() * 1000.0;
        let envelope = ReportEnvelope::new(self.sha256.clone(), tasks, Some(timing));
        let exit_code = envelope.summary.exit_code;
        Ok(RunOutput { envelope, exit_code, csv, text })
    }
}
