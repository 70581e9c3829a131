use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::basechange::{
    check_hk_multiplicativity, check_kunz_inequality, check_length_identity, check_tau_extension,
    check_test_exponent_transfer, check_tightly_closed_extension, FlatExtension,
};
use crate::error::Result;
use crate::frobenius::{
    f_injectivity_check, f_rationality_check, frobenius_closure_test, frobenius_power, hilbert_kunz,
    strong_test_ideal_check, tau_truncated, tight_closure_test, ClosureVerdict, FrobeniusExponent, Provenance,
    TestElementStrategy, TestExponentCertificate, DEFAULT_EMAX, DEFAULT_TEST_POWER,
};
use crate::groebner::{is_irreducible, krull_dim, socle, Ideal};
use crate::poly::Poly;
use crate::report::{Outcome, VerificationReport};
use crate::ring::Ring;

use super::args::Args;
use super::diag::{DResult, Diagnostic, ARGUMENT};
use super::envelope::Status;
use super::{Session, TaskSpec};

/// Verification verbs and the alternative names they answer to.
pub const VERBS: &[(&str, &[&str])] = &[
    ("length-identity", &["prop5.7"]),
    ("hk-product", &[]),
    ("kunz-inequality", &["cor5.8"]),
    ("tight-extension", &["thm4.1", "thm4.2"]),
    ("strong-test-ideal", &["thm5.1"]),
    ("test-exponent-transfer", &["prop5.9"]),
    ("tau-extension", &["prop4.4"]),
    ("f-injective", &["finj"]),
    ("f-rational", &["frat"]),
];

pub fn canonical_verb(name: &str) -> Option<&'static str> {
    VERBS.iter().find(|(v, aliases)| *v == name || aliases.contains(&name)).map(|(v, _)| *v)
}

pub(crate) enum Job {
    Gb(Ideal),
    Nf(Ideal, Poly),
    Member(Ideal, Poly),
    Fpower(Ideal, FrobeniusExponent),
    Fclosure(Ideal, Poly, u32),
    Tclosure { ideal: Ideal, u: Poly, strategy: TestElementStrategy, cert: Option<TestExponentCertificate>, emax: u32 },
    Hk(Ideal, u32),
    Tau { ring: Ring, z: Vec<Poly>, tmax: u32, strategy: TestElementStrategy, emax: u32 },
    Socle(Ideal),
    Dim(Ideal),
    Verify(&'static str, Verify),
}

pub(crate) enum Verify {
    LengthIdentity(FlatExtension, Ideal, RangeInclusive<u32>),
    HkProduct(FlatExtension, Ideal, RangeInclusive<u32>),
    Kunz(FlatExtension, RangeInclusive<u32>),
    TightExtension { x: FlatExtension, ideal: Ideal, t: u64, strategy: TestElementStrategy, emax: u32 },
    StrongTestIdeal { t: Ideal, ideal: Ideal, strategy: TestElementStrategy, emax: u32 },
    TestExponentTransfer { x: FlatExtension, c: Poly, ideal: Ideal, strategy: TestElementStrategy, emax: u32 },
    TauExtension { x: FlatExtension, z: Vec<Poly>, tmax: u32, strategy: TestElementStrategy, emax: u32 },
    FInjective(Ring, Vec<Poly>, u32),
    FRational(Ring, Vec<Poly>, TestElementStrategy, u32),
}

/// Outcome of one task before it is wrapped into the envelope.
#[derive(Debug, Clone)]
pub struct TaskResult {
    pub status: Status,
    pub conditional: bool,
    pub payload: Value,
    pub evidence: Vec<Value>,
    pub diagnostic: Option<Diagnostic>,
    pub text: String,
    pub csv: Option<String>,
}

impl TaskResult {
    fn info(payload: Value, text: String) -> Self {
        TaskResult { status: Status::Pass, conditional: false, payload, evidence: Vec::new(), diagnostic: None, text, csv: None }
    }
}

fn poly(ring: &Ring, text: &str) -> DResult<Poly> {
    Ok(ring.parse_poly(text)?)
}

fn gens(ring: &Ring, text: &str) -> DResult<Vec<Poly>> {
    Ok(ring.parse_generators(text)?)
}

/// `test_element` is `jacobian` (default), `unit`, or a polynomial; `test_power`
/// defaults to 2 for jacobian and 1 for an explicit element.
fn strategy(args: &Args, ring: &Ring) -> DResult<TestElementStrategy> {
    let power = args.uint("test_power")?.map(|p| p as u32);
    let s = match args.str("test_element")?.as_deref().map(str::trim) {
        None | Some("jacobian") => TestElementStrategy::Jacobian { power: power.unwrap_or(DEFAULT_TEST_POWER) },
        Some("unit") => TestElementStrategy::Unit,
        Some(c) => TestElementStrategy::explicit(poly(ring, c)?, power.unwrap_or(1)),
    };
    Ok(s)
}

fn emax(args: &Args) -> DResult<u32> {
    args.u32_or("emax", DEFAULT_EMAX)
}

fn e_range(args: &Args) -> DResult<RangeInclusive<u32>> {
    let lo = args.u32_or("e_min", 1)?;
    let hi = args.u32_or("e_max", 3)?;
    if lo > hi {
        return Err(Diagnostic::new(ARGUMENT, format!("empty e range {lo}..={hi}")));
    }
    Ok(lo..=hi)
}

fn extension(s: &Session, args: &Args) -> DResult<FlatExtension> {
    if let Some(name) = args.str("extension")? {
        return s.extension(&name);
    }
    let base = args.req_str("base")?;
    let fiber = args.req_str("fiber")?;
    let z = args.str("fiber_z")?.unwrap_or_else(|| "()".into());
    s.build_extension(&base, &fiber, &z)
}

fn ring_and_ideal(s: &Session, args: &Args, key: &str) -> DResult<(Ring, Ideal)> {
    let ring = s.resolve_ring(&args.req_str("ring")?)?;
    let ideal = s.resolve_ideal(&ring, &args.req_str(key)?)?;
    Ok((ring, ideal))
}

fn certificate(args: &Args, ideal: &Ideal) -> DResult<Option<TestExponentCertificate>> {
    let ring = ideal.ring();
    match args.str("certificate")?.as_deref() {
        None => {}
        Some("regular") => return Ok(Some(TestExponentCertificate::regular(ideal)?)),
        Some(other) => return Err(Diagnostic::new(ARGUMENT, format!("unknown certificate kind `{other}`"))),
    }
    let q = args.uint("certificate_q")?;
    let c = args.str("certificate_c")?;
    match (q, c) {
        (None, None) => Ok(None),
        (Some(q), Some(c)) => Ok(Some(TestExponentCertificate {
            c: poly(ring, &c)?,
            ideal: ideal.clone(),
            q,
            provenance: Provenance::UserAsserted,
        })),
        _ => Err(Diagnostic::new(ARGUMENT, "certificate_q and certificate_c go together")),
    }
}

/// Resolves every reference of `task` and parses all its arguments.
pub(crate) fn prepare(s: &Session, task: &TaskSpec) -> DResult<Job> {
    let args = Args::new(&task.args);
    let job = match task.command.as_str() {
        "gb" => Job::Gb(ring_and_ideal(s, &args, "ideal")?.1),
        "nf" | "member" => {
            let (ring, ideal) = ring_and_ideal(s, &args, "ideal")?;
            let f = poly(&ring, &args.req_str("elem")?)?;
            if task.command == "nf" {
                Job::Nf(ideal, f)
            } else {
                Job::Member(ideal, f)
            }
        }
        "fpower" => {
            let (ring, ideal) = ring_and_ideal(s, &args, "ideal")?;
            let p = ring.characteristic();
            let q = match (args.uint("q")?, args.uint("e")?) {
                (Some(q), None) => FrobeniusExponent::from_q(p, q)?,
                (None, Some(e)) => FrobeniusExponent::new(p, e as u32)?,
                _ => return Err(Diagnostic::new(ARGUMENT, "give exactly one of `q` and `e`")),
            };
            Job::Fpower(ideal, q)
        }
        "fclosure" => {
            let (ring, ideal) = ring_and_ideal(s, &args, "ideal")?;
            Job::Fclosure(ideal, poly(&ring, &args.req_str("elem")?)?, emax(&args)?)
        }
        "tclosure" => {
            let (ring, ideal) = ring_and_ideal(s, &args, "ideal")?;
            let u = poly(&ring, &args.req_str("elem")?)?;
            let strategy = strategy(&args, &ring)?;
            strategy.resolve(&ring)?;
            let cert = certificate(&args, &ideal)?;
            Job::Tclosure { ideal, u, strategy, cert, emax: emax(&args)? }
        }
        "hk" => Job::Hk(ring_and_ideal(s, &args, "ideal")?.1, emax(&args)?),
        "tau" => {
            let ring = s.resolve_ring(&args.req_str("ring")?)?;
            let z = gens(&ring, &args.req_str("z")?)?;
            let strategy = strategy(&args, &ring)?;
            strategy.resolve(&ring)?;
            Job::Tau { tmax: args.u32_or("tmax", 3)?, emax: emax(&args)?, ring, z, strategy }
        }
        "socle" => Job::Socle(ring_and_ideal(s, &args, "ideal")?.1),
        "dim" => {
            let ring = s.resolve_ring(&args.req_str("ring")?)?;
            let ideal = match args.str("ideal")? {
                Some(i) => s.resolve_ideal(&ring, &i)?,
                None => Ideal::zero(&ring),
            };
            Job::Dim(ideal)
        }
        "verify" => {
            let verb_name = args.req_str("verb")?;
            let verb = canonical_verb(&verb_name)
                .ok_or_else(|| Diagnostic::new(ARGUMENT, format!("unknown verify verb `{verb_name}`")))?;
            Job::Verify(verb, prepare_verify(s, &args, verb)?)
        }
        other => return Err(Diagnostic::new(ARGUMENT, format!("unknown command `{other}`"))),
    };
    args.finish(&task.command)?;
    Ok(job)
}

fn prepare_verify(s: &Session, args: &Args, verb: &str) -> DResult<Verify> {
    Ok(match verb {
        "length-identity" | "hk-product" => {
            let x = extension(s, args)?;
            let ideal = s.resolve_ideal(&x.base, &args.req_str("ideal")?)?;
            let range = e_range(args)?;
            if verb == "length-identity" {
                Verify::LengthIdentity(x, ideal, range)
            } else {
                Verify::HkProduct(x, ideal, range)
            }
        }
        "kunz-inequality" => {
            let x = extension(s, args)?;
            Verify::Kunz(x, e_range(args)?)
        }
        "tight-extension" => {
            let x = extension(s, args)?;
            let ideal = s.resolve_ideal(&x.base, &args.req_str("ideal")?)?;
            let strategy = strategy(args, &x.base)?;
            Verify::TightExtension { t: args.uint("t")?.unwrap_or(1), emax: emax(args)?, x, ideal, strategy }
        }
        "strong-test-ideal" => {
            let (ring, ideal) = ring_and_ideal(s, args, "ideal")?;
            let t = s.resolve_ideal(&ring, &args.req_str("T")?)?;
            let strategy = strategy(args, &ring)?;
            Verify::StrongTestIdeal { t, ideal, strategy, emax: emax(args)? }
        }
        "test-exponent-transfer" => {
            let x = extension(s, args)?;
            let ideal = s.resolve_ideal(&x.base, &args.req_str("ideal")?)?;
            let c = poly(&x.base, &args.str("c")?.unwrap_or_else(|| "1".into()))?;
            let strategy = strategy(args, &x.base)?;
            Verify::TestExponentTransfer { emax: emax(args)?, x, c, ideal, strategy }
        }
        "tau-extension" => {
            let x = extension(s, args)?;
            let z = gens(&x.base, &args.req_str("z")?)?;
            let strategy = strategy(args, &x.base)?;
            Verify::TauExtension { tmax: args.u32_or("tmax", 2)?, emax: emax(args)?, x, z, strategy }
        }
        "f-injective" | "f-rational" => {
            let ring = s.resolve_ring(&args.req_str("ring")?)?;
            let z = gens(&ring, &args.req_str("z")?)?;
            if verb == "f-injective" {
                Verify::FInjective(ring, z, emax(args)?)
            } else {
                let strategy = strategy(args, &ring)?;
                Verify::FRational(ring, z, strategy, emax(args)?)
            }
        }
        _ => unreachable!("verbs come from VERBS"),
    })
}

fn verdict_result(ideal: &Ideal, u: &Poly, v: ClosureVerdict, extra: Value) -> TaskResult {
    let ring = ideal.ring();
    let text = format!("{} for {} in {}\n", v.label(), ring.display(u), ideal.display());
    let evidence = v.evidence.iter().map(|r| serde_json::to_value(r).expect("row")).collect();
    let mut payload = json!({
        "ring": ring.describe(),
        "ideal": ideal.display(),
        "element": ring.display(u),
        "verdict": v.label(),
        "detail": v.verdict,
        "unconditional": v.unconditional,
        "notes": v.notes,
    });
    if let (Value::Object(p), Value::Object(e)) = (&mut payload, extra) {
        p.extend(e);
    }
    TaskResult { conditional: !v.unconditional, evidence, ..TaskResult::info(payload, text) }
}

fn report_result(rep: VerificationReport) -> TaskResult {
    let status = match rep.outcome {
        Outcome::Pass => Status::Pass,
        Outcome::ConditionalPass => Status::ConditionalPass,
        Outcome::Fail => Status::Fail,
        Outcome::PreconditionFailed => Status::PreconditionFailed,
    };
    let evidence = rep.records.iter().map(|r| serde_json::to_value(r).expect("record")).collect();
    TaskResult {
        status,
        conditional: rep.conditional,
        evidence,
        text: rep.to_text(),
        payload: serde_json::to_value(&rep).expect("report"),
        diagnostic: None,
        csv: None,
    }
}

impl Job {
    pub(crate) fn label(&self) -> String {
        match self {
            Job::Gb(_) => "gb".into(),
            Job::Nf(..) => "nf".into(),
            Job::Member(..) => "member".into(),
            Job::Fpower(..) => "fpower".into(),
            Job::Fclosure(..) => "fclosure".into(),
            Job::Tclosure { .. } => "tclosure".into(),
            Job::Hk(..) => "hk".into(),
            Job::Tau { .. } => "tau".into(),
            Job::Socle(_) => "socle".into(),
            Job::Dim(_) => "dim".into(),
            Job::Verify(v, _) => format!("verify {v}"),
        }
    }

    /// `verify-<verb>` under the canonical name or any alias.
    pub(crate) fn matches_verb(&self, filter: &str) -> bool {
        match self {
            Job::Verify(v, _) => filter.strip_prefix("verify-").and_then(canonical_verb) == Some(*v),
            _ => false,
        }
    }

    pub(crate) fn execute(&self) -> TaskResult {
        match self.run() {
            Ok(r) => r,
            Err(e) => {
                let d = Diagnostic::from(e);
                TaskResult {
                    status: Status::Error,
                    conditional: false,
                    payload: Value::Null,
                    evidence: Vec::new(),
                    text: String::new(),
                    diagnostic: Some(d),
                    csv: None,
                }
            }
        }
    }

    fn run(&self) -> Result<TaskResult> {
        Ok(match self {
            Job::Gb(i) => {
                let gb = i.groebner_text()?;
                let text = format!("{}\n", gb.join("\n"));
                TaskResult::info(json!({"ring": i.ring().describe(), "ideal": i.display(), "groebner_basis": gb}), text)
            }
            Job::Nf(i, f) => {
                let nf = i.ring().display(&i.normal_form(f)?);
                TaskResult::info(json!({"ideal": i.display(), "element": i.ring().display(f), "normal_form": nf}), format!("{nf}\n"))
            }
            Job::Member(i, f) => {
                let m = i.contains(f)?;
                TaskResult::info(json!({"ideal": i.display(), "element": i.ring().display(f), "member": m}), format!("{m}\n"))
            }
            Job::Fpower(i, q) => {
                let iq = frobenius_power(i, *q)?;
                let gb = iq.groebner_text()?;
                TaskResult::info(
                    json!({"ideal": i.display(), "e": q.e, "q": q.q, "generators": iq.gens_text(), "groebner_basis": gb}),
                    format!("{}\n", iq.display()),
                )
            }
            Job::Fclosure(i, u, emax) => verdict_result(i, u, frobenius_closure_test(u, i, *emax)?, json!({"emax": emax})),
            Job::Tclosure { ideal, u, strategy, cert, emax } => {
                let te = strategy.resolve(ideal.ring())?;
                let v = tight_closure_test(u, ideal, strategy, cert.as_ref(), *emax)?;
                verdict_result(ideal, u, v, json!({"emax": emax, "test_element": te}))
            }
            Job::Hk(i, emax) => {
                let t = hilbert_kunz(i, *emax)?;
                let last = t.last_ratio().map(|r| r.to_string());
                let csv = t.to_csv();
                let payload = json!({"ideal": i.display(), "d": t.d, "rows": t.rows_text(), "last_ratio": last});
                TaskResult { csv: Some(csv.clone()), ..TaskResult::info(payload, csv) }
            }
            Job::Tau { ring, z, tmax, strategy, emax } => {
                let tau = tau_truncated(ring, z, *tmax, strategy, *emax)?;
                let levels = tau.levels_text()?;
                let mut text = String::new();
                for l in &levels {
                    text.push_str(&format!("t={}: tau = {}\n", l.t, l.tau));
                }
                let payload = json!({
                    "ring": ring.describe(),
                    "levels": levels,
                    "stabilized_at": tau.stabilized_at,
                    "unconditional": tau.unconditional(),
                });
                TaskResult { conditional: !tau.unconditional(), ..TaskResult::info(payload, text) }
            }
            Job::Socle(i) => {
                let soc: Vec<String> = socle(i)?.iter().map(|f| i.ring().display(f)).collect();
                let irr = is_irreducible(i)?;
                let text = format!("socle = {{{}}}, irreducible = {irr}\n", soc.join(", "));
                TaskResult::info(json!({"ideal": i.display(), "socle": soc, "irreducible": irr}), text)
            }
            Job::Dim(i) => {
                let d = krull_dim(i)?;
                TaskResult::info(json!({"ring": i.ring().describe(), "ideal": i.display(), "dim": d}), format!("{d}\n"))
            }
            Job::Verify(_, v) => report_result(match v {
                Verify::LengthIdentity(x, i, r) => check_length_identity(x, i, r.clone())?,
                Verify::HkProduct(x, i, r) => check_hk_multiplicativity(x, i, r.clone())?,
                Verify::Kunz(x, r) => check_kunz_inequality(x, r.clone())?,
                Verify::TightExtension { x, ideal, t, strategy, emax } => {
                    check_tightly_closed_extension(x, ideal, *t, strategy, *emax)?
                }
                Verify::StrongTestIdeal { t, ideal, strategy, emax } => strong_test_ideal_check(t, ideal, strategy, *emax)?,
                Verify::TestExponentTransfer { x, c, ideal, strategy, emax } => {
                    check_test_exponent_transfer(x, c, ideal, strategy, *emax)?
                }
                Verify::TauExtension { x, z, tmax, strategy, emax } => check_tau_extension(x, z, *tmax, strategy, *emax)?,
                Verify::FInjective(ring, z, emax) => f_injectivity_check(ring, z, *emax)?,
                Verify::FRational(ring, z, strategy, emax) => f_rationality_check(ring, z, strategy, *emax)?,
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verb_aliases_resolve() {
        assert_eq!(canonical_verb("prop5.7"), Some("length-identity"));
        assert_eq!(canonical_verb("f-rational"), Some("f-rational"));
        assert_eq!(canonical_verb("nope"), None);
    }
}
