use frobpow::session::{Session, Status};
use serde_json::{json, Value};

const VERIFICATION: &str = include_str!("../../../sessions/verification.json");
const SCHEMA: &str = include_str!("../../../docs/report.schema.json");

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn load(v: Value) -> Result<Session, frobpow::session::Diagnostic> {
    Session::from_json(&v.to_string(), &[])
}

fn assert_valid(report: &Value) {
    let errors: Vec<String> = validator().iter_errors(report).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn verification_session_validates_against_schema() {
    let s = Session::from_json(VERIFICATION, &[]).unwrap();
    let out = s.run(None, false).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.text);
    assert_valid(&serde_json::to_value(&out.envelope).unwrap());
    assert_valid(&serde_json::to_value(out.envelope.without_timing()).unwrap());
}

#[test]
fn error_reports_validate_against_schema() {
    let s = load(json!({
        "tasks": [{ "id": "big", "command": "hk", "ring": "plane7", "ideal": "m", "emax": 3 }],
        "limits": "basis=1000"
    }))
    .unwrap();
    let out = s.run(None, false).unwrap();
    assert_eq!(out.exit_code, 1);
    let t = &out.envelope.tasks[0];
    assert_eq!(t.status, Status::Error);
    assert_eq!(t.diagnostic.as_ref().unwrap().code, "E007");
    assert_valid(&serde_json::to_value(&out.envelope).unwrap());
}

#[test]
fn sequential_and_parallel_runs_agree() {
    let s = Session::from_json(VERIFICATION, &[]).unwrap();
    let a = s.run(None, false).unwrap().envelope.without_timing().to_json();
    let b = s.run(None, true).unwrap().envelope.without_timing().to_json();
    assert_eq!(a, b);
}

#[test]
fn task_filter_accepts_ids_commands_and_verbs() {
    let s = Session::from_json(VERIFICATION, &[]).unwrap();
    let ids = |f: &str| s.run(Some(f), false).unwrap().envelope.tasks.iter().map(|t| t.id.clone()).collect::<Vec<_>>();
    assert_eq!(ids("hk"), vec!["hk"]);
    assert_eq!(ids("verify-length-identity"), vec!["length-artinian", "length-nodal"]);
    assert_eq!(ids("verify-prop5.7"), ids("verify-length-identity"));
    assert_eq!(ids("tau"), vec!["fermat7-tau"]);
    assert_eq!(ids("tclosure"), vec!["fermat7-tclosure", "regular-certificate"]);
    assert_eq!(s.run(Some("nothing"), false).err().unwrap().code, "E003");
}

#[test]
fn hk_task_emits_csv() {
    let s = Session::from_json(VERIFICATION, &[]).unwrap();
    let out = s.run(Some("hk"), false).unwrap();
    assert_eq!(out.csv, vec![("hk".to_string(), "e,q,length,ratio_num,ratio_den\n0,1,1,1,1\n1,5,25,1,1\n2,25,625,1,1\n".to_string())]);
}

#[test]
fn validation_errors_carry_distinct_codes() {
    let code = |v: Value| load(v).err().map(|d| d.code).unwrap_or("none");
    assert_eq!(code(json!({ "tasks": [{ "id": "a", "command": "dim", "ring": "missing" }] })), "E003");
    assert_eq!(code(json!({ "rings": [{ "name": "r", "ring": "GF(2)[x]" }, { "name": "r", "ring": "GF(3)[x]" }] })), "E004");
    assert_eq!(code(json!({ "tasks": [{ "id": "a", "command": "dim", "ring": "plane2", "bogus": 1 }] })), "E005");
    assert_eq!(code(json!({ "tasks": [{ "id": "a", "command": "frobnicate" }] })), "E005");
    assert_eq!(code(json!({ "tasks": [{ "id": "a", "command": "dim", "ring": "GF(4)[x]" }] })), "E006");
    assert_eq!(code(json!({ "tasks": [{ "id": "a", "command": "nf", "ring": "plane2", "ideal": "m", "elem": "x+" }] })), "E006");
    assert_eq!(
        code(json!({ "tasks": [{ "id": "a", "command": "tclosure", "ring": "fermat7", "ideal": "xy", "elem": "z", "test_element": "x^3+y^3+z^3+x" }] })),
        "none",
    );
    assert_eq!(code(json!({ "unknown": [] })), "E002");
    assert!(Session::from_json("{", &[]).err().unwrap().to_string().starts_with("error[E002] malformed session"));
    assert_eq!(code(json!({ "limits": "basis=lots" })), "E005");
}

#[test]
fn zero_divisor_test_element_is_rejected() {
    let d = load(json!({
        "tasks": [{ "id": "a", "command": "tclosure", "ring": "node3", "ideal": "(u+v)", "elem": "u", "test_element": "u" }]
    }))
    .err()
    .unwrap();
    assert_eq!(d.code, "E009", "{d}");
}

#[test]
fn missing_ring_reports_unresolved_reference() {
    let d = load(json!({ "tasks": [{ "id": "t", "command": "gb", "ring": "nowhere", "ideal": "m" }] })).err().unwrap();
    assert_eq!(d.to_string(), "error[E003] unresolved reference: task `t`: ring `nowhere`");
}

#[test]
fn expectations_decide_pass_and_fail() {
    let s = load(json!({
        "tasks": [
            { "id": "ok", "command": "member", "ring": "plane3", "ideal": "xy", "elem": "x*y" },
            { "id": "neg", "command": "verify", "verb": "f-injective", "ring": "fermat2", "z": "(x, y)", "expect": "fail" },
            { "id": "wrong", "command": "verify", "verb": "f-injective", "ring": "fermat2", "z": "(x, y)" }
        ]
    }))
    .unwrap();
    let out = s.run(None, false).unwrap();
    let passed: Vec<bool> = out.envelope.tasks.iter().map(|t| t.passed).collect();
    assert_eq!(passed, vec![true, true, false]);
    assert_eq!(out.exit_code, 2);
    assert_eq!(out.envelope.summary.failed, 1);
}

#[test]
fn named_objects_resolve() {
    let s = load(json!({
        "rings": [{ "name": "A", "ring": "GF(3)[a,b]" }],
        "ideals": [{ "name": "I", "ring": "A", "gens": "(a^2, b^2)" }],
        "extensions": [{ "name": "X", "base": "A", "fiber": "GF(3)[w]", "z": "(w)" }],
        "tasks": [
            { "id": "socle", "command": "socle", "ring": "A", "ideal": "I" },
            { "id": "len", "command": "verify", "verb": "length-identity", "extension": "X", "ideal": "I", "e_max": 2 }
        ]
    }))
    .unwrap();
    let out = s.run(None, false).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.text);
    assert_eq!(out.envelope.tasks[0].payload["socle"], json!(["a*b"]));
    assert_eq!(out.envelope.tasks[1].evidence.len(), 2);
}

#[test]
fn cap_overrides_apply_after_file_limits() {
    let v = json!({ "limits": "basis=10", "tasks": [{ "id": "h", "command": "hk", "ring": "plane3", "ideal": "m", "emax": 2 }] });
    let tight = load(v.clone()).unwrap().run(None, false).unwrap();
    assert_eq!(tight.exit_code, 1);
    let loose = Session::from_json(&v.to_string(), &["basis=1000".into()]).unwrap().run(None, false).unwrap();
    assert_eq!(loose.exit_code, 0);
}
