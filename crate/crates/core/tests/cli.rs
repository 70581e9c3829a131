use std::io::Write;
use std::process::{Command, Output};

const VERIFICATION: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../sessions/verification.json");

fn frobpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobpow")).args(args).env_remove("FROBPOW_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tclosure_reports_evidence() {
    let o = frobpow(&["tclosure", "--ring", "fermat7", "--ideal", "xy", "--elem", "z^2", "--test-element", "z", "--emax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("EvidenceIn(emax=4, c=(z)^1) for z^2 in (x, y)"), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS*]"));
}

#[test]
fn fclosure_finds_frobenius_witness() {
    let o = frobpow(&["fclosure", "--ring", "fermat2", "--ideal", "xy", "--elem", "z^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("InFrobeniusClosure(2)"));
}

#[test]
fn dim_of_node() {
    let o = frobpow(&["dim", "--ring", "GF(2)[u,v]/(u*v)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tasks"][0]["payload"]["dim"], 1);
}

#[test]
fn run_with_csv_filter() {
    let o = frobpow(&["run", VERIFICATION, "--task", "hk", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "e,q,length,ratio_num,ratio_den\n0,1,1,1,1\n1,5,25,1,1\n2,25,625,1,1\n");
}

#[test]
fn run_verb_filter_reports_three_rows() {
    let o = frobpow(&["run", VERIFICATION, "--task", "verify-length-identity", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("timing").is_none());
    let tasks = v["tasks"].as_array().unwrap();
    assert_eq!(tasks[0]["id"], "length-artinian");
    assert_eq!(tasks[0]["status"], "pass");
    assert_eq!(tasks[0]["evidence"].as_array().unwrap().len(), 3);
}

#[test]
fn missing_ring_exits_one() {
    let o = frobpow(&["gb", "--ring", "nowhere", "--ideal", "m"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unresolved reference"));
}

#[test]
fn failed_check_exits_two() {
    let o = frobpow(&["verify", "f-injective", "--ring", "fermat2", "--z", "(x, y)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("(z^2)^2 in (x, y)^[2]"));
}

#[test]
fn cap_flag_and_environment() {
    let args = ["hk", "--ring", "plane3", "--ideal", "m", "--emax", "2"];
    assert_eq!(frobpow(&args).status.code(), Some(0));
    let mut capped: Vec<&str> = args.to_vec();
    capped.extend(["--cap", "basis=10"]);
    assert_eq!(frobpow(&capped).status.code(), Some(1));
    let env = Command::new(env!("CARGO_BIN_EXE_frobpow")).args(args).env("FROBPOW_CAP", "basis=10").output().unwrap();
    assert_eq!(env.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&env.stderr).contains("E007"));
}

#[test]
fn session_names_available_to_subcommands() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{ "rings": [{{ "name": "A", "ring": "GF(5)[a,b]" }}], "ideals": [{{ "name": "I", "ring": "A", "gens": "(a^2, a*b, b^3)" }}] }}"#).unwrap();
    let path = f.path().to_str().unwrap();
    let o = frobpow(&["socle", "--ring", "A", "--ideal", "I", "--session", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("socle = {b^2, a}, irreducible = false"), "{}", stdout(&o));
}

#[test]
fn verify_inline_extension() {
    let o = frobpow(&[
        "verify", "kunz-inequality", "--base", "GF(2)[x]", "--fiber", "GF(2)[u,v]/(u*v)", "--fiber-z", "(u+v)", "--e-max", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("kunz-inequality: Pass"));
}

#[test]
fn malformed_session_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{ not json").unwrap();
    let o = frobpow(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[E002]"));
    let o = frobpow(&["run", "/definitely/not/here.json"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[E001]"));
}
