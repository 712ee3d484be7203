use std::fs;

use nctorus::cli::run_with;
use serde_json::Value;

fn nct(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nct").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn certify_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = nct(&["gclass", "certify", "-k", "1", "-m", "3", "--kappa1", "3/4", "--kappa2", "1/2", "-o", p]);
    assert_eq!(code, 0, "{out}");
    let cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["overall"], Value::Bool(true));
    assert_eq!(cert["derived"]["A"], "239");
    assert_eq!(cert["tau0"]["const"], "8604/1");
    assert_eq!(cert["tau0"]["theta"], "-13464/1");
    assert_eq!(cert["chern"]["e_q_minus"]["top"]["p22"], "1/1");
}

#[test]
fn certificate_bytes_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let (code, _, _) = nct(&["gclass", "certify", "--grid", "--max", "9", "-o", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let all: Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    let seeds: Vec<(String, String)> = all
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["seed"]["k"].as_str().unwrap().into(), c["seed"]["m"].as_str().unwrap().into()))
        .collect();
    assert_eq!(seeds.first().unwrap(), &("1".to_string(), "3".to_string()));
    assert!(seeds.iter().all(|(_, m)| m.parse::<i64>().unwrap() % 2 == 1));
}

#[test]
fn failed_verification_still_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let (code, out, _) =
        nct(&["gclass", "certify", "-k", "1", "-m", "3", "--kappa1", "99/100", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    let cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["overall"], Value::Bool(false));
}

#[test]
fn usage_and_domain_errors_exit_two() {
    assert_eq!(nct(&["matrix", "verify", "-p", "2", "-q", "4"]).0, 2);
    assert_eq!(nct(&["gclass", "derive", "-k", "1", "-m", "2"]).0, 2);
    assert_eq!(nct(&["gclass", "chain", "-k", "1", "-m", "3", "--kappa1", "1/4"]).0, 2);
    assert_eq!(nct(&["gclass", "certify", "-k", "1", "-m", "3", "--kappa2", "x"]).0, 2);
    assert_eq!(nct(&["frobnicate"]).0, 2);
    assert_eq!(nct(&["chern", "top", "--charge", "plus", "-p", "2", "-q", "4"]).0, 2);
    let (code, _, err) = nct(&["expr", "echo", "U + * V"]);
    assert_eq!(code, 2);
    assert!(err.contains("at 4"), "{err}");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = nct(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("gclass"));
}

#[test]
fn traces_check_passes() {
    let (code, out, _) = nct(&["traces", "check", "--window", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn traces_eval_single_kind() {
    let (code, out, _) = nct(&["traces", "eval", "--kind", "t21", "U*V"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("t21: "), "{out}");
    let (code, out, _) = nct(&["traces", "eval", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn expr_echo_normalizes() {
    let (code, out, _) = nct(&["expr", "echo", "V*U"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "ph(1)*U*V");
}

#[test]
fn chern_commands() {
    let (code, out, _) = nct(&["chern", "top", "--charge", "minus", "-a", "1", "-b", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lattice: ok"));
    assert_eq!(nct(&["chern", "crosscheck", "--qmax", "12"]).0, 0);
    assert_eq!(nct(&["chern", "lemma24", "-n", "2", "--kmax", "1", "--window", "3"]).0, 0);
}

#[test]
fn gclass_tables() {
    let (code, out, _) = nct(&["gclass", "derive", "-k", "1", "-m", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("A = 239"));
    assert_eq!(nct(&["gclass", "identities", "-k", "3", "-m", "7"]).0, 0);
    assert_eq!(nct(&["gclass", "chain", "-k", "3", "-m", "7"]).0, 0);
    let (code, out, _) = nct(&["gclass", "interval", "-k", "1", "-m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(73005/114244, 53711/84050)");
    let (code, out, _) = nct(&["gclass", "member", "--theta", "73005/114244", "--kmax", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("no seed"), "open interval excludes its endpoint: {out}");
    let (code, out, _) = nct(&["gclass", "member", "--theta", "7/11", "--kmax", "3"]);
    assert_eq!(code, 0);
    assert!(!out.contains("k=1 m=3"));
    assert_eq!(nct(&["gclass", "cover", "--max", "7"]).0, 0);
}

#[test]
fn matrix_verify_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("w.json");
    let (code, out, _) = nct(&["matrix", "verify", "-p", "1", "-q", "2", "--dump", dump.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let w: Vec<Vec<[f64; 2]>> = serde_json::from_str(&fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(w.len(), 2);
    assert!(w[0][0][0] > 0.0 && w[0][0][1].abs() < 1e-12);
    assert_eq!(nct(&["matrix", "verify", "--qmax", "6"]).0, 0);
}
