use std::process::{Command, Output};

use fibcat::cli::{exit_code, run, EXIT_CONVERGENCE, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use fibcat::engine::{verify_identity, VerifyConfig};
use fibcat::seriesdsl::builtin_registry;

fn fibcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcat")).args(args).output().expect("spawn fibcat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const GOOD: &str = r#"
[identity]
id = "t.geo"
kind = "series"
paper = "test"
index = "n"  start = 0
term = "1/2^n"
tail = "geometric ratio=1/2 from=0"
rhs = "2"
"#;

#[test]
fn verify_subset_passes() {
    let o = fibcat(&["verify", "--id", "s5.*"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stdout(&o));
    assert!(stdout(&o).contains("s5.Y.euler"));
}

#[test]
fn printed_glob_selects_misprints_and_fails() {
    let o = fibcat(&["verify", "--id", "s2.*.printed"]);
    assert_eq!(o.status.code(), Some(EXIT_FAIL));
    let text = stdout(&o);
    assert!(text.contains("s2.G2t.sqrt2.printed"));
    assert!(!text.contains("s2.G2t.sqrt2 "));
}

#[test]
fn printed_records_do_not_fail_a_mixed_run() {
    let o = fibcat(&["verify", "--id", "s2.G2t.*", "--include-printed"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    assert!(stdout(&o).contains(".printed"));
}

#[test]
fn json_report_parses() {
    let o = fibcat(&["verify", "--id", "s4.thm.*", "--param", "s=0..2", "--report", "json", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["status"] == "pass" && r["digits_requested"] == 30));
}

#[test]
fn csv_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = fibcat(&["verify", "--kind", "algebraic", "--report", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("id,binding,kind,status,digits_requested,digits_achieved,terms,seconds\n"));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn extra_registry_is_merged() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.reg");
    std::fs::write(&path, GOOD).unwrap();
    let p = path.to_str().unwrap();
    let o = fibcat(&["--registry", p, "--no-builtin", "list"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = fibcat(&["--registry", p, "verify", "--id", "t.*"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
}

#[test]
fn corrupt_registry_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.reg");
    std::fs::write(&path, GOOD.replace("1/2^n", "1/2^")).unwrap();
    let o = fibcat(&["--registry", path.to_str().unwrap(), "list"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.reg"));
    let o = fibcat(&["--registry", "/nonexistent/x.reg", "list"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn duplicate_builtin_id_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.reg");
    std::fs::write(&path, GOOD.replace("t.geo", "s5.Y.euler")).unwrap();
    let o = fibcat(&["--registry", path.to_str().unwrap(), "list"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn convergence_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("slow.reg");
    let divergent = "[identity]\nid = \"t.div\"\nkind = \"constant\"\npaper = \"test\"\nlhs = \"quad(1/x, 0, 1)\"\nrhs = \"2\"\n";
    std::fs::write(&path, format!("{GOOD}\n{divergent}")).unwrap();
    let o = fibcat(&["--registry", path.to_str().unwrap(), "--no-builtin", "verify", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(EXIT_CONVERGENCE), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(fibcat(&["verify", "--digits", "0"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(fibcat(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(fibcat(&["eval", "--id", "nope"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(fibcat(&["eval", "--id", "s5.*"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(fibcat(&["verify", "--param", "s"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn eval_prints_both_sides() {
    let o = fibcat(&["eval", "--id", "s2.G.z15", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let text = stdout(&o);
    assert_eq!(text.matches("1.38196601125010515179541316563").count(), 2, "{text}");
}

#[test]
fn in_process_run_and_help() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["fibcat", "--help"], &mut out, &mut err), EXIT_PASS);
    assert!(String::from_utf8_lossy(&out).contains("verify"));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["fibcat", "list", "--kind", "finite"], &mut out, &mut err), EXIT_PASS);
    assert_eq!(String::from_utf8_lossy(&out).lines().count(), 5);
}

#[test]
fn exit_code_rules() {
    let all = builtin_registry();
    let get = |id: &str| verify_identity(all.iter().find(|r| r.id == id).unwrap(), &VerifyConfig::default());
    let printed = get("s2.G2t.pi3.printed");
    let good = get("s2.G2t.pi3");
    assert_eq!(exit_code(&printed), EXIT_FAIL);
    assert_eq!(exit_code(&[good.clone(), printed].concat()), EXIT_PASS);
    let mut stalled = good[0].clone();
    stalled.convergence_failure = true;
    stalled.status = fibcat::engine::Status::Error;
    let mut wrong = good[0].clone();
    wrong.status = fibcat::engine::Status::Fail;
    assert_eq!(exit_code(&[wrong, stalled]), EXIT_CONVERGENCE);
    assert_eq!(exit_code(&[]), EXIT_PASS);
}
