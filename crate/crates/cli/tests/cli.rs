use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwl")).args(args).output().unwrap()
}

fn cwl_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cwl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const UNKNOT_ZERO: &str = r#"{"components":1,"linking":[[0]],"slopes":[{"p":0,"q":1}],"a1hat":{"0":0}}"#;

#[test]
fn lambda_from_stdin() {
    let o = cwl_stdin(&["lambda", "-", "--walker"], UNKNOT_ZERO);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("lambda = -1/12\nlambda_w = undefined"));
}

#[test]
fn lambda_json_and_walker() {
    let file = r#"{"components":1,"linking":[[0]],"slopes":[{"p":5,"q":2}],"a1hat":{"0":3}}"#;
    let o = cwl_stdin(&["lambda", "-", "--walker", "--json"], file);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["lambda"].is_string() && v["lambda_w"].is_string());
    assert!(v["evaluations"].as_array().unwrap().iter().any(|e| e["formula"] == "boyer-lines"));
}

#[test]
fn lambda_from_pd_sublinks() {
    // whitehead given only by its diagram; the component data are derived
    let pd = cwl_core::conway::builtin_pd("whitehead", None).unwrap().to_string();
    let file = format!(
        r#"{{"components":2,"linking":[[0,0],[0,0]],"slopes":[{{"p":3,"q":2}},{{"p":0,"q":1}}],"pd":{{"0,1":"{pd}"}}}}"#
    );
    let o = cwl_stdin(&["lambda", "-"], &file);
    assert!(o.status.success(), "{}", stderr(&o));
    // sign(p0)(-q0 - p0/12) at 3/2
    assert!(stdout(&o).starts_with("lambda = -9/4\n"), "{}", stdout(&o));
}

#[test]
fn conway_builtins_and_pd() {
    let o = cwl(&["conway", "--name", "L_m", "--param", "-2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("nabla       -2z^3"));
    let o = cwl(&["conway", "--pd", "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"]);
    assert!(stdout(&o).contains("nabla       1 + z^2"), "{}", stdout(&o));
}

#[test]
fn cosmetic_verdicts() {
    let o = cwl(&["cosmetic", "--mode", "thm3", "--name", "whitehead", "--q0", "3", "--q0p", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("no purely cosmetic surgeries"));
    assert!(out.contains("lambda(+1/3) - lambda(M) = -3"), "{out}");
    let o = cwl(&["cosmetic-scan", "--mode", "thm5", "--name", "borromean", "--grid", "2", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "thm5");
}

#[test]
fn exit_codes() {
    // validation
    let o = cwl(&["conway", "--name", "no-such-link"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such-link"));
    let o = cwl(&["conway", "--pd", "X[1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cwl_stdin(&["lambda", "-"], r#"{"components":1,"linking":[[0]],"slopes":[{"p":2,"q":4}],"a1hat":{"0":0}}"#);
    assert_eq!(o.status.code(), Some(2));
    let o = cwl_stdin(&["lambda", "-", "--formula", "two"], UNKNOT_ZERO);
    assert_eq!(o.status.code(), Some(2));
    // missing component data
    let o = cwl_stdin(
        &["lambda", "-"],
        r#"{"components":2,"linking":[[0,1],[1,0]],"slopes":[{"p":1,"q":1},{"p":2,"q":1}],"a1hat":{"0":0,"1":0}}"#,
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    // a deliberately broken evaluator
    let o = cwl(&["verify", "--seed", "1", "--cases", "10", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_is_deterministic() {
    let a = cwl(&["verify", "--seed", "5", "--cases", "20", "--threads", "1"]);
    let b = cwl(&["verify", "--seed", "5", "--cases", "20", "--threads", "4"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}
