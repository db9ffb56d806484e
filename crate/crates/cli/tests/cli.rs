use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ladders(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladders"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn result(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)));
    v["result"].clone()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn workdir() -> TempDir {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("g24.json"), r#"{"kind":"grassmannian","k":2,"N":4}"#).unwrap();
    std::fs::write(d.path().join("cp2.json"), r#"{"kind":"cpn","n":2}"#).unwrap();
    std::fs::write(d.path().join("cp1.json"), r#"{"kind":"cpn","n":1}"#).unwrap();
    d
}

#[test]
fn u_cubed_vanishes_mod_two() {
    let d = workdir();
    let o = ladders(d.path(), &["ring", "power", "--ring", "g24.json", "--class", "s[1]", "--d", "3", "--field", "Fp:2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["power"], "0");
    let o = ladders(
        d.path(),
        &["--format", "table", "ring", "power", "--ring", "g24.json", "--class", "s[1]", "--d", "3", "--field", "Fp:2"],
    );
    assert_eq!(stdout(&o).trim(), "0");
    let o = ladders(d.path(), &["ring", "power", "--ring", "g24.json", "--class", "s[1]", "--d", "3"]);
    assert_eq!(result(&o)["power"], "2*s[2,1]");
}

#[test]
fn cpn_common_augmented_action() {
    let d = workdir();
    let o = ladders(d.path(), &["models", "cpn", "--lambdas", "0,1", "--verify"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["augmented"]["common"], "1/2");
}

#[test]
fn cp2_top_power_wraps() {
    let d = workdir();
    let o = ladders(d.path(), &["ring", "mul", "--ring", "cp2.json", "--a", "u", "--b", "u^2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["product"], "q*1");
    let o = ladders(d.path(), &["--format", "table", "ring", "mul", "--ring", "cp2.json", "--a", "u", "--b", "u^2"]);
    assert_eq!(stdout(&o).trim(), "q*1");
}

#[test]
fn diagnostics_name_the_key() {
    let d = workdir();
    std::fs::write(d.path().join("bad.json"), r#"{"kind":"grassmannian","k":2,"N":"four"}"#).unwrap();
    let o = ladders(d.path(), &["ring", "basis", "--ring", "bad.json"]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`N`"));

    std::fs::write(
        d.path().join("sc.json"),
        r#"{"monotone":{"N":2,"lambda":"-3"},"n":2,"orbits":[{"id":"a","action":"1/7","detla":"1"}],"primes":[11]}"#,
    )
    .unwrap();
    let o = ladders(d.path(), &["carriers", "negmon", "--scenario", "sc.json"]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("orbits[0].detla"));

    let o = ladders(d.path(), &["ring", "mul", "--ring", "cp2.json", "--a", "u^3", "--b", "u"]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--a"));

    let o = ladders(d.path(), &["ring", "frobnicate"]);
    assert_eq!(code(&o), 64);
    let o = ladders(d.path(), &["--help"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn ladder_artifacts_chain_into_carrier_scenarios() {
    let d = workdir();
    let o = ladders(d.path(), &["ladders", "search", "--ring", "cp2.json", "--ell-max", "3", "--out", "decs.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["count"], 9);
    let o = ladders(d.path(), &["ladders", "verify", "--ring", "cp2.json", "--decomposition", "decs.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["valid"], true);
    let o = ladders(d.path(), &["ladders", "build", "--ring", "cp2.json", "--decomposition", "decs.json", "--out", "lad.json"]);
    assert_eq!(code(&o), 0);
    let emitted = result(&o);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("lad.json")).unwrap()).unwrap();
    assert_eq!(emitted, written);

    let o = ladders(d.path(), &["models", "cpn", "--lambdas", "0,1/103,3/103", "--out", "m.json", "--table-out", "t.json"]);
    assert_eq!(code(&o), 0);
    let o = ladders(d.path(), &["models", "verify", "--model", "m.json"]);
    assert_eq!(code(&o), 0);

    let mut sc: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("t.json")).unwrap()).unwrap();
    sc["ladder"] = "lad.json".into();
    std::fs::write(d.path().join("sc.json"), sc.to_string()).unwrap();
    let o = ladders(d.path(), &["carriers", "verify", "--scenario", "sc.json", "--primes-up-to", "30"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = result(&o);
    assert_eq!(r["relation"]["verdict"], "consistent");
    assert_eq!(r["distinctness"]["verdict"], "distinct_by_action");

    let o = ladders(d.path(), &["carriers", "assignments", "--scenario", "sc.json", "--k", "11"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["count"], 1);

    sc["orbits"][1]["action"] = "1/103000".into();
    std::fs::write(d.path().join("perturbed.json"), sc.to_string()).unwrap();
    let o = ladders(d.path(), &["carriers", "verify", "--scenario", "perturbed.json", "--primes-up-to", "30"]);
    assert_eq!(code(&o), 2);
    assert_eq!(result(&o)["relation"]["verdict"], "contradiction");
}

#[test]
fn negative_monotone_exit_codes() {
    let d = workdir();
    std::fs::write(
        d.path().join("neg.json"),
        r#"{"monotone":{"N":2,"lambda":"-3"},"n":2,"orbits":[{"id":"a","action":"1/7","delta":"1"},{"id":"b","action":"2/7","delta":"3/2"}],"primes":[11,13,17]}"#,
    )
    .unwrap();
    let o = ladders(d.path(), &["carriers", "negmon", "--scenario", "neg.json"]);
    assert_eq!(code(&o), 3);
    assert_eq!(result(&o)["outcome"], "no_obstruction");
    let o = ladders(d.path(), &["carriers", "negmon", "--scenario", "neg.json", "--primes-up-to", "3000"]);
    assert_eq!(code(&o), 2);
    assert_eq!(result(&o)["outcome"], "finite_orbit_contradiction");
}

#[test]
fn case_two_gate() {
    let d = workdir();
    let o = ladders(d.path(), &["ladders", "case2", "--ring", "g24.json", "--orbits", "3", "--field", "Fp:2"]);
    assert_eq!(code(&o), 3);
    let o = ladders(d.path(), &["ladders", "case2", "--ring", "g24.json", "--orbits", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result(&o)["parameters"]["d"], 13);
    let o = ladders(d.path(), &["ladders", "case2", "--ring", "g24.json", "--orbits", "3", "--ids", "a,b"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let d = workdir();
    let args = ["ladders", "search", "--ring", "g24.json", "--ell-max", "4", "--nu-max", "2"];
    let a = ladders(d.path(), &args);
    let b = ladders(d.path(), &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["invocation"]["args"][0], "ladders");
}

#[test]
fn csv_and_table_render_the_same_rows() {
    let d = workdir();
    let t = ladders(d.path(), &["--format", "table", "ring", "basis", "--ring", "cp2.json"]);
    let c = ladders(d.path(), &["--format", "csv", "ring", "basis", "--ring", "cp2.json"]);
    assert_eq!(stdout(&c), "label,degree\n1,0\nu,2\nu^2,4\n");
    assert_eq!(stdout(&t).lines().count(), 4);
}
