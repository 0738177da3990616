use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use diversify::io::plan_from_json;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diversify"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: TempDir::new().unwrap() }
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, body).unwrap();
        path
    }

    fn weights(&self, name: &str, weights: &[&str]) -> String {
        let quoted: Vec<String> = weights.iter().map(|w| format!("\"{w}\"")).collect();
        let path = self.write(name, &format!("{{\"weights\": [{}]}}", quoted.join(",")));
        path.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn compare_reports_relation_and_preference() {
    let f = Files::new();
    let u3 = f.weights("u3.json", &["1/3", "1/3", "1/3"]);
    let lam = f.weights("lam.json", &["1/2", "1/3", "1/6"]);
    let out = run(&["compare", &u3, &lam]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("FirstPreferred"));

    let out = run(&["--format", "json", "compare", &lam, &lam]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["preference"], "Indifferent");
    assert_eq!(v["relation"], "EqualUpToPermutation");

    let u2 = f.weights("u2.json", &["1/2", "1/2"]);
    let out = run(&["compare", &u2, &u3, "--lorenz"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("EqualUpToPermutation"));

    let a = f.weights("a.json", &["3/5", "1/5", "1/5"]);
    let b = f.weights("b.json", &["1/2", "9/20", "1/20"]);
    let out = run(&["compare", &a, &b]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("DependsOnAlternatives"));
}

#[test]
fn measures_at_configured_precision() {
    let f = Files::new();
    let lam = f.weights("lam.json", &["1/2", "1/3", "1/6"]);
    let out = run(&["--precision", "6", "measures", &lam, "--measure", "hhi,hoover"]);
    let text = stdout(&out);
    assert!(text.contains("0.083333"), "{text}");
    assert!(text.contains("0.166667"), "{text}");

    let out = run(&["--format", "csv", "measures", &lam, "--measure", "hhi,gini_mean_diff"]);
    assert_eq!(stdout(&out), "measure,value\n\"hhi\",1/12\n\"gini_mean_diff\",4/27\n");

    let u = f.weights("u.json", &["1/4", "1/4", "1/4", "1/4"]);
    let out = run(&["--format", "json", "measures", &u]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for name in ["stddev", "variance", "coeff_variation", "entropy_index", "hhi", "hoover", "gini_mean_diff"] {
        let value = &v[name];
        let zero = value.as_f64().map(|x| x.abs() < 1e-12).unwrap_or_else(|| value == "0");
        assert!(zero, "{name}: {value}");
    }
}

#[test]
fn rebalance_plans_round_trip() {
    let f = Files::new();
    let lam = f.weights("lam.json", &["1/2", "1/3", "1/6"]);
    let out = run(&["rebalance", &lam]);
    assert!(out.status.success());
    let plan = plan_from_json(&stdout(&out)).unwrap();
    assert_eq!(plan.steps.len(), 1);
    assert_eq!(plan.turnover, diversify::parse_rational("1/6").unwrap());
    assert!(plan.verify().unwrap());

    let u = f.weights("u.json", &["1/4", "1/4", "1/4", "1/4"]);
    let v: Value = serde_json::from_slice(&run(&["rebalance", &u]).stdout).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 0);
    assert_eq!(v["turnover"], "0");

    let b = f.weights("b.json", &["7/10", "1/5", "1/10"]);
    let out_path = f.path("plan.json");
    let out = run(&["rebalance", &b, "--cost-rate", "0.01", "--out", p(&out_path)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&out_path).unwrap();
    let plan = plan_from_json(&text).unwrap();
    assert_eq!(plan.steps.len(), 2);
    assert_eq!(plan.turnover, diversify::parse_rational("11/30").unwrap());
    assert!(plan.verify().unwrap());
    assert_eq!(diversify::io::plan_to_json(&plan) + "\n", text);

    let out = run(&["rebalance", &b, "--target", &lam]);
    let plan = plan_from_json(&stdout(&out)).unwrap();
    assert!(plan.verify().unwrap());
    assert!(plan.practical_turnover.is_none());
}

#[test]
fn lorenz_csv_breakpoints() {
    let f = Files::new();
    let lam = f.weights("lam.json", &["1/2", "1/3", "1/6"]);
    let out = run(&["lorenz", &lam]);
    assert_eq!(stdout(&out), "t,L(t)\n0,0\n1/3,1/6\n2/3,1/2\n1,1\n");
    let e = f.write("e.csv", "label,weight\nx,1\ny,0\n");
    let out = run(&["lorenz", p(&e), "--points", "1/4"]);
    assert_eq!(stdout(&out), "t,L(t)\n0,0\n1/4,0\n1/2,0\n1,1\n");
    let u = f.weights("u.json", &["1/4", "1/4", "1/4", "1/4"]);
    let out = run(&["lorenz", &u, "--points", "0.1"]);
    assert!(stdout(&out).contains("1/10,1/10\n"));
}

#[test]
fn axiom_reports() {
    let out = run(&["axioms", "--measure", "hhi", "--samples", "300"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["samples"], 300);
    assert_eq!(v["seed"], 42);

    let out = run(&["axioms", "--measure", "entropy_index", "--samples", "300", "--seed", "7"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_passed"], true);

    let out = run(&["axioms", "--measure", "log_sd", "--samples", "500"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let a4 = &v["axioms"]["A4_representation"];
    assert_eq!(a4["passed"], false);
    assert_eq!(a4["counterexample"].as_array().unwrap().len(), 2);

    let out = run(&["axioms", "--measure", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn aversion_values() {
    let f = Files::new();
    let u = f.weights("u.json", &["1/3", "1/3", "1/3"]);
    let out = run(&["--format", "json", "aversion", "--d", &u]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["epsilon_squared"], "0");
    assert_eq!(v["epsilon"], 0.0);
    let d = f.weights("d.json", &["1/2", "1/4", "1/4"]);
    let text = stdout(&run(&["aversion", "--d", &d]));
    assert!(text.contains("1/24") && text.contains("0.204124145231932"), "{text}");
    let e = f.weights("e.json", &["1", "0"]);
    assert!(stdout(&run(&["aversion", "--d", &e])).contains("0.707106781186548"));
}

#[test]
fn schur_and_multivariate_checks() {
    let out = run(&["--format", "json", "schur-check", "--measure", "stddev"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schur_concave"], true);
    assert_eq!(v["points"], 200);

    let f = Files::new();
    let point = f.weights("pt.json", &["1/2", "3/10", "1/5"]);
    let out = run(&["--format", "json", "schur-check", "--measure", "entropy", "--point", &point]);
    assert_eq!(serde_json::from_slice::<Value>(&out.stdout).unwrap()["passed"], 1);

    let y = f.write("y.json", r#"{"entries": [["1/2","1/3","1/6"], ["1","0","0"]]}"#);
    let x = f.write("x.json", r#"{"entries": [["1/3","1/3","1/3"], ["1/3","1/3","1/3"]]}"#);
    let out = run(&["--format", "json", "multi-check", p(&x), p(&y)]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);

    let out = run(&["--format", "json", "multi-check", p(&y), p(&x)]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["feasible"], false);
    assert!(out.status.success());

    let bad = f.write("bad.json", r#"{"entries": [["1/2","1/2"]]}"#);
    assert_eq!(run(&["multi-check", p(&bad), p(&y)]).status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let f = Files::new();
    let lam = f.weights("lam.json", &["1/2", "1/3", "1/6"]);
    let cases: [&[&str]; 4] = [
        &["axioms", "--measure", "log_sd", "--samples", "200", "--seed", "9"],
        &["--format", "json", "schur-check", "--measure", "log_sd", "--seed", "3"],
        &["rebalance", &lam, "--cost-rate", "0.005"],
        &["measures", &lam],
    ];
    for args in cases {
        let (a, b) = (run(args), run(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let u3 = f.weights("u3.json", &["1/3", "1/3", "1/3"]);
    let lam = f.weights("lam.json", &["1/2", "1/3", "1/6"]);
    let u2 = f.weights("u2.json", &["1/2", "1/2"]);
    let bad_sum = f.weights("bad.json", &["1/2", "1/3"]);
    let garbage = f.write("garbage.json", "not json");
    let no_header = f.write("nohead.csv", "a,1/2\nb,1/2\n");

    assert_eq!(run(&["rebalance", &u3, "--target", &lam]).status.code(), Some(2));
    assert_eq!(run(&["rebalance", &lam, "--target", &u2]).status.code(), Some(1));
    assert_eq!(run(&["compare", &u3, &bad_sum]).status.code(), Some(1));
    assert_eq!(run(&["compare", &u3, p(&garbage)]).status.code(), Some(1));
    assert_eq!(run(&["compare", &u3, p(&no_header)]).status.code(), Some(1));
    assert_eq!(run(&["compare", &u3, "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["compare", &u2, &u3]).status.code(), Some(1));
    assert_eq!(run(&["measures", &lam, "--measure", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["--precision", "0", "measures", &lam]).status.code(), Some(1));
    assert_eq!(run(&["--bogus", "measures", &lam]).status.code(), Some(1));
    assert_eq!(run(&["lorenz", &lam, "--points", "3/2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
