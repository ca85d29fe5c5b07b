use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let files = [
            ("sl2.json", r#"{"labels": ["1"], "bilinear": [[2]]}"#),
            ("a2.json", r#"{"labels": ["1", "2"], "bilinear": [[2, -1], [-1, 2]]}"#),
            ("b2.json", r#"{"labels": ["1", "2"], "bilinear": [[2, -2], [-2, 4]]}"#),
            ("bad.json", r#"{"labels": ["1"], "bilinear": [[3]]}"#),
        ];
        for (name, text) in files {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_klr"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn assert_error(o: &Output, code: i32, kind: &str) {
    assert_eq!(o.status.code(), Some(code), "stderr: {}", stderr(o));
    let err = stderr(o);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 1, "{err}");
    assert!(lines[0].starts_with(&format!("ERROR {kind} ")), "{err}");
}

#[test]
fn documented_examples() {
    let f = Fixture::new();
    let o = f.run(&["crystal", "mult", "--datum", "a2.json", "--lambda", "1,1", "--nu", "1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2\n");

    let o = f.run(&["klr", "cyclotomic-dim", "--datum", "sl2.json", "--lambda", "2", "--nu", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4\n");

    let o = f.run(&["klr", "cyclotomic-dim", "--datum", "sl2.json", "--lambda", "2", "--nu", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "nu,lambda,dim,graded_dim\n2,2,4,-2:1;0:2;2:1\n");

    let o = f.run(&["char", "serre", "--datum", "a2.json", "--i", "1", "--j", "2", "--c", "2", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn usage_errors_exit_one() {
    let f = Fixture::new();
    assert_error(&f.run(&["crystal", "mult", "--datum", "a2.json", "--lambda", "1,1", "--nu", "1,-1"]), 1, "usage");
    assert_error(&f.run(&["crystal", "mult", "--lambda", "1,1", "--nu", "1,1"]), 1, "usage");
    assert_error(&f.run(&["crystal", "verify", "--datum", "a2.json", "--suite", "nope"]), 1, "usage");
    assert_error(&f.run(&["klr", "dim", "--datum", "a2.json", "--src", "1,2", "--dst", "1,1"]), 1, "usage");
    assert_error(&f.run(&["datum", "validate", "--datum", "bad.json"]), 1, "datum");
    assert_error(&f.run(&["datum", "validate", "--datum", "missing.json"]), 1, "io");
}

#[test]
fn caps_exit_two() {
    let f = Fixture::new();
    let o = f.run(&["klr", "cyclotomic-dim", "--datum", "sl2.json", "--lambda", "3", "--nu", "1", "--max-dot", "1"]);
    assert_error(&o, 2, "cap");
}

#[test]
fn character_json_round_trips() {
    let f = Fixture::new();
    let o = f.run(&["char", "simple", "--datum", "a2.json", "--i", "1", "--j", "2", "--c", "2", "--n", "1", "--format", "json"]);
    assert!(o.status.success());
    let ch = f.write("ch.json", &stdout(&o));
    let one = f.write("one.json", r#"{"terms": [{"word": [], "coeff": {"0": 1}}]}"#);
    let o2 = f.run(&[
        "char", "shuffle", "--datum", "a2.json", "--left", ch.to_str().unwrap(), "--right", one.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(stdout(&o), stdout(&o2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu"]["1"], 2);

    let o = f.run(&["char", "stats", "--datum", "a2.json", "--input", "ch.json", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["1"]["eps"], 1);
    assert_eq!(v["1"]["eps_vee"], 2);
    let o = f.run(&["char", "serre", "--datum", "a2.json", "--i", "1", "--j", "2", "--c", "2", "--input", "ch.json"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn klr_multiply_and_element_round_trip() {
    let f = Fixture::new();
    f.write("x1.json", r#"{"terms": [{"word": ["1", "1"], "dots": [1, 0], "coeff": "1"}]}"#);
    f.write("psi.json", r#"{"terms": [{"word": ["1", "1"], "perm": [1], "coeff": "1"}]}"#);
    let o = f.run(&["klr", "multiply", "--datum", "sl2.json", "--left", "x1.json", "--right", "psi.json", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let prod = f.write("prod.json", &stdout(&o));
    f.write("one.json", r#"{"terms": [{"word": ["1", "1"]}]}"#);
    let o2 = f.run(&[
        "klr", "multiply", "--datum", "sl2.json", "--left", "one.json", "--right", prod.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(stdout(&o), stdout(&o2));

    let o = f.run(&["klr", "multiply", "--datum", "sl2.json", "--left", "psi.json", "--right", "psi.json"]);
    assert_eq!(stdout(&o), "0\n");
    f.write("mixed.json", r#"{"terms": [{"word": ["1"]}]}"#);
    assert_error(&f.run(&["klr", "multiply", "--datum", "sl2.json", "--left", "mixed.json", "--right", "psi.json"]), 1, "input");
}

#[test]
fn klr_dim_and_nilpotency() {
    let f = Fixture::new();
    let o = f.run(&["klr", "dim", "--datum", "sl2.json", "--src", "1", "--dst", "1", "--max-deg", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"0": 1, "2": 1, "4": 1}));
    let o = f.run(&["klr", "nilpotency", "--datum", "sl2.json", "--lambda", "2", "--nu", "1", "--r", "1"]);
    assert_eq!(stdout(&o), "2\n");
    let o = f.run(&["klr", "nilpotency", "--datum", "a2.json", "--lambda", "1,0", "--nu", "1,1", "--format", "csv"]);
    assert_eq!(stdout(&o), "strand,nilpotency\n1,1\n2,1\n");
    assert_error(&f.run(&["klr", "nilpotency", "--datum", "sl2.json", "--lambda", "2", "--nu", "1", "--r", "2"]), 1, "usage");
}

#[test]
fn crystal_outputs_are_deterministic() {
    let f = Fixture::new();
    let args = ["crystal", "graph", "--datum", "b2.json", "--depth", "3", "--format", "dot"];
    let a = f.run(&args);
    let b = f.run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph"));

    let o = f.run(&["crystal", "graph", "--datum", "a2.json", "--lambda", "1,0", "--format", "dot"]);
    let text = stdout(&o);
    assert_eq!(text.matches("->").count(), 2);

    let o = f.run(&["crystal", "graph", "--datum", "a2.json", "--lambda", "1,1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());

    let o = f.run(&["crystal", "mult", "--datum", "a2.json", "--lambda", "1,1"]);
    let text = stdout(&o);
    assert!(text.starts_with("weight_coords,count\n"));
    assert!(text.contains("1;1,2"));

    let o = f.run(&["crystal", "graph", "--datum", "a2.json", "--lambda", "1,1", "--depth", "1"]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("WARNING incomplete"));
}

#[test]
fn verify_reports_and_output_file() {
    let f = Fixture::new();
    let out = f.path("report.txt");
    let o = f.run(&["crystal", "verify", "--datum", "a2.json", "--depth", "3", "--output", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(Path::new(&out)).unwrap();
    for suite in ["C", "KS", "PSI", "JUMP", "EPSJUMP", "PHI"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{suite} PASS"))), "{text}");
    }
    let o = f.run(&["crystal", "verify", "--datum", "a2.json", "--lambda", "1,1", "--suite", "C,KS", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0]["passed"].as_bool().unwrap());
}

#[test]
fn datum_validate_json() {
    let f = Fixture::new();
    let o = f.run(&["datum", "validate", "--datum", "b2.json", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cartan"], serde_json::json!([[2, -2], [-1, 2]]));
    assert_eq!(v["finite"], true);
}
