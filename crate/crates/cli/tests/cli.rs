use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const S2: &str = r#"{
  "states": ["A", "B", "C", "D", "E"],
  "start": "A",
  "accepts": ["A"],
  "transitions": [
    {"from": "A", "label": "a", "to": "B"},
    {"from": "B", "label": "b", "to": "C"},
    {"from": "B", "label": "b", "to": "D"},
    {"from": "C", "label": "c", "to": "B"},
    {"from": "D", "label": "d", "to": "E"},
    {"from": "E", "label": "e", "to": "A"}
  ]
}"#;

const S3: &str = r#"{
  "states": 6,
  "start": 0,
  "accepts": [5],
  "transitions": [
    {"from": 0, "label": "a", "to": 1},
    {"from": 1, "label": "b", "to": 2},
    {"from": 2, "label": "d", "to": 4},
    {"from": 2, "label": "c", "to": 3},
    {"from": 3, "label": "d", "to": 4},
    {"from": 4, "label": "e", "to": 5}
  ]
}"#;

const L1: &str = "a b d e\na b c b c d e\n";
const L2: &str = "a b d e\na b c b c d e\na b c c d e\na f e\na f e\n";

struct Dir(TempDir);

impl Dir {
    fn new() -> Dir {
        let d = Dir(tempfile::tempdir().unwrap());
        d.write("s2.json", S2);
        d.write("s3.json", S3);
        d.write("l1.log", L1);
        d.write("l2.log", L2);
        d
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self) -> &Path {
        self.0.path()
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_entroscope"));
        cmd.current_dir(self.path()).args(args).env_remove("ENTROSCOPE_MAX_ITER");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn precision_and_recall_of_the_running_example() {
    let d = Dir::new();
    let o = d.run(&["precision", "s2.json", "l1.log", "--measure", "eig", "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("precision (eig): 0.661\n"), "{}", stdout(&o));
    let r = json(&d.run(&["recall", "s2.json", "l1.log"]));
    assert!((r["value"].as_f64().unwrap() - 0.897).abs() < 1e-3);
    assert_eq!(r["quantity"], "recall");
    assert_eq!(r["kind"], "short_circuit_eigenvalue");
}

#[test]
fn cardinality_quotients() {
    let d = Dir::new();
    let r = json(&d.run(&["recall", "s3.json", "l2.log", "--measure", "card"]));
    assert_eq!(r["value"].as_f64().unwrap(), 0.25);
    let p = json(&d.run(&["precision", "s3.json", "l2.log", "--measure", "card"]));
    assert_eq!(p["value"].as_f64().unwrap(), 0.5);
}

#[test]
fn exit_codes() {
    let d = Dir::new();
    let o = d.run(&["cardinality", "s2.json"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert_eq!(d.run(&["precision", "s2.json", "l1.log", "--measure", "card"]).status.code(), Some(3));

    d.write("bad.json", "{\"states\": 2, \"start\": 7}");
    let o = d.run(&["inspect", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("start"), "{}", stderr(&o));

    d.write("chi.log", "a __chi__\n");
    assert_eq!(d.run(&["inspect", "chi.log"]).status.code(), Some(2));
    assert_eq!(d.run(&["inspect", "missing.json"]).status.code(), Some(1));
    assert_eq!(d.run(&["precision", "s2.json"]).status.code(), Some(2));
    assert_eq!(d.run(&[]).status.code(), Some(2));
    assert_eq!(d.run(&["eigenvalue", "s2.json", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn coverage_cases() {
    let d = Dir::new();
    let same = json(&d.run(&["coverage", "s2.json", "s2.json"]));
    assert_eq!(same["value"].as_f64().unwrap(), 1.0);
    d.write("inside.log", "a b d e\na b c b d e\n");
    let inside = json(&d.run(&["coverage", "inside.log", "s2.json"]));
    assert_eq!(inside["value"].as_f64().unwrap(), 1.0);
    d.write("other.log", "x y\n");
    let disjoint = json(&d.run(&["coverage", "s2.json", "other.log"]));
    assert_eq!(disjoint["value"].as_f64().unwrap(), 0.0);
}

#[test]
fn inspect_reports_structure() {
    let d = Dir::new();
    let s = json(&d.run(&["inspect", "s2.json"]));
    assert_eq!(s["deterministic"], false);
    assert_eq!(s["ergodic"], true);
    assert_eq!(s["trim"], true);
    assert_eq!(s["finite_language"], false);
    assert_eq!(s["states"], 5);
    let l = json(&d.run(&["inspect", "l2.log"]));
    assert_eq!(l["distinct_traces"], 4);
    assert_eq!(l["total_traces"], 5);
    d.write("empty.log", "");
    let e = json(&d.run(&["inspect", "empty.log"]));
    assert_eq!((e["distinct_traces"].as_u64(), e["total_traces"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn reports_are_byte_identical() {
    let d = Dir::new();
    for format in ["json", "csv", "text"] {
        let a = d.run(&["precision", "s2.json", "l2.log", "--format", format]);
        let b = d.run(&["precision", "s2.json", "l2.log", "--format", format, "--seed", "42"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
    let t = json(&d.run(&["precision", "s2.json", "l2.log", "--timing"]));
    assert!(t["runtime_ms"].is_u64());
    let plain = json(&d.run(&["precision", "s2.json", "l2.log"]));
    assert!(plain["runtime_ms"].is_null());
}

#[test]
fn iteration_cap_precedence_and_non_convergence() {
    let d = Dir::new();
    let o = d.run_env(&["eigenvalue", "s2.json"], &[("ENTROSCOPE_MAX_ITER", "2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    assert_eq!(json(&o)["converged"], false);

    let o = d.run_env(&["eigenvalue", "s2.json", "--max-iter", "100000"], &[("ENTROSCOPE_MAX_ITER", "2")]);
    assert!(stderr(&o).is_empty(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["converged"], true);
    assert!((v["value"].as_f64().unwrap() - 1.5129).abs() < 1e-3);

    let o = d.run_env(&["precision", "s2.json", "l1.log"], &[("ENTROSCOPE_MAX_ITER", "1")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn entropy_and_cardinality() {
    let d = Dir::new();
    let e = json(&d.run(&["entropy", "s2.json"]));
    // the minimal DFA of S2 has characteristic polynomial x^4 - x^2 - 1
    let golden = ((1.0 + 5f64.sqrt()) / 2.0).sqrt();
    assert!((e["eigenvalue"].as_f64().unwrap() - golden).abs() < 1e-6);
    assert_eq!(d.run(&["entropy", "s3.json"]).status.code(), Some(3));
    let c = json(&d.run(&["cardinality", "l2.log"]));
    assert_eq!(c["count"], "4");
}

#[test]
fn families_are_written_and_measurable() {
    let d = Dir::new();
    let o = d.run(&["family", "bounded-repeat", "--param", "2", "--out", "fam"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let c = json(&d.run(&["cardinality", "fam/bounded-repeat-2.json"]));
    assert_eq!(c["count"], "3");
    assert_eq!(d.run(&["family", "bounded-repeat", "--param", "21", "--out", "fam"]).status.code(), Some(2));

    assert!(d.run(&["family", "kleene", "--out", "fam"]).status.success());
    let k = json(&d.run(&["inspect", "fam/kleene.json"]));
    assert_eq!(k["states"], 2);

    assert!(d.run(&["family", "bounded-repeat", "--out", "all"]).status.success());
    let written = fs::read_dir(d.path().join("all")).unwrap().count();
    assert_eq!(written, 20);

    assert!(d.run(&["family", "permutations", "--out", "fam"]).status.success());
    assert!(d.run(&["family", "parallel-block", "--out", "fam"]).status.success());
    let a = json(&d.run(&["precision", "fam/permutations-120.json", "fam/permutations.log"]));
    let b = json(&d.run(&["precision", "fam/parallel-block.json", "fam/permutations.log"]));
    assert!((a["value"].as_f64().unwrap() - b["value"].as_f64().unwrap()).abs() < 1e-6);
}

#[test]
fn batch_mode_keeps_line_order() {
    let d = Dir::new();
    d.write(
        "jobs.txt",
        "# comparisons\nprecision s2.json l1.log\nrecall s2.json l2.log\n\ncoverage s3.json s2.json\n",
    );
    let o = d.run(&["--batch", "jobs.txt", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("precision s2.json l1.log,precision,eig,"));
    assert!(rows[2].starts_with("recall s2.json l2.log,recall,"));
    assert!(rows[3].starts_with("coverage s3.json s2.json,coverage,"));

    d.write("broken.txt", "precision s2.json\n");
    assert_eq!(d.run(&["--batch", "broken.txt"]).status.code(), Some(2));
    assert_eq!(d.run(&["--batch", "jobs.txt", "inspect", "s2.json"]).status.code(), Some(2));
}

#[test]
fn conversions() {
    let d = Dir::new();
    assert!(d.run(&["convert", "l1.log", "tree.json"]).status.success());
    let tree = json(&d.run(&["inspect", "tree.json"]));
    assert_eq!(tree["states"], 10);
    assert_eq!(tree["deterministic"], true);

    assert!(d.run(&["convert", "s2.json", "s2.dot"]).status.success());
    let dot = fs::read_to_string(d.path().join("s2.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=doublecircle").count(), 1);

    d.write(
        "log.xes",
        r#"<log><trace><event><string key="concept:name" value="a"/></event></trace></log>"#,
    );
    assert!(d.run(&["convert", "log.xes", "log.log"]).status.success());
    assert_eq!(fs::read_to_string(d.path().join("log.log")).unwrap(), "a\n");
    assert_eq!(d.run(&["convert", "s2.json", "s2.log"]).status.code(), Some(2));

    let o = d.run(&["precision", "s2.json", "l1.log", "--out", "report.json"]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(fs::read_to_string(d.path().join("report.json")).unwrap().contains("\"precision\""));
}
