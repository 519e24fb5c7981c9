use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cyclic(d: usize) -> String {
    let a: Vec<String> = (0..d).map(|i| ((i + 1) % d).to_string()).collect();
    format!(
        r#"{{"signature":[{{"name":"a","arity":1}}],"size":{},"ops":{{"a":[{}]}}}}"#,
        d,
        a.join(",")
    )
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("c2.alg", &cyclic(2));
        f.write("c3.alg", &cyclic(3));
        f.write("c4.alg", &cyclic(4));
        f.write("c6.alg", &cyclic(6));
        // C_2 and C_3 side by side.
        f.write(
            "u23.alg",
            r#"{"signature":[{"name":"a","arity":1}],"size":5,"ops":{"a":[1,0,3,4,2]}}"#,
        );
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }
}

fn unialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unialg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn free_on_c2_c3() {
    let f = Fixture::new();
    let out = f.path("free.alg");
    let o = unialg(&[
        "free",
        "--gen",
        &f.path("c2.alg"),
        "--gen",
        &f.path("c3.alg"),
        "-n",
        "1",
        "--compare",
        &f.path("c6.alg"),
        "--out",
        &out,
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["size"], 6);
    assert_eq!(v["isomorphic_to_cycle"], true);
    assert_eq!(v["isomorphic_to_compare"], true);
    let written = unialg::algcore::io::read_file(Path::new(&out)).unwrap();
    assert_eq!(written.size(), 6);
}

#[test]
fn coproduct_in_union_prevariety() {
    let f = Fixture::new();
    let o = unialg(&[
        "--json",
        "coproduct",
        "--gen",
        &f.path("u23.alg"),
        &f.path("c2.alg"),
        &f.path("c3.alg"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["size"], 5);
    assert_eq!(v["injective"], serde_json::json!([true, true]));
}

#[test]
fn compatibility_exit_codes() {
    let f = Fixture::new();
    let (c2, c3) = (f.path("c2.alg"), f.path("c3.alg"));
    let o = unialg(&["compatible", "--gen", &c2, "--gen", &c3, &c2, &c3]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("compatible: false"));
    let o = unialg(&["compatible", "--gen", &f.path("u23.alg"), &c2, &c3]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["cover", "--json", "--gen", &c2, "--gen", &c3, &c2, &c3]);
    assert_eq!(json(&o)["blocks"], serde_json::json!([[0], [1]]));
}

#[test]
fn membership_witness() {
    let f = Fixture::new();
    let (c2, c3) = (f.path("c2.alg"), f.path("c3.alg"));
    let o = unialg(&["--json", "member", "--gen", &c2, "--gen", &c3, &f.path("c6.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["member"], true);
    let o = unialg(&["--json", "member", "--gen", &c2, "--gen", &c3, &f.path("c4.alg")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["member"], false);
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["unseparated"].as_array().unwrap().len(), 2);
}

#[test]
fn si_and_quasi_identity() {
    let f = Fixture::new();
    let o = unialg(&["si", &f.path("c6.alg")]);
    assert_eq!(o.status.code(), Some(1));
    let o = unialg(&["si", &f.path("c4.alg")]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&[
        "rel-si",
        "--gen",
        &f.path("c2.alg"),
        "--gen",
        &f.path("c3.alg"),
        &f.path("c3.alg"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["qid", &f.path("c6.alg"), "a^6 x = x"]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["qid", &f.path("c6.alg"), "a^2 x = x => a^2 y = y"]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["qid", &f.path("c6.alg"), "a^3 x = x"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn independence_and_comfort() {
    let f = Fixture::new();
    let u = f.path("u23.alg");
    let o = unialg(&["independent", "--gen", &u, &u, "--subset", "0,1", "--subset", "2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["comfortable", "--gen", &u, &f.path("c2.alg"), &f.path("c3.alg")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rewriting_verbs() {
    let f = Fixture::new();
    let p = f.write("inv.pres", "# x has a left and a right inverse\nx y z\nxy = 1\nzx = 1\n");
    let p = p.display().to_string();
    let o = unialg(&["kb", &p]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["--json", "reduce", &p, "z", "zxy"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["normal_forms"][0]["normal_form"], "y");
    assert_eq!(v["normal_forms"][1]["normal_form"], "y");

    let braid = f.write("braid.pres", "a b\naba = bab\n").display().to_string();
    let o = unialg(&["kb", "--max-rules", "3", &braid]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn amalgam_verbs() {
    let o = unialg(&["--json", "amalgam-nf", "0:1", "0:1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["normal_form"]["reps"], serde_json::json!([]));
    let o = unialg(&["amalgam-scan", "--max-len", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(length 1): torsion present"));
    assert!(text.contains("(length 2): torsion absent"));
    assert!(!text.contains("(length 2): torsion present"));
}

#[test]
fn amalgam_context_file() {
    let f = Fixture::new();
    let z2 = r#"{"signature":[{"name":"mul","arity":2},{"name":"inv","arity":1},{"name":"e","arity":0}],"size":2,"ops":{"mul":[0,1,1,0],"inv":[0,1],"e":[0]}}"#;
    let one = r#"{"signature":[{"name":"mul","arity":2},{"name":"inv","arity":1},{"name":"e","arity":0}],"size":1,"ops":{"mul":[0],"inv":[0],"e":[0]}}"#;
    let ctx = f.write(
        "z2z2.json",
        &format!(
            r#"{{"factors":[{},{}],"base":{},"embeddings":[[0],[0]]}}"#,
            z2, z2, one
        ),
    );
    let o = unialg(&[
        "--json",
        "amalgam-scan",
        "--ctx",
        &ctx.display().to_string(),
        "--sigma",
        "0:1 1:1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["cosets"][0]["torsion"], false);
}

#[test]
fn paperlab_suites() {
    for suite in ["prop-2-1", "cd-family", "monoid-amalgam", "amalgam-torsion"] {
        let o = unialg(&["paperlab", suite]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let text = stdout(&o);
        assert!(!text.contains("[FAIL]"));
        assert!(text.lines().filter(|l| l.starts_with("[pass]")).count() >= 2);
        // Byte-stable across runs.
        assert_eq!(text, stdout(&unialg(&["paperlab", suite])));
    }
}

#[test]
fn usage_errors() {
    let f = Fixture::new();
    let o = unialg(&["free", "--gen", &f.path("missing.alg")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
    let o = unialg(&["paperlab", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    let o = unialg(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = unialg(&["--json", "member", "--gen", &f.path("c2.alg"), &f.path("c2.alg")]);
    assert_eq!(o.status.code(), Some(0));
    let o = unialg(&["amalgam-nf", "0-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_exit_3() {
    let f = Fixture::new();
    let o = unialg(&[
        "--json",
        "--max-carrier",
        "2",
        "free",
        "--gen",
        &f.path("c2.alg"),
        "--gen",
        &f.path("c3.alg"),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["status"], "budget-exhausted");
}
