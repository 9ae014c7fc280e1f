use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dataset(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../datasets")
        .join(format!("{name}.json"))
}

fn cijt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cijt"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Single record with `i = 1` and one rotation by `(sqrt2 - 1) pi`.
fn sqrt2_file() -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    let doc = serde_json::json!({
        "version": 1,
        "shape": {"d": 2, "n": 1},
        "records": [{
            "name": "c",
            "initial_index": 1,
            "blocks": [{"type": "R", "theta_over_pi": {"kind": "surd", "a": [-1, 1], "b": [1, 1], "s": 2}}]
        }]
    });
    std::fs::write(f.path(), doc.to_string()).unwrap();
    f
}

#[test]
fn iterate_tables() {
    let h = dataset("s2_hyperbolic");
    let o = cijt(&[
        "iterate",
        h.to_str().unwrap(),
        "--record",
        "h1",
        "--m-max",
        "3",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m\ti\tnu\n1\t1\t0\n2\t2\t0\n3\t3\t0\n");

    let s = dataset("s2_golden");
    let o = cijt(&[
        "iterate",
        s.to_str().unwrap(),
        "--record",
        "c1",
        "--m-max",
        "3",
    ]);
    assert_eq!(stdout(&o), "m\ti\tnu\n1\t1\t0\n2\t1\t0\n3\t3\t0\n");

    let o = cijt(&[
        "iterate",
        s.to_str().unwrap(),
        "--record",
        "c1",
        "--m-max",
        "0",
    ]);
    assert_eq!(stdout(&o), "m\ti\tnu\n");

    let o = cijt(&[
        "iterate",
        s.to_str().unwrap(),
        "--record",
        "nope",
        "--m-max",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn betti_table() {
    let o = cijt(&["betti", "--d", "2", "--n", "1", "--p-max", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "p\tb_p\tclosed\tdirect");
    assert_eq!(rows[4], "3\t2\t3\t3");
    let o = cijt(&[
        "betti", "--d", "4", "--n", "2", "--p-max", "300", "--format", "json",
    ]);
    let v = json(&o);
    for row in v.as_array().unwrap() {
        if let Some(c) = row["closed"].as_str() {
            assert_eq!(c, row["direct"].to_string());
        }
    }
}

#[test]
fn cijt_tuples() {
    let f = sqrt2_file();
    let path = f.path().to_str().unwrap();
    let o = cijt(&["cijt", path, "--delta", "1/100", "--m-bar", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["tuple"]["N"], 29);
    assert_eq!(v["tuple"]["m"][0], 70);
    assert!(v["verification"]["checks"].as_array().unwrap().len() > 1);

    let o = cijt(&[
        "cijt", path, "--delta", "0.01", "--m-bar", "1", "--vertex", "opposite",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(
        (v["tuple"]["N"].as_u64(), v["tuple"]["m"][0].as_u64()),
        (Some(70), Some(169))
    );
    assert_eq!(v["opposite_of"]["N"], 29);

    // Re-running at the reported vertex reproduces the reported tuple.
    let bits = format!("bits:{}", v["tuple"]["vertex"].as_str().unwrap());
    let again = json(&cijt(&[
        "cijt", path, "--delta", "1/100", "--m-bar", "1", "--vertex", &bits,
    ]));
    assert_eq!(again["tuple"]["N"], 70);
    assert_eq!(again["verification"], v["verification"]);
}

#[test]
fn cijt_exit_codes() {
    let f = sqrt2_file();
    let path = f.path().to_str().unwrap();
    let o = cijt(&[
        "cijt",
        path,
        "--delta",
        "1/100",
        "--m-bar",
        "1",
        "--n-bound",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("closest approach"));
    assert_eq!(
        cijt(&["cijt", path, "--delta", "1/2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cijt(&["cijt", path, "--vertex", "bits:2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cijt(&["cijt", path, "--vertex", "sideways"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_verdicts() {
    let run =
        |name: &str, th: &str| cijt(&["verify", dataset(name).to_str().unwrap(), "--theorem", th]);
    let o = run("s2_consistent", "1.1");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json(&o)["report"]["non_hyperbolic"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    assert_eq!(run("s2_golden", "1.1").status.code(), Some(1));
    let o = run("s2_hyperbolic", "1.8");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["contradiction_found"], true);
    assert_eq!(run("s3_synthetic", "1.5").status.code(), Some(0));
    assert_eq!(run("s3_synthetic", "1.1").status.code(), Some(2));
    assert_eq!(run("s2_consistent", "1.5").status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let d = dataset("s3_synthetic");
    let a = cijt(&[
        "--threads",
        "1",
        "verify",
        d.to_str().unwrap(),
        "--theorem",
        "1.5",
    ]);
    let b = cijt(&[
        "--threads",
        "4",
        "verify",
        d.to_str().unwrap(),
        "--theorem",
        "1.5",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn resonance_and_bad_input() {
    let o = cijt(&["resonance", dataset("s2_golden").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["rhs"], "-1");
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        f.path(),
        r#"{"version": 2, "shape": {"d": 2, "n": 1}, "records": []}"#,
    )
    .unwrap();
    assert_eq!(
        cijt(&["resonance", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
