//! End-to-end tests of the `galecox` binary: exit-status contract,
//! document round-trips, determinism, and error diagnostics.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galecox"))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const SQUARE: &str =
    r#"{"kind":"points","dim":2,"rows":[["0","0"],["1","0"],["1","1"],["0","1"]]}"#;

#[test]
fn gale_square_to_vectors_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(&dir, "square.json", SQUARE);
    let outpath = dir.path().join("vectors.json");
    let out = bin()
        .args(["gale", input.to_str().unwrap(), "--output"])
        .arg(&outpath)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&outpath).unwrap()).unwrap();
    assert_eq!(doc["kind"], "vectors");
    assert_eq!(doc["dim"], 1);
    assert_eq!(
        doc["rows"],
        serde_json::json!([["1"], ["-1"], ["1"], ["-1"]])
    );
}

#[test]
fn gale_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(&dir, "square.json", SQUARE);
    let a = bin().args(["gale", input.to_str().unwrap()]).output().unwrap();
    let b = bin().args(["gale", input.to_str().unwrap()]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gale_rejects_malformed_rational_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(
        &dir,
        "bad.json",
        r#"{"kind":"points","dim":1,"rows":[["1/0"],["1"],["2"]]}"#,
    );
    let out = bin().args(["gale", input.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value =
        serde_json::from_str(stderr(&out).lines().last().unwrap()).unwrap();
    assert_eq!(diag["error"]["kind"], "parse");
    assert!(diag["error"]["line"].is_number());
    assert!(diag["error"]["column"].is_number());
}

#[test]
fn gale_rejects_too_few_points() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(
        &dir,
        "tri.json",
        r#"{"kind":"points","dim":2,"rows":[["0","0"],["1","0"],["0","1"]]}"#,
    );
    let out = bin().args(["gale", input.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n >= d+2"), "stderr: {}", stderr(&out));
}

#[test]
fn check2span_exit_codes_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    // one vector alone on the negative side
    let bad = write_temp(
        &dir,
        "bad.json",
        r#"{"kind":"vectors","dim":1,"rows":[["1"],["1"],["-1"]]}"#,
    );
    let out = bin()
        .args(["check2span", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no"));
    assert!(stdout(&out).contains("witness"));

    // the 1e table configuration
    let good = write_temp(
        &dir,
        "good.json",
        r#"{"kind":"vectors","dim":2,"rows":[
            ["1","0"],["1","0"],["1","0"],
            ["0","1"],["0","1"],["0","1"],
            ["-1","-1"],["-1","-2"]]}"#,
    );
    let out = bin()
        .args(["check2span", good.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 8);

    // empty configuration in dimension zero is vacuously 2-spanning
    let vacuous = write_temp(
        &dir,
        "vacuous.json",
        r#"{"kind":"vectors","dim":0,"rows":[]}"#,
    );
    let out = bin()
        .args(["check2span", vacuous.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn checkstar_cases() {
    let dir = tempfile::tempdir().unwrap();
    // the 2c table weights
    let good = write_temp(
        &dir,
        "w2c.json",
        r#"{"group":{"free_rank":3,"torsion":[]},
            "weights":[
              {"free":[1,0,0],"torsion":[],"mult":3},
              {"free":[0,1,0],"torsion":[],"mult":3},
              {"free":[0,0,1],"torsion":[],"mult":3},
              {"free":[-1,-1,-2],"torsion":[],"mult":1},
              {"free":[-1,-2,-1],"torsion":[],"mult":1}]}"#,
    );
    let out = bin()
        .args(["checkstar", good.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("holds"));

    // doubled weights: a proper subgroup
    let doubled = write_temp(
        &dir,
        "doubled.json",
        r#"{"group":{"free_rank":1,"torsion":[]},
            "weights":[
              {"free":[2],"torsion":[],"mult":6},
              {"free":[-2],"torsion":[],"mult":3}]}"#,
    );
    let out = bin()
        .args(["checkstar", doubled.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["failure"]["kind"], "generation-fails");

    // torsion example over Z + Z/2
    let torsion = write_temp(
        &dir,
        "torsion.json",
        r#"{"group":{"free_rank":1,"torsion":[2]},
            "weights":[
              {"free":[1],"torsion":[0],"mult":3},
              {"free":[-1],"torsion":[1],"mult":3},
              {"free":[0],"torsion":[1],"mult":1}]}"#,
    );
    let out = bin()
        .args(["checkstar", torsion.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
}

#[test]
fn verify_sl3_pristine_and_corrupted() {
    let out = bin().arg("verify-sl3").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("result: 10/10 rows pass"), "{text}");

    // single case selection
    let out = bin().args(["verify-sl3", "--case", "2b,r=1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    // corrupt one entry of the bundled table
    let dir = tempfile::tempdir().unwrap();
    let mut table: serde_json::Value =
        serde_json::from_str(include_str!("../../galecox/data/sl3_table.json")).unwrap();
    table["rows"][5]["standard"] = serde_json::json!([[2], [2], [-2]]);
    let path = write_temp(&dir, "table.json", &table.to_string());
    let out = bin()
        .args(["verify-sl3", "--table", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("result: 9/10 rows pass"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("2a") && l.contains("FAIL")));
}

#[test]
fn make_series_and_checkstar_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = bin()
        .args(["make-series", "4", "1", "--verify", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("PASS"));

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mults: Vec<(i64, u64)> = doc["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| {
            (
                w["free"][0].as_i64().unwrap(),
                w["mult"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(mults, vec![(1, 4), (-6, 4), (6, 4), (-2, 4)]);

    // the emitted document feeds straight back into checkstar
    let out = bin()
        .args(["checkstar", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // verification of a larger instance
    let out = bin()
        .args(["make-series", "5", "3", "--verify", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let rep: serde_json::Value =
        serde_json::from_str(stderr(&out).lines().last().unwrap()).unwrap();
    assert_eq!(rep["pass"], true);

    // parameter bounds
    let out = bin().args(["make-series", "3", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["make-series", "4", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn snf_command() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(&dir, "m.json", r#"{"entries":[[2,0],[0,3]]}"#);
    let out = bin().args(["snf", input.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["d"]["entries"], serde_json::json!([[1, 0], [0, 6]]));

    let identity = write_temp(&dir, "id.json", r#"{"entries":[[1,0],[0,1]]}"#);
    let out = bin().args(["snf", identity.to_str().unwrap()]).output().unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["d"]["entries"], serde_json::json!([[1, 0], [0, 1]]));

    let empty = write_temp(&dir, "empty.json", r#"{"entries":[]}"#);
    let out = bin().args(["snf", empty.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["d"]["entries"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["verify-sl3", "--case", "9z"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
