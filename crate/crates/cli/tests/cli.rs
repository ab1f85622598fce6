use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gw-wel"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    run_with(bin().args(args).output().expect("binary runs"))
}

fn run_with(out: Output) -> (i32, Value) {
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn recursion_table() {
    let (code, r) = run(&["recursion", "--max", "5"]);
    assert_eq!(code, 0);
    let counts: Vec<&str> = r["result"]["table"].as_array().unwrap().iter().map(|row| row["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["1", "1", "12", "620", "87304"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(run(&["recursion", "--max", "13"]).0, 3);
}

#[test]
fn nodal_cubic_curve() {
    let (code, r) = run(&["curve", "--file", data("nodal_cubic.txt").to_str().unwrap()]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["singularities"][0]["kind"], "Node");
    assert_eq!(res["wel"]["square_class"], "-1");
    assert_eq!(res["node_count"], 1);
}

#[test]
fn prime_field_count_and_batch() {
    let (code, r) = run(&["count", "--field", "Fp:1009", "--seed", "2"]);
    assert_eq!(code, 0);
    let run0 = &r["result"]["runs"][0];
    assert_eq!(run0["rank"], 12);
    assert_eq!(run0["classical_count"], "12");
    assert_eq!(run0["signature"], Value::Null);

    let batch = |threads: Option<&str>| {
        let mut c = bin();
        c.args(["count", "--field", "Fp:101", "--type", "1x6,2", "--seed", "10", "--runs", "4"]);
        if let Some(t) = threads {
            c.env("GW_WEL_THREADS", t);
        }
        run_with(c.output().unwrap())
    };
    let (code, a) = batch(None);
    assert_eq!(code, 0);
    let seeds: Vec<u64> = a["result"]["runs"].as_array().unwrap().iter().map(|r| r["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, [10, 11, 12, 13]);
    let discs: Vec<&Value> = a["result"]["runs"].as_array().unwrap().iter().map(|r| &r["disc"]).collect();
    assert!(discs.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(batch(Some("1")).1["result"], a["result"]);
}

#[test]
fn rational_small_degrees() {
    for d in ["1", "2"] {
        let (code, r) = run(&["count", "--degree", d, "--seed", "5"]);
        assert_eq!(code, 0);
        let run0 = &r["result"]["runs"][0];
        assert_eq!((run0["rank"].as_u64(), run0["signature"].as_i64(), run0["disc"].as_str()), (Some(1), Some(1), Some("1")));
    }
}

/// The mathematical content of every command is identical across reruns.
#[test]
fn reports_are_deterministic() {
    let nodal = data("nodal_cubic.txt");
    let commands: Vec<Vec<&str>> = vec![
        vec!["count", "--field", "Fp:1009", "--seed", "7", "--type", "1x5,3"],
        vec!["count", "--degree", "2", "--seed", "3", "--type", "1,2,2"],
        vec!["curve", "--file", nodal.to_str().unwrap()],
        vec!["move-test", "--field", "Fp:101", "--seed", "1"],
        vec!["recursion", "--max", "7"],
        vec!["verify", "--verify", "cusp", "--seed", "9", "--trials", "10"],
    ];
    for args in commands {
        let first = run(&args);
        for _ in 0..4 {
            let again = run(&args);
            assert_eq!(again.0, first.0, "{args:?}");
            assert_eq!(again.1["result"], first.1["result"], "{args:?}");
            assert_eq!(again.1["command"], first.1["command"]);
        }
    }
}

#[test]
fn verify_suites() {
    for suite in ["cusp", "tacnode", "triple", "residues"] {
        let (code, r) = run(&["verify", "--verify", suite, "--trials", "8"]);
        assert_eq!(code, 0, "{suite}");
        assert_eq!(r["result"]["passed"], true);
    }
    assert_eq!(run(&["verify", "--verify", "everything"]).0, 3);
}

#[test]
fn move_test_verdicts() {
    let (code, r) = run(&["move-test", "--field", "Fp:1009", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["comparison"], "equivalent");
    let (code, r) = run(&["move-test", "--field", "Fp:1009", "--seed", "4", "--type", "1x8", "--type-b", "1x6,2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["comparison"], "not_compared");
    assert_eq!(r["result"]["same_type"], false);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = bin().args(["recursion", "--max", "3", "--out", out.to_str().unwrap()]).output().unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["result"]["table"][2]["count"], "12");
}

/// Malformed input exits 3, non-generic input 2, valid input 0; failures
/// always carry an error record.
#[test]
fn exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write(&dir, "malformed.json", "{\"field\": \"Q\", \"points\": [");
    let bad_scalar = write(&dir, "scalar.json", r#"{"field":"Q","points":[["0","0"],["1","x"]]}"#);
    let float = write(&dir, "float.json", r#"{"field":"Q","points":[["0.5","0"],["1","2"]]}"#);
    let bad_field = write(&dir, "field.json", r#"{"field":"Fp:9","points":[["0","0"],["1","2"]]}"#);
    let repeated = write(&dir, "repeated.json", r#"{"field":"Q","points":[["1","2"],["1","2"]]}"#);
    let collinear = write(&dir, "collinear.json", r#"{"field":"Q","points":[["0","0"],["1","1"],["2","2"],["3","5"],["1","7"]]}"#);
    let line = write(&dir, "line.json", r#"{"field":"Q","degree":1,"points":[["0","0"],["1","3"]]}"#);
    let cusp = write(&dir, "cusp.txt", "X1^2*X2 - X0^3\n");
    let conics = write(&dir, "conics.txt", "# unit circle\nX0^2 + X1^2 - X2^2\n");
    let reducible = write(&dir, "reducible.txt", "X0^3 + X0*X1^2 - X0*X2^2\n");
    let garbage = write(&dir, "garbage.txt", "X0^2 + + X7\n");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["count", "--degree", "1", "--points", &line], 0),
        (vec!["count", "--degree", "1", "--points", &malformed], 3),
        (vec!["count", "--degree", "1", "--points", &bad_scalar], 3),
        (vec!["count", "--degree", "1", "--points", &float], 3),
        (vec!["count", "--degree", "1", "--points", &bad_field], 3),
        (vec!["count", "--degree", "1", "--points", &repeated], 3),
        (vec!["count", "--degree", "2", "--points", &line], 3),
        (vec!["count", "--degree", "2", "--points", &collinear], 2),
        (vec!["count", "--degree", "1", "--points", "/nonexistent/cfg.json"], 3),
        (vec!["count", "--degree", "4"], 3),
        (vec!["count", "--type", "4"], 3),
        (vec!["count", "--type", "one"], 3),
        (vec!["count", "--field", "Fp:4"], 3),
        (vec!["count", "--field", "Fp:101", "--oracle"], 3),
        (vec!["oracle", "--degree", "2"], 3),
        (vec!["curve", "--file", &cusp], 2),
        (vec!["curve", "--file", &reducible], 2),
        (vec!["curve", "--file", &garbage], 3),
        (vec!["curve", "--file", &conics], 0),
        (vec!["frobnicate"], 3),
    ];
    for (args, want) in cases {
        let o = bin().args(&args).output().unwrap();
        let (code, r) = run_with(o);
        assert_eq!(code, want, "{args:?}: {r}");
        if want != 0 && args[0] != "frobnicate" {
            assert_eq!(r["exit_code"], want, "{args:?}");
            assert!(r["result"]["error"]["message"].is_string(), "{args:?}: {r}");
        }
    }
}

#[test]
fn rational_oracle_on_a_mixed_type() {
    let (code, r) = run(&["oracle", "--type", "1x6,2", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["oracle"]["signature"], -6);
    assert_eq!(r["result"]["oracle"]["real_roots"], 6);
}
