//! Drives the `kchern` binary end to end: exit codes, outputs, files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn kchern(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_kchern")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn builtin_matrix_algebra_is_valid() {
    let r = kchern(&["algebra-check", "--fixture", "M2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["valid"], true);
    assert_eq!(j["dim"], 4);
    assert_eq!(j["commutative"], false);
}

#[test]
fn algebra_check_output_reloads_as_input() {
    let dir = TempDir::new().unwrap();
    let first = kchern(&["algebra-check", "--fixture", "QC2"]).json();
    let file = write(&dir, "qc2.json", &first["algebra"]);
    let second = kchern(&["algebra-check", s(&file)]);
    assert_eq!(second.code, 0, "{}", second.stderr);
    assert_eq!(second.json(), first);
}

#[test]
fn nonassociative_table_reports_a_triple() {
    let dir = TempDir::new().unwrap();
    // basis 1, x, y with x·y = x and every other product of non-units zero
    let table = json!({
        "dim": 3,
        "mul": [
            [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            [["0", "1", "0"], ["0", "0", "0"], ["0", "1", "0"]],
            [["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]
        ]
    });
    let r = kchern(&["algebra-check", s(&write(&dir, "bad.json", &table))]);
    assert_eq!(r.code, 3);
    let j = r.json();
    assert_eq!(j["valid"], false);
    assert_eq!(j["associative"], false);
    let t: Vec<usize> = serde_json::from_value(j["failing_triple"].clone()).unwrap();
    assert!(t.iter().all(|&i| i < 3));
}

#[test]
fn misplaced_unit_gets_a_rebase_hint() {
    let dir = TempDir::new().unwrap();
    // e1 is the unit, e0 an idempotent
    let table = json!({
        "dim": 2,
        "mul": [[["1", "0"], ["1", "0"]], [["1", "0"], ["0", "1"]]]
    });
    let r = kchern(&["algebra-check", s(&write(&dir, "unit.json", &table))]);
    assert_eq!(r.code, 3);
    let j = r.json();
    assert_eq!(j["unital"], false);
    assert!(j["message"].as_str().unwrap().contains("rebase"), "{j}");
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"dim\": 2, \"mul\": [").unwrap();
    assert_eq!(kchern(&["algebra-check", s(&path)]).code, 2);
    let zero_den = json!({"dim": 1, "mul": [[["1/0"]]]});
    assert_eq!(kchern(&["algebra-check", s(&write(&dir, "den.json", &zero_den))]).code, 2);
    assert_eq!(kchern(&["homology", "--fixture", "Q"]).code, 2);
    assert_eq!(kchern(&["no-such-command"]).code, 2);
}

#[test]
fn homology_dimensions() {
    let q = kchern(&["homology", "--fixture", "Q", "--degree", "2"]);
    assert_eq!(q.code, 0, "{}", q.stderr);
    assert_eq!(q.json()["dims"], json!([1, 0, 0]));
    let qq = kchern(&["homology", "--fixture", "QxQ", "--degree", "2"]).json();
    assert_eq!(qq["dims"], json!([2, 0, 1]));
    assert_eq!(qq["representatives"][2].as_array().unwrap().len(), 1);
}

#[test]
fn unknown_fixture_is_a_validation_failure() {
    let r = kchern(&["homology", "--fixture", "nope", "--degree", "1"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn chern_of_the_trivial_line() {
    let dir = TempDir::new().unwrap();
    let conn = write(&dir, "line.json", &json!({"p": [[["1"]]], "theta": [[[]]]}));
    let r = kchern(&["chern", "--fixture", "Q", "--connection", s(&conn)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let classes = &r.json()["classes"];
    assert_eq!(classes[0]["coords"], json!(["1"]));
    assert!(classes[1]["coords"].as_array().unwrap().iter().all(|c| c == "0"));
}

#[test]
fn chern_of_the_projection_in_a_product() {
    let dir = TempDir::new().unwrap();
    // slot 1 of QxQ is the idempotent e; the Grassmann connection has θ = 0
    let conn = write(&dir, "e.json", &json!({"p": [[["0", "1"]]], "theta": [[[]]]}));
    let r = kchern(&["chern", "--fixture", "QxQ", "--connection", s(&conn)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    let ch1 = &j["classes"][1];
    assert_eq!(ch1["degree"], 2);
    let basis: Vec<Vec<usize>> = serde_json::from_value(ch1["basis"].clone()).unwrap();
    let coords: Vec<String> = serde_json::from_value(ch1["coords"].clone()).unwrap();
    let nonzero: Vec<_> = basis.iter().zip(&coords).filter(|(_, c)| *c != "0").collect();
    assert_eq!(nonzero, vec![(&vec![1, 1, 1], &"1".to_string())]);
}

#[test]
fn kcs_of_constant_and_reversed_paths() {
    let dir = TempDir::new().unwrap();
    let constant = write(&dir, "const.json", &json!({"p": [[["1", "0"]]], "theta": [[[{"degree": 1, "word": [0, 1], "coeff": "2/3"}]]]}));
    let r = kchern(&["kcs", "--fixture", "dual", "--path", s(&constant)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for c in r.json()["classes"].as_array().unwrap() {
        assert!(c["coords"].as_array().unwrap().iter().all(|x| x == "0"), "{c}");
    }

    // θ(t) = (t − t²) dε + t² ε dε
    let bent = json!({"p": [[["1", "0"]]], "theta": [[[
        {"degree": 1, "word": [0, 1], "coeff": {"t^1": "1", "t^2": "-1"}},
        {"degree": 1, "word": [1, 1], "coeff": {"t^2": "1"}}
    ]]]});
    let path = write(&dir, "bent.json", &bent);
    let fwd = kchern(&["kcs", "--fixture", "dual", "--path", s(&path)]).json();
    let back = kchern(&["kcs", "--fixture", "dual", "--path", s(&path), "--reverse"]).json();
    assert_eq!(back["reversed"], true);
    for (f, b) in fwd["classes"].as_array().unwrap().iter().zip(back["classes"].as_array().unwrap()) {
        for (x, y) in f["coords"].as_array().unwrap().iter().zip(b["coords"].as_array().unwrap()) {
            let neg = match x.as_str().unwrap() {
                "0" => "0".to_string(),
                v => v.strip_prefix('-').map(str::to_string).unwrap_or(format!("-{v}")),
            };
            assert_eq!(y.as_str().unwrap(), neg);
        }
    }
}

#[test]
fn straight_line_kcs_between_two_connections() {
    let dir = TempDir::new().unwrap();
    let from = write(&dir, "from.json", &json!({"p": [[["1", "0"]]], "theta": [[[]]]}));
    let to = write(&dir, "to.json", &json!({"p": [[["1", "0"]]], "theta": [[[{"degree": 1, "word": [0, 1], "coeff": "1"}]]]}));
    let r = kchern(&["kcs", "--fixture", "dual", "--from", s(&from), "--to", s(&to)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    let kcs1 = &j["classes"][0];
    let basis: Vec<Vec<usize>> = serde_json::from_value(kcs1["basis"].clone()).unwrap();
    let coords: Vec<String> = serde_json::from_value(kcs1["coords"].clone()).unwrap();
    let nonzero: Vec<_> = basis.iter().zip(&coords).filter(|(_, c)| *c != "0").collect();
    assert_eq!(nonzero, vec![(&vec![0, 1], &"1".to_string())]);
    assert!(j["residual"].as_array().unwrap().iter().all(|r| r["zero"] == true));
    assert!(j["certificates"].as_array().unwrap().iter().all(|c| c["exact"] == true));
}

#[test]
fn kcs_rejects_mismatched_idempotents() {
    let dir = TempDir::new().unwrap();
    let from = write(&dir, "from.json", &json!({"p": [[["1", "0"]]], "theta": [[[]]]}));
    let to = write(&dir, "to.json", &json!({"p": [[["0", "1"]]], "theta": [[[]]]}));
    let r = kchern(&["kcs", "--fixture", "QxQ", "--from", s(&from), "--to", s(&to)]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn verify_rejects_unknown_suites() {
    let r = kchern(&["verify", "--suite", "everything"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("everything"), "{}", r.stderr);
}

#[test]
fn verify_transgression_on_one_fixture() {
    let r = kchern(&["verify", "--suite", "transgression", "--fixture", "dual", "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["passed"], true);
    assert_eq!(j["seed"], 3);
    let names: Vec<&str> = j["sections"][0]["identities"].as_array().unwrap().iter().map(|i| i["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"triangle_mod_exact"));
    assert!(names.contains(&"secondary_transgression"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("h.json");
    let r = kchern(&["homology", "--fixture", "trunc3", "--degree", "1", "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["dims"], json!([1, 0]));
}
