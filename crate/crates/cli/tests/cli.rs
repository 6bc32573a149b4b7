use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rbloch"));
    c.env_remove("RBLOCH_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let s: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn table_rows_match_schema_and_known_orders() {
    let v = schema("table.schema.json");
    let doc = json_of(&run(&["table", "--family", "fq", "--range", "4..=32"]));
    assert_valid(&v, &doc);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for r in rows {
        let q = r["q"].as_u64().unwrap();
        let expected = if q % 2 == 1 { (q + 1) / 2 } else { q + 1 };
        assert_eq!(r["order"].as_u64().unwrap(), expected, "q = {q}");
        let row_only = serde_json::json!({"family": "fq", "object": "B", "rows": [r]});
        assert_valid(&v, &row_only);
    }
    for family in [["zp2", "5..8"], ["dual", "4..8"]] {
        let doc = json_of(&run(&["table", "--family", family[0], "--range", family[1]]));
        assert_valid(&v, &doc);
        assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn text_and_csv_formats() {
    let out = run(&["group", "--ring", "F_7", "--object", "rb", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "ring,object,structure,order\nF_7,RB,Z/4,4\n");
    let out = run(&["verify", "--suite", "key-identity", "--ring", "F_11", "--format", "text"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("PASS"));
}

#[test]
fn spec_errors_exit_two() {
    for args in [
        vec!["verify", "--suite", "nope", "--ring", "F_5"],
        vec!["group", "--ring", "F_6"],
        vec!["group", "--ring", "F_3"],
        vec!["verify", "--suite", "bloch"],
        vec!["verify", "--suite", "spec", "--q", "6"],
        vec!["table", "--range", "9..4"],
        vec!["specialize", "--q", "5", "--expr", "[1]"],
        vec!["specialize", "--q", "5", "--place", "t^2+1", "--expr", "[t]"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_reports_validate() {
    let v = schema("verify.schema.json");
    let out = run(&["verify", "--suite", "constants", "--ring", "F_7", "--ring", "F_8"]);
    let doc = json_of(&out);
    assert_valid(&v, &doc);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 2);
    let out = run(&["verify", "--suite", "spec", "--q", "5", "--samples", "300", "--aux-samples", "50"]);
    let doc = json_of(&out);
    assert_valid(&v, &doc);
    assert_eq!(doc["coverage"][0]["cases"].as_array().unwrap().len(), 20);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["verify", "--suite", "spec", "--q", "7", "--samples", "400", "--aux-samples", "60", "--seed", "9"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let again = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn specialize_matches_schema_and_examples() {
    let v = schema("specialize.schema.json");
    let doc = json_of(&run(&["specialize", "--q", "5", "--expr", "{t}[2+t]"]));
    assert_valid(&v, &doc);
    assert_eq!(doc["eps0"]["is_zero"], true);
    assert_eq!(doc["eps1"]["is_zero"], false);
    let doc = json_of(&run(&["specialize", "--q", "5", "--expr", "[t] + [1/t]"]));
    assert_eq!(doc["eps0"]["is_zero"], true);
    let doc = json_of(&run(&["specialize", "--q", "7", "--place", "inf", "--expr", "[t]-[t^2]"]));
    assert_valid(&v, &doc);
}

#[test]
fn orbits_and_eigen_match_schemas() {
    let doc = json_of(&run(&["orbits", "--ring", "F_5", "--n", "3", "--n", "4"]));
    assert_valid(&schema("orbits.schema.json"), &doc);
    for c in doc["censuses"].as_array().unwrap() {
        assert_eq!(c["sl2_matches"], true);
        assert_eq!(c["gl2_matches"], true);
    }
    let doc = json_of(&run(&["eigen", "--ring", "F_9", "--object", "rp"]));
    assert_valid(&schema("eigen.schema.json"), &doc);
    assert_eq!(doc["eigen"][0]["components"].as_array().unwrap().len(), 2);
}

fn cache_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn cache_cold_warm_and_corrupt_entries() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["group", "--ring", "F_25", "--object", "rb"];
    let cold = bin().args(args).env("RBLOCH_CACHE_DIR", dir.path()).output().unwrap();
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    let entry: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_valid(&schema("cache-entry.schema.json"), &entry);
    assert_eq!(entry["descriptor"], "F_25");

    let warm = bin()
        .args(args)
        .env("RBLOCH_CACHE_DIR", dir.path())
        .env("RUST_LOG", "info")
        .output()
        .unwrap();
    assert_eq!(cold.stdout, warm.stdout);
    let log = String::from_utf8_lossy(&warm.stderr);
    assert!(log.contains("cached") && !log.contains("building tower"), "{log}");

    fs::write(&files[0], "{ not json").unwrap();
    let repaired = bin().args(args).env("RBLOCH_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(cold.stdout, repaired.stdout);
    let entry: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(entry["object"], "RB");
}

#[test]
fn unwritable_cache_falls_back_to_memory() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let out = bin()
        .args(["group", "--ring", "F_5"])
        .env("RBLOCH_CACHE_DIR", file.path().join("sub"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not writable"));
}
