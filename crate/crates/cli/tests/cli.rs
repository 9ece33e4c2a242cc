use std::path::PathBuf;

use bhl::run;
use bhl_core::ayd::AydModule;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bhl(args: &str) -> bhl::Output {
    run(std::iter::once("bhl").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let out = bhl(&format!("{args} --format json"));
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

fn status<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(root().join("schemas/report.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn ribbon_example() {
    let (code, r) = json("verify ribbon --p 3 --mu 1");
    assert_eq!(code, 0);
    assert_eq!(status(&r, "varsigma_equals_scaled_ribbon"), "PASS");
    assert_eq!(r["params"]["mu"], 1);
}

#[test]
fn vec_g_table() {
    let out = bhl("decompose vec-g --n 3 --chi 1");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("1  n = 1"), "{}", out.stdout);
    assert!(out.stdout.contains("q(3,1)  n = 2"), "{}", out.stdout);
    let (_, r) = json("decompose vec-g --n 3 --chi 1");
    assert_eq!(r["data"]["multiplicities"], serde_json::json!([1, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(bhl("verify hopf-axioms --p 2").code, 0);
    let neg = root().join("corpus/negative_control.bdsl");
    assert_eq!(bhl(&format!("dsl check {} --n 3", neg.display())).code, 1);
    assert_eq!(bhl("verify hopf-axioms --p 9").code, 2);
    assert_eq!(bhl("verify ribbon --p 2").code, 2);
    assert_eq!(bhl("verify frobnicate --p 3").code, 2);
    assert_eq!(bhl("decompose rep-g --cayley /nonexistent.json").code, 2);
    assert_eq!(bhl("dsl check /nonexistent.bdsl --n 3").code, 2);
    assert_eq!(bhl("--help").code, 0);
}

#[test]
fn dsl_diagnostics() {
    let dir = tempdir();
    let f = dir.join("bad.bdsl");
    std::fs::write(&f, "let V = obj { deg 1: 1 }\nassert braid[V").unwrap();
    let (code, r) = json(&format!("dsl check {} --n 3", f.display()));
    assert_eq!(code, 1);
    assert_eq!(r["checks"][0]["status"], "FAIL");
    assert!(r["checks"][0]["witnesses"][0].as_str().unwrap().starts_with("2:13:"));
}

fn tempdir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("bhl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn module_files() {
    let dir = tempdir();
    let good = dir.join("trivial.json");
    std::fs::write(&good, AydModule::trivial(3, 1).unwrap().to_json().to_string()).unwrap();
    let (code, r) = json(&format!("verify ayd --module {}", good.display()));
    assert_eq!(code, 0, "{r}");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, AydModule::trivial(3, 0).unwrap().to_json().to_string()).unwrap();
    assert_eq!(bhl(&format!("verify ayd --module {}", bad.display())).code, 1);
    std::fs::write(&bad, "{\"p\": 3}").unwrap();
    assert_eq!(bhl(&format!("verify ayd --module {}", bad.display())).code, 2);
}

#[test]
fn deterministic_json() {
    for args in ["verify hopf-axioms --p 3 --seed 5", "decompose vec-g --n 5", "stable-dim --p 3", "verify dual-algebra --p 5"] {
        let strip = |mut v: Value| {
            v.as_object_mut().unwrap().remove("elapsed_ms");
            serde_json::to_string(&v).unwrap()
        };
        let (_, a) = json(args);
        let (_, b) = json(args);
        assert_eq!(strip(a), strip(b), "{args}");
    }
}

#[test]
fn reports_match_schema() {
    let schema = schema();
    let cayley = root().join("assets/s3_cayley.json");
    let neg = root().join("corpus/negative_control.bdsl");
    for args in [
        "verify hopf-axioms --p 3".to_string(),
        "verify ayd --p 2".into(),
        "verify center --p 3".into(),
        "stable-dim --p 2".into(),
        format!("decompose rep-g --cayley {}", cayley.display()),
        format!("dsl check {} --n 5 --chi 2", neg.display()),
    ] {
        let (_, r) = json(&args);
        let msgs: Vec<String> = match schema.validate(&r) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{args}: {msgs:?}");
    }
    let bogus = serde_json::json!({"command": "x", "params": {}, "checks": [{"name": "a", "status": "FAIL", "details": "", "witnesses": []}], "elapsed_ms": 0});
    assert!(!schema.is_valid(&bogus));
}

#[test]
fn suite_p3() {
    let (code, r) = json("suite --p 3");
    let failed: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["status"] != "PASS").collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(code, 0);
    let ran: Vec<&str> = r["params"]["criteria"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(ran, ["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c9", "c10", "c11"]);
}

#[test]
fn suite_p2() {
    let (code, r) = json("suite --p 2");
    assert_eq!(code, 0, "{r}");
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"].as_str().unwrap().starts_with("c8.")));
}
