use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pvi-tau"));
    c.env_remove("PVI_TAU_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn initial_value_is_one() {
    let o = run(&["compute", "--k", "0,0,0,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn seed_value_factored() {
    let o = run(&["compute", "--k", "0,-1,-1,0", "--format", "factored"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "lead: -2\nexponents: {0:2, 1:1, -1:2, -2:-2, -1/2:1}\nremainder: [1]\n");
}

#[test]
fn family_coefficients() {
    let o = run(&["compute", "--family", "nn00", "--n", "2", "--format", "coeffs"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "lead: -4/1\nnumerator: [0, 0, 1, 5, 8, 5, 1]\ndenominator: [4, 4, 1]\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["compute", "--k", "1,0,0,0"])), 2);
    assert_eq!(code(&run(&["compute", "--k", "1,0,0"])), 2);
    assert_eq!(code(&run(&["compute"])), 2);
    assert_eq!(code(&run(&["compute", "--k", "9,9,0,0", "--budget", "50"])), 3);
}

#[test]
fn corrupt_caches_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        "not json",
        r#"{"version": 2, "entries": []}"#,
        r#"{"version": 1, "entries": [{"k": [0,0,0,0], "lead": "2/1",
            "cusp_exponents": {"0":0,"1":0,"-1":0,"-2":0,"-1/2":0}, "remainder": ["1"]}]}"#,
        r#"{"version": 1, "entries": [{"k": [0,-1,-1,0], "lead": "-2/1",
            "cusp_exponents": {"0":3,"1":1,"-1":2,"-2":-2,"-1/2":1}, "remainder": ["1"]}]}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, text).unwrap();
        let o = run(&["compute", "--k", "2,0,0,0", "--cache", p(&path)]);
        assert_eq!(code(&o), 4, "case {i}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(std::fs::read_to_string(&path).unwrap(), *text, "case {i} left untouched");
    }
}

#[test]
fn empty_cache_exports_empty_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&["export", "--out", p(&out), "--cache", p(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn family_cache_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    for n in ["3", "1", "2"] {
        let o = run(&["compute", "--family", "nn00", "--n", n, "--cache", p(&cache)]);
        assert_eq!(code(&o), 0);
    }
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(code(&run(&["export", "--out", p(&a), "--cache", p(&cache)])), 0);
    assert_eq!(code(&run(&["export", "--out", p(&b), "--cache", p(&a)])), 0);
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());

    let v: serde_json::Value = serde_json::from_slice(&text).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let ks: Vec<_> = entries.iter().map(|e| e["k"].clone()).collect();
    assert_eq!(ks, vec![serde_json::json!([1, 1, 0, 0]), serde_json::json!([2, 2, 0, 0]), serde_json::json!([3, 3, 0, 0])]);
    let degs: Vec<usize> = entries.iter().map(|e| e["remainder"].as_array().unwrap().len() - 1).collect();
    assert!(degs.windows(2).all(|w| w[0] < w[1]), "{degs:?}");

    // Values computed from the cache agree with a cold computation.
    let warm = run(&["compute", "--family", "nn00", "--n", "3", "--cache", p(&a), "--format", "coeffs"]);
    let cold = run(&["compute", "--family", "nn00", "--n", "3", "--format", "coeffs"]);
    assert_eq!(stdout(&warm), stdout(&cold));
    assert_eq!(std::fs::read(&a).unwrap(), text, "cached target is not rewritten");
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.json");
    let o = bin().args(["compute", "--k", "0,-1,-1,0"]).env("PVI_TAU_CACHE", &cache).output().unwrap();
    assert_eq!(code(&o), 0);
    let out = dir.path().join("t.tex");
    let o = bin().args(["export", "--out", p(&out), "--format", "latex-table"]).env("PVI_TAU_CACHE", &cache).output().unwrap();
    assert_eq!(code(&o), 0);
    let tex = std::fs::read_to_string(&out).unwrap();
    assert!(tex.contains("$(0,-1,-1,0)$ & -2 & 2 & 1 & 2 & -2 & 1 & 0 \\\\"), "{tex}");
}

#[test]
fn verify_oracle_suite() {
    let o = run(&["verify", "--suite", "oracle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS ntd: 6 determinants"), "{}", stdout(&o));
}
