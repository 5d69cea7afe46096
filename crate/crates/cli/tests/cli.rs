use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fatrec(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatrec"))
        .args(args)
        .env("FATREC_CACHE", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn correlator_symbolic_and_evaluated() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = fatrec(&cache, &["correlator", "--g", "0", "--mu", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "21/5 * t^6");

    // 21/5 * (2/3)^6
    let o = fatrec(
        &cache,
        &["correlator", "--g", "0", "--mu", "10", "--t", "2/3"],
    );
    assert_eq!(stdout(&o).trim(), "448/1215");
}

#[test]
fn enumerate_details() {
    let dir = tempfile::tempdir().unwrap();
    let o = fatrec(
        &dir.path().join("c.json"),
        &["enumerate", "--mu", "6", "--genus", "0", "--details"],
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "genus 0: 2 classes, total 5/6 * t^4");
    let mut coeffs: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    coeffs.sort();
    assert_eq!(coeffs, ["coeff=1/2", "coeff=1/3"]);
}

#[test]
fn verify_exits_zero_and_prints_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = fatrec(
        &cache,
        &[
            "verify",
            "--suite",
            "virasoro",
            "--m-max",
            "2",
            "--max-weight",
            "4",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let o = fatrec(
        &cache,
        &[
            "--format",
            "json",
            "verify",
            "--suite",
            "cutjoin",
            "--max-weight",
            "6",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["suite"], "cutjoin");
}

#[test]
fn npoint_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = fatrec(
        &dir.path().join("c.json"),
        &[
            "--format",
            "json",
            "--paranoid",
            "npoint",
            "--g",
            "0",
            "--n",
            "2",
            "--max-weight",
            "4",
        ],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["terms"][0],
        serde_json::json!({"exps": [-2, -2], "coeff": "1", "t_power": 1})
    );
    assert_eq!(v.as_object().unwrap().len(), 1);
}

#[test]
fn cache_is_written_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    assert!(fatrec(
        &cache,
        &["free-energy", "--genus", "1", "--max-weight", "4"]
    )
    .status
    .success());
    let written = fs::read_to_string(&cache).unwrap();
    assert!(written.starts_with("{\"version\":1"));

    let o = fatrec(&cache, &["cache", "roundtrip"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = fatrec(&cache, &["--paranoid", "cache", "audit"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&cache).unwrap(), written);

    assert!(fatrec(&cache, &["cache", "clear"]).status.success());
    assert!(!cache.exists());
}

#[test]
fn no_cache_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    assert!(
        fatrec(&cache, &["--no-cache", "partition", "--max-weight", "4"])
            .status
            .success()
    );
    assert!(!cache.exists());
}

#[test]
fn failures_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    assert_eq!(
        fatrec(&cache, &["correlator", "--g", "0", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fatrec(&cache, &["correlator", "--g", "0", "--mu", "4,0,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fatrec(&cache, &["npoint", "--g", "0", "--n", "0"])
            .status
            .code(),
        Some(2)
    );

    fs::write(&cache, "{\"version\":1,\"entries\":[").unwrap();
    assert_eq!(
        fatrec(&cache, &["correlator", "--g", "0", "--mu", "4"])
            .status
            .code(),
        Some(1)
    );

    // a tampered entry is caught by the audit
    fs::remove_file(&cache).unwrap();
    assert!(fatrec(&cache, &["correlator", "--g", "0", "--mu", "4"])
        .status
        .success());
    let good = fs::read_to_string(&cache).unwrap();
    let tampered = good.replace(
        "\"mu\":[4],\"t_power\":3,\"coeff\":\"1/2\"",
        "\"mu\":[4],\"t_power\":3,\"coeff\":\"3/2\"",
    );
    assert_ne!(tampered, good);
    fs::write(&cache, tampered).unwrap();
    assert_eq!(
        fatrec(
            &cache,
            &["--paranoid", "correlator", "--g", "0", "--mu", "4"]
        )
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let args = [
        "--format",
        "json",
        "free-energy",
        "--genus",
        "0",
        "--max-weight",
        "6",
    ];
    let a = stdout(&fatrec(&cache, &args));
    let b = stdout(&fatrec(&cache, &args));
    let c = stdout(&fatrec(
        &cache,
        &[
            "--no-cache",
            "--format",
            "json",
            "free-energy",
            "--genus",
            "0",
            "--max-weight",
            "6",
        ],
    ));
    assert_eq!(a, b);
    assert_eq!(a, c);
}
