use std::path::PathBuf;
use std::process::{Command, Output};

fn thetahyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetahyp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thetahyp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list() {
    let o = thetahyp(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("eval1 ")));
    assert!(text.contains("series.triple-product"));

    let o = thetahyp(&["list", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 42);
}

#[test]
fn exit_codes() {
    let ok = thetahyp(&["verify", "--ids", "eval1", "--samples", "2"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("2 passed"));

    let failing = thetahyp(&["verify", "--ids", "fv-val2", "--samples", "1"]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(stdout(&failing).starts_with("FAIL"));

    let unknown = thetahyp(&["verify", "--ids", "evalX"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("evalX"));

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"identity_ids": ["eval1"], "sampels": 3}"#).unwrap();
    let o = thetahyp(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn series_check() {
    let o = thetahyp(&["series-check", "--ids", "series.triple-product", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 checks: 1 passed"));
    let o = thetahyp(&["series-check", "--ids", "eval1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_file() {
    let out = scratch("report.json");
    let o = thetahyp(&[
        "verify",
        "--ids",
        "kernel.theta-modular",
        "--samples",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["lhs"].as_array().unwrap().len(), 2);
    assert_eq!(results[0]["tolerance"], 1e-10);
}

#[test]
fn flags_override_the_config_file() {
    let config = scratch("config.json");
    let out = scratch("override.json");
    std::fs::write(
        &config,
        r#"{"identity_ids": ["kernel.theta-modular"], "samples_per_identity": 4, "seed": 3}"#,
    )
    .unwrap();
    let o = thetahyp(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--samples",
        "1",
        "--tol",
        "1e-9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(v["results"][0]["tolerance"], 1e-9);
}
