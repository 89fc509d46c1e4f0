use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tabsieve"))
        .env_remove("TABSIEVE_CACHE_DIR")
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(text: &str) -> Vec<serde_json::Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn promotion_of_a_single_tableau() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["tableau", "1 1 2 / 3 3 4 / 4", "--n", "4", "--op", "promote"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 1 3\n2 2 4\n4");
    let o = run(dir.path(), &["tableau", "1 2 / 2", "--n", "3", "--op", "f:2", "--op", "pr", "--op", "pr"]);
    assert_eq!(stdout(&o).trim(), "1 3\n2");
    let o = run(dir.path(), &["tableau", "1 1 / 2", "--n", "3", "--op", "e:1"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["tableau", "1 2 / 2", "--n", "3", "--op", "s:3"][..],
        &["tableau", "2 1", "--n", "3", "--op", "c"],
        &["tableau", "1 2", "--n", "3", "--op", "twist"],
        &["sweep", "--shape", "2,1", "--n", "3", "--checks", "nonsense"],
        &["sweep", "--shape", "2,1"],
        &["sweep", "--size-max", "3", "--n-min", "5", "--n-max", "4"],
        &["csp", "--shape", "2,1", "--n", "3", "--poly", "q^^"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn csp_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(dir.path(), &["csp", "--shape", "2,1,1,1", "--n", "5", "--poly", "staircase"]);
    assert_eq!(ok.status.code(), Some(0));
    let fails = run(dir.path(), &["csp", "--shape", "2,1,1,1", "--n", "5"]);
    assert_eq!(fails.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&fails)).unwrap();
    assert_eq!(report["report"]["verdict"], false);
    let expected = run(dir.path(), &["csp", "--shape", "2,1,1,1", "--n", "5", "--expect", "false"]);
    assert_eq!(expected.status.code(), Some(0));
    let class = run(dir.path(), &["csp", "--shape", "2,1", "--n", "4", "--content", "1,1,1,0"]);
    assert_eq!(class.status.code(), Some(0), "{}", stdout(&class));
}

#[test]
fn sweep_writes_jsonl_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.jsonl");
    let o = run(
        dir.path(),
        &[
            "sweep",
            "--size-max",
            "4",
            "--n-max",
            "5",
            "--coprime-only",
            "--checks",
            "free-orbits,csp-principal,bicsp",
            "--jobs",
            "2",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("0 unexpected"));
    let lines = records(&fs::read_to_string(&out).unwrap());
    assert_eq!(lines.first().unwrap()["record"], "header");
    assert_eq!(lines.last().unwrap()["record"], "summary");
    let cases = lines.iter().filter(|l| l["record"] == "case").count();
    assert_eq!(lines.last().unwrap()["cases"], cases);
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    fs::write(
        &config,
        r#"{
            "shapes": {"family": "explicit", "shapes": [[2, 1, 1, 1]]},
            "n_min": 5, "n_max": 5,
            "checks": ["csp-principal", "csp-staircase"],
            "expectations": [{"check": "csp-principal", "verdict": true}]
        }"#,
    )
    .unwrap();
    let path = config.to_str().unwrap();
    let o = run(dir.path(), &["sweep", "--config", path]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(dir.path(), &["sweep", "--config", path, "--checks", "csp-staircase"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = records(&stdout(&o));
    assert_eq!(lines[0]["config"]["checks"], serde_json::json!(["csp-staircase"]));
    fs::write(&config, r#"{"shapes": {"family": "hooks", "size_min": 1, "size_max": 3}, "n_max": 3, "bogus": 1}"#)
        .unwrap();
    assert_eq!(run(dir.path(), &["sweep", "--config", path]).status.code(), Some(2));
}

#[test]
fn cache_inspect_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bicsp", "--shape", "3,1,1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stats: serde_json::Value = serde_json::from_str(&stdout(&run(dir.path(), &["cache", "inspect"]))).unwrap();
    assert!(stats["records"].as_u64().unwrap() > 0);
    assert_eq!(stats["version"], 1);
    let cleared: serde_json::Value = serde_json::from_str(&stdout(&run(dir.path(), &["cache", "clear"]))).unwrap();
    assert_eq!(cleared["removed"], true);
    let stats: serde_json::Value = serde_json::from_str(&stdout(&run(dir.path(), &["cache", "inspect"]))).unwrap();
    assert_eq!(stats["records"], 0);
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tabsieve"))
        .env("TABSIEVE_CACHE_DIR", dir.path())
        .args(["bicsp", "--shape", "2,1", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("kostka-foulkes.v1.jsonl").exists());
}

#[test]
fn orders_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["orders", "--shape", "2,2,2,1", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["orders"]["total_order_pr"], 36);
    let o = run(dir.path(), &["orders", "--shape", "3,1,1", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hook_formula"], v["orders"]["total_order_pr"]);
}
