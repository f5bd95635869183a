use std::path::PathBuf;
use std::process::Command;

use massless::config::RunConfig;
use massless::report::{parse_report_json, to_json};
use massless::suites::run_suite;

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("massless-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_massless"));
    c.env_remove("MASSLESS_OUT_DIR");
    c
}

fn quick() -> RunConfig {
    RunConfig { samples: 100, ..RunConfig::default() }
}

#[test]
fn core_suite_passes_at_defaults() {
    let r = run_suite("core", &RunConfig::default()).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.records.iter().all(|x| !x.anchor.is_empty()));
}

#[test]
fn cheap_suites_pass_and_are_deterministic() {
    let cfg = RunConfig { seed: 7, ..quick() };
    for s in ["core", "little-group", "perception", "spin", "parity"] {
        let a = run_suite(s, &cfg).unwrap();
        assert!(a.passed(), "{s}: {:?}", a.failures().collect::<Vec<_>>());
        let b = run_suite(s, &cfg).unwrap();
        assert_eq!(to_json(&a), to_json(&b));
    }
}

#[test]
fn verify_writes_identical_reports_for_a_seed() {
    let (d1, d2) = (scratch("a"), scratch("b"));
    for d in [&d1, &d2] {
        let st = bin().args(["--seed", "7", "--out"]).arg(d).args(["verify", "--suite", "parity"]).status().unwrap();
        assert!(st.success());
    }
    let a = std::fs::read(d1.join("parity.json")).unwrap();
    assert_eq!(a, std::fs::read(d2.join("parity.json")).unwrap());
    let r = parse_report_json(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!(r.seed, 7);
    for d in [d1, d2] {
        std::fs::remove_dir_all(d).unwrap();
    }
}

#[test]
fn chern_spin_two_reports_minus_two() {
    let d = scratch("chern");
    let st = bin().arg("--out").arg(&d).args(["chern", "--spin", "2", "--refine", "1"]).status().unwrap();
    assert!(st.success());
    let r = parse_report_json(&std::fs::read_to_string(d.join("chern_2.json")).unwrap()).unwrap();
    assert!((r.values["c1"] + 2.0).abs() < 1e-3);
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn csv_rows_match_records() {
    let d = scratch("csv");
    let st = bin().arg("--out").arg(&d).args(["--format", "csv", "verify", "--suite", "core"]).status().unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(d.join("core.csv")).unwrap();
    let r = run_suite("core", &RunConfig::default()).unwrap();
    assert_eq!(text.lines().count(), r.records.len() + 1);
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn env_var_sets_output_dir_and_flag_wins() {
    let (env_dir, flag_dir) = (scratch("env"), scratch("flag"));
    let st = bin().env("MASSLESS_OUT_DIR", &env_dir).args(["verify", "--suite", "core"]).status().unwrap();
    assert!(st.success());
    assert!(env_dir.join("core.json").exists());
    let st = bin().env("MASSLESS_OUT_DIR", &env_dir).arg("--out").arg(&flag_dir).args(["verify", "--suite", "little-group"]).status().unwrap();
    assert!(st.success());
    assert!(flag_dir.join("little-group.json").exists() && !env_dir.join("little-group.json").exists());
    for d in [env_dir, flag_dir] {
        std::fs::remove_dir_all(d).unwrap();
    }
}

#[test]
fn exit_codes() {
    let d = scratch("codes");
    std::fs::create_dir_all(&d).unwrap();
    let out = bin().arg("--out").arg(&d).args(["verify", "--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let missing = bin().args(["--config", "/nonexistent/config.json", "verify", "--suite", "core"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    // a tolerance nothing can meet makes the run fail with exit code 1
    let cfg = d.join("strict.json");
    std::fs::write(&cfg, r#"{"tolerances": {"wigner": 1e-300}}"#).unwrap();
    let strict = bin().arg("--config").arg(&cfg).arg("--out").arg(&d).args(["verify", "--suite", "little-group"]).output().unwrap();
    assert_eq!(strict.status.code(), Some(1));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn tau_demo_writes_plot_data() {
    let d = scratch("tau");
    let st = bin().arg("--out").arg(&d).args(["tau-demo", "--steps", "2"]).status().unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(d.join("tau_demo.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 3);
    std::fs::remove_dir_all(d).unwrap();
}
