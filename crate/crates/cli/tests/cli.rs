use std::process::{Command, Output};

fn jcmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcmp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compare_csv_has_expected_columns() {
    let o = jcmp(&["compare"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("planner,motion_J,comm_J,total_J,savings_pct"));
    let planners: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(planners, ["baseline", "single", "multi"]);
    assert!(text.contains("baseline,") && text.lines().nth(1).unwrap().ends_with(",0.0"));
}

#[test]
fn run_writes_out_file_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("steps.json");
    let log = dir.path().join("runs.jsonl");
    for _ in 0..2 {
        let o = jcmp(&[
            "run",
            "--planner",
            "single",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
            "--log",
            log.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["planner"], "single");
    assert_eq!(report["steps"].as_array().unwrap().len(), 3);
    let records = jcmp_core::simcore::read_run_log(&log).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].total_j, report["totals"]["total_j"].as_f64().unwrap());
}

#[test]
fn infeasible_scenario_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let text = jcmp_core::simcore::DEFAULT_SCENARIO.replace("p_max = 4.0", "p_max = 0.01");
    assert_ne!(text, jcmp_core::simcore::DEFAULT_SCENARIO);
    std::fs::write(dir.path().join("modes.toml"), jcmp_core::channel::DEFAULT_MODE_TABLE).unwrap();
    let path = dir.path().join("s.toml");
    std::fs::write(&path, text).unwrap();
    let o = jcmp(&["compare", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
}

#[test]
fn bad_config_exits_2_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let text = jcmp_core::simcore::DEFAULT_SCENARIO.replace("eps_target = 0.01", "eps_target = 1.5");
    std::fs::write(dir.path().join("modes.toml"), jcmp_core::channel::DEFAULT_MODE_TABLE).unwrap();
    let path = dir.path().join("s.toml");
    std::fs::write(&path, text).unwrap();
    let o = jcmp(&["run", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eps_target"));

    assert_eq!(jcmp(&["run", "--scenario", "/no/such/file.toml"]).status.code(), Some(2));
    assert_eq!(jcmp(&["run", "--planner", "psychic"]).status.code(), Some(2));
    assert_eq!(jcmp(&["validate", "--samples", "10"]).status.code(), Some(2));
}

#[test]
fn validate_seed_changes_samples() {
    let a = stdout(&jcmp(&["validate", "--seed", "1", "--samples", "10000"]));
    let b = stdout(&jcmp(&["validate", "--seed", "2", "--samples", "10000"]));
    assert!(a.starts_with("step,hop,mode,mean_snr_dB,budget,closed_form,empirical,std_err,flagged"));
    assert_eq!(a.lines().count(), 7);
    assert_ne!(a, b);
}

#[test]
fn cqm_reports_connected_chain() {
    let o = jcmp(&["cqm"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let value = |k: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{k},")))
            .unwrap()
            .parse()
            .unwrap()
    };
    // relay chain: sense-router and router-base in range, direct link out of range
    assert!((value("algebraic_connectivity") - 1.0).abs() < 1e-9);
    assert_eq!(value("paths_sense_to_base"), 1.0);
    assert!(value("capacity_direct_bps") < value("capacity_sr_bps"));
}
