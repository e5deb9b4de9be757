//! End-to-end runs of the `sortie` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn fast() -> PathBuf {
    scenario("one_target_fast_self_attack.json")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sortie"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stats_prints_the_shape_line_first() {
    let o = run(&["stats", fast().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "binary=18 continuous=7 equality=6"
    );
}

#[test]
fn solved_plans_pass_check() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "one_target_fast_self_attack.json",
        "one_target_slow_self_attack.json",
        "one_target_three_roles.json",
    ] {
        let plan = dir.path().join(name);
        let s = scenario(name);
        let o = run(&[
            "solve",
            s.to_str().unwrap(),
            "--out",
            plan.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let o = run(&[
            "check",
            s.to_str().unwrap(),
            "--plan",
            plan.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
}

#[test]
fn solve_writes_plan_json_to_stdout() {
    let o = run(&["solve", fast().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let plan: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(plan["status"], "optimal");
    assert!((plan["objective"].as_f64().unwrap() - 5.415).abs() < 1e-6);
    assert!((plan["makespan"].as_f64().unwrap() - 4.24).abs() < 1e-6);
    assert!((plan["times"]["target 1"]["attack"].as_f64().unwrap() - 3.81).abs() < 1e-6);
    assert_eq!(plan["vehicles"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["solve", fast().to_str().unwrap()]);
    let b = run(&["solve", fast().to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn second_attacker_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["solve", fast().to_str().unwrap()]);
    let mut plan: Value = serde_json::from_slice(&o.stdout).unwrap();
    plan["vehicles"][2]["events"] = json!([
        {"t": 0.0, "node": 4, "action": "depart"},
        {"t": 3.81, "node": 1, "action": "attack"}
    ]);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, plan.to_string()).unwrap();
    let o = run(&[
        "check",
        fast().to_str().unwrap(),
        "--plan",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("SA"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["solve", "--objective", "fastest"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["solve", "/nonexistent/scenario.json"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let crowded = dir.path().join("crowded.json");
    std::fs::write(
        &crowded,
        r#"{"n":2,"w":2,"flight_times":{"t_default":[{"i":1,"j":2,"t":1}]}}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["validate", crowded.to_str().unwrap()])), 2);

    let limited = run(&["solve", fast().to_str().unwrap(), "--node-limit", "2"]);
    assert_eq!(code(&limited), 3);
}

#[test]
fn export_lp_has_every_section() {
    let o = run(&["export-lp", fast().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for section in ["Minimize", "Subject To", "Bounds", "Binary", "End"] {
        assert!(text.contains(section), "missing {section}");
    }
}

#[test]
fn oracle_agrees_on_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = run(&[
        "oracle",
        "--gen",
        "2,3",
        "--seed",
        "5",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("agree"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn stats_on_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    for ((n, w), (binary, continuous), equality) in [
        ((2, 3), (51, 10), 9),
        ((2, 4), (68, 11), 10),
        ((2, 5), (85, 12), 11),
        ((3, 4), (136, 14), 13),
    ] {
        let path = dir.path().join(format!("n{n}w{w}.json"));
        let s = sortie::random_scenario(n, w, 1).unwrap();
        std::fs::write(&path, s.to_json_string()).unwrap();
        let o = run(&["stats", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(
            stdout(&o).lines().next().unwrap(),
            format!("binary={binary} continuous={continuous} equality={equality}")
        );
    }
}
