//! One-target, three-vehicle instances with hand-propagated expectations.

mod common;

use std::time::{Duration, Instant};

use sortie::schedule::Action;
use sortie::{
    extract_schedule, oracle_solve, solve_scenario, timing_propagation, validate, ObjectiveKind,
    RouteArc, Scenario, Solution, SolverParams, Task,
};

use common::{FAST, SLOW, THREE, TOL};

fn solved(text: &str) -> (Scenario, Solution, Duration) {
    let s = Scenario::from_json_str(text).unwrap();
    let t0 = Instant::now();
    let sol = solve_scenario(
        &s,
        ObjectiveKind::WeightedMakespan,
        &SolverParams::default(),
    )
    .unwrap();
    (s, sol, t0.elapsed())
}

fn times(sol: &Solution) -> [f64; 3] {
    Task::ALL.map(|t| sol.task_time(1, t))
}

fn close(a: [f64; 3], b: [f64; 3]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < TOL)
}

fn actions(s: &Scenario, sol: &Solution) -> Vec<Vec<Action>> {
    extract_schedule(s, sol)
        .unwrap()
        .vehicles
        .iter()
        .map(|tl| tl.events.iter().map(|e| e.action).collect())
        .collect()
}

#[test]
fn fast_self_attack() {
    let (s, sol, took) = solved(FAST);
    assert!(took < Duration::from_secs(1));
    assert!(close(times(&sol), [3.7, 3.81, 4.24]), "{:?}", times(&sol));
    assert!((sol.makespan.unwrap() - 4.24).abs() < TOL);
    assert_eq!(sol.performers(1, Task::Classify), [1]);
    assert_eq!(sol.performers(1, Task::Attack), [1]);
    assert_eq!(sol.performers(1, Task::Verify), [2]);
    use Action::*;
    assert_eq!(
        actions(&s, &sol),
        [
            vec![Depart, Classify, Attack],
            vec![Depart, Verify, Sink],
            vec![Depart, Sink]
        ]
    );
    for v in 1..=3 {
        assert!(sol.departure(v).abs() < TOL);
    }
    let oracle = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
    assert!((oracle.objective - sol.objective).abs() < TOL);
    assert!((sol.objective - (4.24 + 0.1 * (3.7 + 3.81 + 4.24))).abs() < TOL);
    assert!(validate(&s, &sol).unwrap().ok);
    common::check_invariants(&s, &sol).unwrap();
}

#[test]
fn slow_self_attack_delays_the_verifier() {
    let (s, sol, _) = solved(SLOW);
    let [c, a, v] = times(&sol);
    assert!((a - (c + 1.1)).abs() < TOL);
    assert!((v - (a + 0.1)).abs() < TOL);
    assert!(close([c, a, v], [3.7, 4.8, 4.9]));
    assert_eq!(sol.performers(1, Task::Attack), [1]);
    assert_eq!(sol.performers(1, Task::Verify), [2]);
    assert!((sol.departure(2) - 0.66).abs() < TOL);
    let oracle = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
    assert!((oracle.objective - sol.objective).abs() < TOL);
    assert!(validate(&s, &sol).unwrap().ok);
    common::check_invariants(&s, &sol).unwrap();
}

#[test]
fn three_roles() {
    let (s, sol, took) = solved(THREE);
    assert!(took < Duration::from_secs(1));
    assert!(close(times(&sol), [3.7, 4.24, 4.50]));
    assert!((sol.makespan.unwrap() - 4.50).abs() < TOL);
    assert_eq!(sol.performers(1, Task::Classify), [1]);
    assert_eq!(sol.performers(1, Task::Attack), [2]);
    assert_eq!(sol.performers(1, Task::Verify), [3]);
    let sched = extract_schedule(&s, &sol).unwrap();
    assert_eq!(sched.survivors, [1, 3]);
    assert_eq!(sched.vehicles[1].attacked(), Some(1));
    assert!(validate(&s, &sol).unwrap().ok);
    common::check_invariants(&s, &sol).unwrap();
}

#[test]
fn propagation_of_hand_routes() {
    let leg = |task, from, to| RouteArc { task, from, to };
    let s = Scenario::from_json_str(FAST).unwrap();
    let routes = vec![
        vec![leg(Task::Classify, 2, 1), leg(Task::Attack, 1, 1)],
        vec![leg(Task::Verify, 3, 1)],
        vec![],
    ];
    let t = timing_propagation(&s, &routes).unwrap();
    assert!(close(t.task_times[0], [3.7, 3.81, 4.24]));

    let s = Scenario::from_json_str(THREE).unwrap();
    let routes = vec![
        vec![leg(Task::Classify, 2, 1)],
        vec![leg(Task::Attack, 3, 1)],
        vec![leg(Task::Verify, 4, 1)],
    ];
    let t = timing_propagation(&s, &routes).unwrap();
    assert!(close(t.task_times[0], [3.7, 4.24, 4.50]));
}

#[test]
fn early_verifier_waits_for_the_attack() {
    // Verifier could arrive at 1.0, before the attack at 3.81.
    let text = FAST.replace("\"t\": 4.24", "\"t\": 1.0");
    let s = Scenario::from_json_str(&text).unwrap();
    let routes = vec![
        vec![
            RouteArc {
                task: Task::Classify,
                from: 2,
                to: 1,
            },
            RouteArc {
                task: Task::Attack,
                from: 1,
                to: 1,
            },
        ],
        vec![RouteArc {
            task: Task::Verify,
            from: 3,
            to: 1,
        }],
        vec![],
    ];
    let t = timing_propagation(&s, &routes).unwrap();
    assert!((t.time(1, Task::Verify) - (3.81 + 0.1)).abs() < TOL);
    assert!((t.departures[1] - 2.91).abs() < TOL);
}

#[test]
fn symmetric_roles_resolve_to_the_lowest_vehicle() {
    let s = Scenario::from_json_str(
        r#"{"n":1,"w":2,"endurance":100,"flight_times":{"t_default":[
        {"i":1,"j":1,"t":0.5},{"i":2,"j":1,"t":2},{"i":3,"j":1,"t":2}]}}"#,
    )
    .unwrap();
    let oracle = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
    assert_eq!(oracle.performers(1, Task::Classify), [1]);
    assert_eq!(oracle.performers(1, Task::Verify), [2]);
    let sol = solve_scenario(
        &s,
        ObjectiveKind::WeightedMakespan,
        &SolverParams::default(),
    )
    .unwrap();
    assert!((sol.objective - oracle.objective).abs() < TOL);
}
