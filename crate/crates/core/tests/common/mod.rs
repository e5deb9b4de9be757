//! Fixtures and checks shared by the integration tests and the acceptance
//! harness.

#![allow(dead_code)]

use sortie::solution::{Assignment, SolveStatus};
use sortie::{
    build_model, extract_schedule, oracle_solve, random_scenario, timing_propagation, validate,
    Family, ObjectiveKind, RouteArc, Scenario, Solution, Task,
};

pub const FAST: &str = include_str!("../../scenarios/one_target_fast_self_attack.json");
pub const SLOW: &str = include_str!("../../scenarios/one_target_slow_self_attack.json");
pub const THREE: &str = include_str!("../../scenarios/one_target_three_roles.json");

pub const TOL: f64 = 1e-6;

/// Two targets, four vehicles: vehicle 1 classifies both, vehicles 2 and 3
/// attack one each from their sources, vehicle 4 verifies both.
pub fn two_target_sweep() -> (Scenario, Solution) {
    let s = random_scenario(2, 4, 11).unwrap();
    let leg = |task, from, to| RouteArc { task, from, to };
    let routes = vec![
        vec![leg(Task::Classify, 3, 1), leg(Task::Classify, 1, 2)],
        vec![leg(Task::Attack, 4, 1)],
        vec![leg(Task::Attack, 5, 2)],
        vec![leg(Task::Verify, 6, 1), leg(Task::Verify, 1, 2)],
    ];
    let timing = timing_propagation(&s, &routes).unwrap();
    let mut a = Assignment::zeros(2, 4);
    for (idx, route) in routes.iter().enumerate() {
        for r in route {
            a.set_arc(idx + 1, r.task, r.from, r.to, 1.0);
        }
    }
    a.set_sink(1, 2, 1.0);
    a.set_sink(4, 2, 1.0);
    let sol = Solution {
        status: SolveStatus::Optimal,
        kind: ObjectiveKind::WeightedMakespan,
        objective: f64::NAN,
        assignment: a,
        makespan: Some(timing.latest_verify()),
        task_times: timing.task_times,
        departures: timing.departures,
        node_count: 0,
    };
    (s, sol)
}

/// Composite Simpson on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    let h = (b - a) / steps as f64;
    let mut sum = f(a) + f(b);
    for k in 1..steps {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + k as f64 * h);
    }
    sum * h / 3.0
}

/// The seeded equivalence sweep: four instances for every `n` in `{1, 2}` and
/// `w` in `n+1..=4`, seeds counting up from 1.
pub fn equivalence_instances() -> Vec<Scenario> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    for n in 1..=2usize {
        for w in n + 1..=4 {
            for _ in 0..4 {
                seed += 1;
                out.push(random_scenario(n, w, seed).unwrap());
            }
        }
    }
    out
}

type Mutation = (&'static str, Family, fn(&mut Solution));

/// One hand-picked mutation per family on the one-target self-attack plan.
const ONE_TARGET: [Mutation; 12] = [
    ("classification dropped", Family::MC, |m| {
        m.assignment.set_arc(1, Task::Classify, 2, 1, 0.0)
    }),
    ("second attacker", Family::SA, |m| {
        m.assignment.set_arc(2, Task::Attack, 3, 1, 1.0)
    }),
    ("verifier enters the target twice", Family::VO, |m| {
        m.assignment.set_arc(2, Task::Classify, 3, 1, 1.0)
    }),
    ("attacker also leaves", Family::CT, |m| {
        m.assignment.set_sink(1, 1, 1.0)
    }),
    ("idle vehicle never leaves", Family::SD, |m| {
        m.assignment.set_sink(3, 4, 0.0)
    }),
    ("self-attack without classifying", Family::CA, |m| {
        m.assignment.set_arc(2, Task::Attack, 1, 1, 1.0)
    }),
    (
        "self-attack detached from classification",
        Family::T2,
        |m| m.task_times[0][1] += 0.3,
    ),
    ("verifier departs late", Family::TS, |m| {
        m.departures[1] = 0.3
    }),
    ("verification at classification time", Family::TO, |m| {
        m.task_times[0][2] = m.task_times[0][0]
    }),
    ("makespan below last verification", Family::TF, |m| {
        m.makespan = Some(4.0)
    }),
    ("fractional arc", Family::DOM, |m| {
        m.assignment.set_arc(3, Task::Verify, 4, 1, 0.5)
    }),
    ("negative departure", Family::DOM, |m| {
        m.departures[2] = -1.0
    }),
];

/// Mutations that need two targets.
const TWO_TARGET: [Mutation; 4] = [
    ("second classification late", Family::T13, |m| {
        m.task_times[1][0] += 0.3
    }),
    ("vehicle leaves a target twice", Family::LO, |m| {
        m.assignment.set_sink(1, 1, 1.0)
    }),
    ("attacker attacks twice", Family::PM, |m| {
        m.assignment.set_arc(2, Task::Attack, 4, 2, 1.0)
    }),
    ("verifier also attacks", Family::VA, |m| {
        m.assignment.set_arc(4, Task::Attack, 6, 1, 1.0)
    }),
];

/// Applies every targeted mutation and returns the label, the expected family
/// and the families the validator reported.
pub fn targeted_mutations() -> Vec<(&'static str, Family, Vec<Family>)> {
    let fast = Scenario::from_json_str(FAST).unwrap();
    let fast_base = oracle_solve(&fast, ObjectiveKind::WeightedMakespan).unwrap();
    let (sweep, sweep_base) = two_target_sweep();
    let cases = ONE_TARGET
        .iter()
        .map(|c| (&fast, &fast_base, c))
        .chain(TWO_TARGET.iter().map(|c| (&sweep, &sweep_base, c)));
    cases
        .map(|(s, base, &(label, family, mutate))| {
            let mut m = base.clone();
            mutate(&mut m);
            (label, family, validate(s, &m).unwrap().families())
        })
        .collect()
}

/// Time at which vehicle `v` finished at node `i`: its departure for its own
/// source, otherwise the task it flew into `i` for.
fn finished_at(s: &Scenario, sol: &Solution, v: usize, i: usize) -> Result<f64, String> {
    if i > s.n() {
        return Ok(sol.departure(v));
    }
    let into: Vec<Task> = sol
        .assignment
        .active_arcs()
        .filter(|&(u, _, from, to)| u == v && to == i && from != to)
        .map(|(_, task, _, _)| task)
        .collect();
    match into.as_slice() {
        [task] => Ok(sol.task_time(i, *task)),
        _ => Err(format!("vehicle {v} reached {i} {} times", into.len())),
    }
}

/// Active arcs hold with equality, tasks on each target are at least epsilon
/// apart, exactly `w - n` vehicles survive and the decoded flight time equals
/// the total-time objective of the same solution.
pub fn check_invariants(s: &Scenario, sol: &Solution) -> Result<(), String> {
    for (v, task, i, j) in sol.assignment.active_arcs() {
        let pred = if i == j {
            sol.task_time(j, Task::Classify)
        } else {
            finished_at(s, sol, v, i)?
        };
        let gap = sol.task_time(j, task) - pred - s.time(v, task, i, j);
        if gap.abs() > TOL {
            return Err(format!("arc v{v} {task:?} {i}->{j} off by {gap}"));
        }
    }
    for j in 1..=s.n() {
        let c = sol.task_time(j, Task::Classify);
        let a = sol.task_time(j, Task::Attack);
        let vf = sol.task_time(j, Task::Verify);
        if a - c < s.epsilon() - TOL || vf - a < s.epsilon() - TOL {
            return Err(format!("target {j} gaps {} and {}", a - c, vf - a));
        }
    }
    let sched = extract_schedule(s, sol).map_err(|e| e.to_string())?;
    if sched.survivors.len() != s.w() - s.n() {
        return Err(format!(
            "{} survivors with w={} n={}",
            sched.survivors.len(),
            s.w(),
            s.n()
        ));
    }
    let model = build_model(s, ObjectiveKind::TotalFlightTime);
    let values = sol.to_model_values(&model);
    let flown: f64 = model
        .objective
        .coeffs
        .iter()
        .map(|&(k, c)| c * values[k])
        .sum();
    if (flown - sched.total_flight_time).abs() > 1e-9 {
        return Err(format!(
            "flight time {} vs objective {flown}",
            sched.total_flight_time
        ));
    }
    Ok(())
}

/// Solving the instance with every time scaled by `lambda` picks the same
/// assignment and scales times and objective by `lambda`.
pub fn check_scaling(s: &Scenario, kind: ObjectiveKind, lambda: f64) -> Result<(), String> {
    let base = oracle_solve(s, kind).map_err(|e| e.to_string())?;
    let scaled = oracle_solve(&s.scaled(lambda), kind).map_err(|e| e.to_string())?;
    if base.assignment != scaled.assignment {
        return Err(format!("assignment changed under lambda={lambda}"));
    }
    let tol = TOL * lambda.max(1.0);
    if (scaled.objective - lambda * base.objective).abs() > tol {
        return Err(format!(
            "objective {} vs {}",
            scaled.objective,
            lambda * base.objective
        ));
    }
    for j in 1..=s.n() {
        for task in Task::ALL {
            let want = lambda * base.task_time(j, task);
            if (scaled.task_time(j, task) - want).abs() > tol {
                return Err(format!(
                    "target {j} {task:?} {} vs {want}",
                    scaled.task_time(j, task)
                ));
            }
        }
    }
    Ok(())
}
