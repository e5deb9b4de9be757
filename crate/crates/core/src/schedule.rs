//! Per-vehicle timelines, the plan file format and an independent checker.
//!
//! [`validate`] evaluates every routing and timing rule straight from the
//! scenario and a candidate [`Solution`]; it never looks at model rows.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ScheduleError;
use crate::model::{Family, ObjectiveKind};
use crate::scenario::{Scenario, Task};
use crate::solution::{Assignment, Solution, SolveStatus};

/// Residual above which a rule counts as violated.
pub const TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Depart,
    Classify,
    Attack,
    Verify,
    Sink,
}

impl From<Task> for Action {
    fn from(t: Task) -> Self {
        match t {
            Task::Classify => Action::Classify,
            Task::Attack => Action::Attack,
            Task::Verify => Action::Verify,
        }
    }
}

impl Action {
    pub fn task(self) -> Option<Task> {
        match self {
            Action::Classify => Some(Task::Classify),
            Action::Attack => Some(Task::Attack),
            Action::Verify => Some(Task::Verify),
            Action::Depart | Action::Sink => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub node: usize,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VehicleTimeline {
    pub vehicle: usize,
    pub events: Vec<Event>,
    /// Sum of flight times along the route.
    pub flight_time: f64,
}

impl VehicleTimeline {
    pub fn reached_sink(&self) -> bool {
        self.events.last().is_some_and(|e| e.action == Action::Sink)
    }

    pub fn attacked(&self) -> Option<usize> {
        self.events
            .iter()
            .find(|e| e.action == Action::Attack)
            .map(|e| e.node)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub vehicles: Vec<VehicleTimeline>,
    /// Vehicles that reach the sink, ascending.
    pub survivors: Vec<usize>,
    /// Latest verification time.
    pub makespan: f64,
    pub total_flight_time: f64,
}

/// Follows the active arcs out of every source and attaches the solution's
/// times to each visit.
pub fn extract_schedule(s: &Scenario, sol: &Solution) -> Result<Schedule, ScheduleError> {
    check_dims(s, &sol.assignment)?;
    if sol.status != SolveStatus::Optimal {
        return Err(ScheduleError::NotSolved(sol.status.name().to_string()));
    }
    let (n, w) = (s.n(), s.w());
    let a = &sol.assignment;
    let sink = s.sink_index().0;
    let mut vehicles = Vec::with_capacity(w);
    for v in 1..=w {
        let broken = |reason: String| ScheduleError::BrokenFlow { vehicle: v, reason };
        let src = s.source_of(v).0;
        let mut events = vec![Event {
            t: sol.departure(v),
            node: src,
            action: Action::Depart,
        }];
        let mut flight = 0.0;
        let mut at = src;
        let mut used = 0usize;
        loop {
            let mut next: Vec<(Task, usize)> = Vec::new();
            for task in Task::ALL {
                for j in 1..=n {
                    if s.is_admissible(v, task, at, j) && a.arc(v, task, at, j) > 0.5 {
                        next.push((task, j));
                    }
                }
            }
            let retire = a.sink(v, at) > 0.5;
            let last_t = events.last().map_or(0.0, |e| e.t);
            match (next.as_slice(), retire) {
                ([], true) => {
                    events.push(Event {
                        t: last_t,
                        node: sink,
                        action: Action::Sink,
                    });
                    break;
                }
                ([(task, j)], false) => {
                    used += 1;
                    if used > 3 * n {
                        return Err(broken("route does not terminate".into()));
                    }
                    flight += s.time(v, *task, at, *j);
                    events.push(Event {
                        t: sol.task_time(*j, *task),
                        node: *j,
                        action: (*task).into(),
                    });
                    if *task == Task::Attack {
                        break;
                    }
                    at = *j;
                }
                ([], false) => {
                    return Err(broken(format!("dangling at node {at}")));
                }
                _ => return Err(broken(format!("several active exits from node {at}"))),
            }
        }
        vehicles.push(VehicleTimeline {
            vehicle: v,
            events,
            flight_time: flight,
        });
    }

    let used_arcs = a.active_arcs().count();
    let followed: usize = vehicles
        .iter()
        .map(|tl| {
            tl.events
                .iter()
                .filter(|e| e.action.task().is_some())
                .count()
        })
        .sum();
    if used_arcs != followed {
        let v = vehicles
            .iter()
            .find(|tl| {
                let on_route = tl
                    .events
                    .iter()
                    .filter(|e| e.action.task().is_some())
                    .count();
                a.active_arcs().filter(|arc| arc.0 == tl.vehicle).count() != on_route
            })
            .map_or(1, |tl| tl.vehicle);
        return Err(ScheduleError::BrokenFlow {
            vehicle: v,
            reason: "active arcs not reachable from the source".into(),
        });
    }

    let survivors = vehicles
        .iter()
        .filter(|tl| tl.reached_sink())
        .map(|tl| tl.vehicle)
        .collect();
    let makespan = (1..=n)
        .map(|j| sol.task_time(j, Task::Verify))
        .fold(0.0, f64::max);
    let total_flight_time = total_flight_time(s, a);
    Ok(Schedule {
        vehicles,
        survivors,
        makespan,
        total_flight_time,
    })
}

/// Sum of flight times over every active arc.
pub fn total_flight_time(s: &Scenario, a: &Assignment) -> f64 {
    a.active_arcs()
        .filter(|&(v, task, i, j)| s.is_admissible(v, task, i, j))
        .map(|(v, task, i, j)| s.time(v, task, i, j))
        .sum()
}

fn check_dims(s: &Scenario, a: &Assignment) -> Result<(), ScheduleError> {
    if a.n() != s.n() || a.w() != s.w() {
        return Err(ScheduleError::DimensionMismatch {
            n: a.n(),
            w: a.w(),
            sn: s.n(),
            sw: s.w(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub family: Family,
    pub instance: String,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} residual {:.6e}",
            self.family, self.instance, self.residual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnduranceFlag {
    pub vehicle: usize,
    pub flight_time: f64,
    pub endurance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub endurance_flags: Vec<EnduranceFlag>,
    pub ok: bool,
}

impl ValidationReport {
    pub fn has(&self, family: Family) -> bool {
        self.violations.iter().any(|v| v.family == family)
    }

    pub fn families(&self) -> Vec<Family> {
        let mut out: Vec<Family> = self.violations.iter().map(|v| v.family).collect();
        out.sort();
        out.dedup();
        out
    }
}

struct Checker<'a> {
    s: &'a Scenario,
    a: &'a Assignment,
    violations: Vec<Violation>,
}

impl Checker<'_> {
    fn x(&self, v: usize, task: Task, i: usize, j: usize) -> f64 {
        if self.s.is_admissible(v, task, i, j) {
            self.a.arc(v, task, i, j)
        } else {
            0.0
        }
    }

    /// Arrivals of `v` at target `j` for `task`, from any other node.
    fn arrivals(&self, v: usize, task: Task, j: usize) -> f64 {
        let nodes = self.s.n() + self.s.w();
        (1..=nodes)
            .filter(|&i| i != j)
            .map(|i| self.x(v, task, i, j))
            .sum()
    }

    /// Departures of `v` from target `j` to another target or the sink.
    fn exits(&self, v: usize, j: usize) -> f64 {
        let n = self.s.n();
        let legs: f64 = Task::ALL
            .iter()
            .flat_map(|&task| (1..=n).filter(move |&i| i != j).map(move |i| (task, i)))
            .map(|(task, i)| self.x(v, task, j, i))
            .sum();
        legs + self.a.sink(v, j)
    }

    fn at_most(&mut self, family: Family, instance: String, lhs: f64, cap: f64) {
        if lhs - cap > TOLERANCE {
            self.violations.push(Violation {
                family,
                instance,
                residual: lhs - cap,
            });
        }
    }

    fn exactly(&mut self, family: Family, instance: String, lhs: f64, target: f64) {
        if (lhs - target).abs() > TOLERANCE {
            self.violations.push(Violation {
                family,
                instance,
                residual: (lhs - target).abs(),
            });
        }
    }

    /// `|gap - t| <= slack` where `slack` is zero exactly when the guard holds.
    fn guarded(&mut self, family: Family, instance: String, gap: f64, t: f64, slack: f64) {
        let r = (gap - t).abs() - slack;
        if r > TOLERANCE {
            self.violations.push(Violation {
                family,
                instance,
                residual: r,
            });
        }
    }
}

/// Re-checks every routing and timing rule on a candidate solution.
pub fn validate(s: &Scenario, sol: &Solution) -> Result<ValidationReport, ScheduleError> {
    check_dims(s, &sol.assignment)?;
    if sol.task_times.len() != s.n() || sol.departures.len() != s.w() {
        return Err(ScheduleError::DimensionMismatch {
            n: sol.task_times.len(),
            w: sol.departures.len(),
            sn: s.n(),
            sw: s.w(),
        });
    }
    let (n, w) = (s.n(), s.w());
    let a = &sol.assignment;
    let mut c = Checker {
        s,
        a,
        violations: Vec::new(),
    };

    // Binary domain, admissibility, non-negative times.
    for (v, task, i, j) in a.arc_slots() {
        let x = a.arc(v, task, i, j);
        let label = format!("x_v{v}_k{}_i{i}_j{j}", task.number());
        if !s.is_admissible(v, task, i, j) {
            c.at_most(Family::DOM, label, x.abs(), 0.0);
        } else {
            let r = x.abs().min((x - 1.0).abs());
            if r > TOLERANCE {
                c.violations.push(Violation {
                    family: Family::DOM,
                    instance: label,
                    residual: r,
                });
            }
        }
    }
    for v in 1..=w {
        for i in 1..=n + w {
            let x = a.sink(v, i);
            let label = format!("xs_v{v}_i{i}");
            if i > n && i != n + v {
                c.at_most(Family::DOM, label, x.abs(), 0.0);
            } else if x.abs().min((x - 1.0).abs()) > TOLERANCE {
                c.violations.push(Violation {
                    family: Family::DOM,
                    instance: label,
                    residual: x.abs().min((x - 1.0).abs()),
                });
            }
        }
        c.at_most(Family::DOM, format!("tv{v}"), -sol.departure(v), 0.0);
    }
    for j in 1..=n {
        for task in Task::ALL {
            c.at_most(
                Family::DOM,
                format!("tt{j}_{}", task.number()),
                -sol.task_time(j, task),
                0.0,
            );
        }
    }

    // Every task done by exactly one vehicle.
    for j in 1..=n {
        for task in Task::ALL {
            let done: f64 = (1..=w)
                .flat_map(|v| (1..=n + w).map(move |i| (v, i)))
                .map(|(v, i)| c.x(v, task, i, j))
                .sum();
            let label = format!("j{j}_k{}", task.number());
            c.exactly(Family::MC, label.clone(), done, 1.0);
            c.at_most(Family::SA, label, done, 1.0);
        }
    }

    for v in 1..=w {
        let src = n + v;
        let attacks: f64 = (1..=n)
            .flat_map(|j| (1..=n + w).map(move |i| (i, j)))
            .map(|(i, j)| c.x(v, Task::Attack, i, j))
            .sum();
        c.at_most(Family::PM, format!("v{v}"), attacks, 1.0);

        let sinks: f64 = (1..=n).chain([src]).map(|i| a.sink(v, i)).sum();
        c.at_most(Family::VO, format!("v{v}_sink"), sinks, 1.0);

        let launched: f64 = Task::ALL
            .iter()
            .flat_map(|&task| (1..=n).map(move |j| (task, j)))
            .map(|(task, j)| c.x(v, task, src, j))
            .sum::<f64>()
            + a.sink(v, src);
        c.exactly(Family::SD, format!("v{v}"), launched, 1.0);

        for j in 1..=n {
            let tag = format!("v{v}_j{j}");
            let came_c = c.arrivals(v, Task::Classify, j);
            let came_a = c.arrivals(v, Task::Attack, j);
            let came_v = c.arrivals(v, Task::Verify, j);
            let left = c.exits(v, j);
            let self_attack = c.x(v, Task::Attack, j, j);
            let attacked_here: f64 = (1..=n + w).map(|i| c.x(v, Task::Attack, i, j)).sum();

            c.at_most(Family::VO, tag.clone(), came_c + came_a + came_v, 1.0);
            c.at_most(Family::LO, tag.clone(), left, 1.0);
            c.at_most(Family::VA, tag.clone(), came_a + came_v, 1.0);
            c.at_most(Family::CT, format!("verify_exit_{tag}"), came_v - left, 0.0);
            c.at_most(
                Family::CT,
                format!("classify_exit_{tag}"),
                came_c - left - self_attack,
                0.0,
            );
            c.at_most(
                Family::CT,
                format!("attack_stop_{tag}"),
                left + attacked_here,
                1.0,
            );
            c.at_most(
                Family::CT,
                format!("entry_before_exit_{tag}"),
                left - came_c - came_v,
                0.0,
            );
            c.at_most(Family::CA, tag, self_attack - came_c, 0.0);
        }
    }

    // Timing: an active arc fixes the arrival time relative to the previous
    // task of the same vehicle; inactive arcs are relaxed by big_m per
    // missing guard.
    let big_m = s.big_m();
    for v in 1..=w {
        let src = n + v;
        for j in 1..=n {
            for task in Task::ALL {
                let x = c.x(v, task, src, j);
                let gap = sol.task_time(j, task) - sol.departure(v);
                c.guarded(
                    Family::TS,
                    format!("v{v}_k{}_j{j}", task.number()),
                    gap,
                    s.time(v, task, src, j),
                    big_m * (1.0 - x),
                );
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                let moves: &[(Task, Family, &[Task])] = if i == j {
                    &[(Task::Attack, Family::T2, &[Task::Classify])]
                } else {
                    &[
                        (Task::Classify, Family::T13, &[Task::Classify, Task::Verify]),
                        (Task::Verify, Family::T13, &[Task::Classify, Task::Verify]),
                        (Task::Attack, Family::T2, &[Task::Classify, Task::Verify]),
                    ]
                };
                for &(task, family, preds) in moves {
                    let x = c.x(v, task, i, j);
                    for &pred in preds {
                        let came = c.arrivals(v, pred, i);
                        let gap = sol.task_time(j, task) - sol.task_time(i, pred);
                        c.guarded(
                            family,
                            format!("v{v}_k{}_i{i}_j{j}_after{}", task.number(), pred.number()),
                            gap,
                            s.time(v, task, i, j),
                            big_m * (2.0 - x - came),
                        );
                    }
                }
            }
        }
    }

    let eps = s.epsilon();
    for j in 1..=n {
        let (tc, ta, tv) = (
            sol.task_time(j, Task::Classify),
            sol.task_time(j, Task::Attack),
            sol.task_time(j, Task::Verify),
        );
        c.at_most(
            Family::TO,
            format!("j{j}_classify_attack"),
            tc + eps - ta,
            0.0,
        );
        c.at_most(
            Family::TO,
            format!("j{j}_attack_verify"),
            ta + eps - tv,
            0.0,
        );
        if let Some(tf) = sol.makespan {
            c.at_most(Family::TF, format!("j{j}"), tv - tf, 0.0);
        }
    }

    let mut endurance_flags = Vec::new();
    for v in 1..=w {
        let flown: f64 = a
            .active_arcs()
            .filter(|&(u, task, i, j)| u == v && s.is_admissible(v, task, i, j))
            .map(|(_, task, i, j)| s.time(v, task, i, j))
            .sum();
        if flown > s.endurance(v) + TOLERANCE {
            endurance_flags.push(EnduranceFlag {
                vehicle: v,
                flight_time: flown,
                endurance: s.endurance(v),
            });
        }
    }

    let violations = c.violations;
    Ok(ValidationReport {
        ok: violations.is_empty(),
        violations,
        endurance_flags,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskTimes {
    pub classify: f64,
    pub attack: f64,
    pub verify: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VehiclePlan {
    pub id: usize,
    pub events: Vec<Event>,
}

/// Plan file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plan {
    pub objective: f64,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective_kind: Option<ObjectiveKind>,
    pub vehicles: Vec<VehiclePlan>,
    /// Keyed `"target 1"`, `"target 2"`, ...
    pub times: BTreeMap<String, TaskTimes>,
    pub makespan: f64,
}

fn target_key(j: usize) -> String {
    format!("target {j}")
}

impl Plan {
    pub fn from_solution(s: &Scenario, sol: &Solution) -> Result<Plan, ScheduleError> {
        let sched = extract_schedule(s, sol)?;
        let times = (1..=s.n())
            .map(|j| {
                (
                    target_key(j),
                    TaskTimes {
                        classify: sol.task_time(j, Task::Classify),
                        attack: sol.task_time(j, Task::Attack),
                        verify: sol.task_time(j, Task::Verify),
                    },
                )
            })
            .collect();
        Ok(Plan {
            objective: sol.objective,
            status: sol.status.name().to_string(),
            objective_kind: Some(sol.kind),
            vehicles: sched
                .vehicles
                .into_iter()
                .map(|tl| VehiclePlan {
                    id: tl.vehicle,
                    events: tl.events,
                })
                .collect(),
            times,
            makespan: sched.makespan,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Plan, ScheduleError> {
        serde_json::from_str(text).map_err(|e| ScheduleError::BadPlan(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }

    /// Rebuilds a candidate solution from the plan's routes and times. Legs
    /// are taken as written; whether they are legal is left to [`validate`].
    pub fn to_solution(&self, s: &Scenario) -> Result<Solution, ScheduleError> {
        let (n, w) = (s.n(), s.w());
        let bad = |m: String| ScheduleError::BadPlan(m);
        let mut assignment = Assignment::zeros(n, w);
        let mut departures = vec![0.0; w];
        let mut seen = vec![false; w];
        for vp in &self.vehicles {
            let v = vp.id;
            if !(1..=w).contains(&v) || seen[v - 1] {
                return Err(bad(format!("vehicle id {v} is out of range or repeated")));
            }
            seen[v - 1] = true;
            let mut at = n + v;
            for e in &vp.events {
                match e.action {
                    Action::Depart => {
                        if e.node != n + v {
                            return Err(bad(format!("vehicle {v} departs from node {}", e.node)));
                        }
                        departures[v - 1] = e.t;
                    }
                    Action::Sink => assignment.set_sink(v, at, 1.0),
                    action => {
                        let task = action.task().expect("task action");
                        if !(1..=n).contains(&e.node) {
                            return Err(bad(format!(
                                "vehicle {v} visits non-target node {}",
                                e.node
                            )));
                        }
                        if !s.is_admissible(v, task, at, e.node) {
                            return Err(bad(format!(
                                "vehicle {v} leg {at} -> {} for {task} is not an arc",
                                e.node
                            )));
                        }
                        assignment.set_arc(v, task, at, e.node, 1.0);
                        at = e.node;
                    }
                }
            }
        }
        let mut task_times = vec![[0.0; 3]; n];
        for (j, row) in task_times.iter_mut().enumerate() {
            let tt = self
                .times
                .get(&target_key(j + 1))
                .ok_or_else(|| bad(format!("missing times for {}", target_key(j + 1))))?;
            *row = [tt.classify, tt.attack, tt.verify];
        }
        if let Some(key) = self
            .times
            .keys()
            .find(|k| !(1..=n).any(|j| **k == target_key(j)))
        {
            return Err(bad(format!("unknown times entry `{key}`")));
        }
        let kind = self
            .objective_kind
            .unwrap_or(ObjectiveKind::WeightedMakespan);
        Ok(Solution {
            status: if self.status == SolveStatus::Infeasible.name() {
                SolveStatus::Infeasible
            } else {
                SolveStatus::Optimal
            },
            kind,
            objective: self.objective,
            assignment,
            task_times,
            departures,
            makespan: (kind == ObjectiveKind::WeightedMakespan).then_some(self.makespan),
            node_count: 0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_solve;

    fn scenario1() -> Scenario {
        Scenario::from_json_str(
            r#"{"n":1,"w":3,"endurance":100,"flight_times":{"t_default":[
            {"i":1,"j":1,"t":0.11},{"i":2,"j":1,"t":3.7},{"i":3,"j":1,"t":4.24},{"i":4,"j":1,"t":5.38}]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn scenario1_routes() {
        let s = scenario1();
        let sol = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
        let sched = extract_schedule(&s, &sol).unwrap();
        let actions = |v: usize| -> Vec<Action> {
            sched.vehicles[v - 1]
                .events
                .iter()
                .map(|e| e.action)
                .collect()
        };
        assert_eq!(
            actions(1),
            [Action::Depart, Action::Classify, Action::Attack]
        );
        assert_eq!(actions(2), [Action::Depart, Action::Verify, Action::Sink]);
        assert_eq!(actions(3), [Action::Depart, Action::Sink]);
        assert_eq!(sched.survivors, vec![2, 3]);
        assert!((sched.makespan - 4.24).abs() < 1e-9);
        assert!((sched.total_flight_time - (3.7 + 0.11 + 4.24)).abs() < 1e-9);
    }

    #[test]
    fn oracle_output_validates() {
        let s = scenario1();
        for kind in ObjectiveKind::ALL {
            let sol = oracle_solve(&s, kind).unwrap();
            let r = validate(&s, &sol).unwrap();
            assert!(r.ok, "{kind:?}: {:?}", r.violations);
        }
    }

    #[test]
    fn doubled_attack_is_sa() {
        let s = scenario1();
        let mut sol = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
        sol.assignment.set_arc(2, Task::Attack, 3, 1, 1.0);
        assert!(validate(&s, &sol).unwrap().has(Family::SA));
    }

    #[test]
    fn collapsed_verify_is_to() {
        let s = scenario1();
        let mut sol = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
        sol.task_times[0][2] = sol.task_times[0][0];
        assert!(validate(&s, &sol).unwrap().has(Family::TO));
    }

    #[test]
    fn plan_round_trip() {
        let s = scenario1();
        let sol = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
        let plan = Plan::from_solution(&s, &sol).unwrap();
        let text = plan.to_json_string();
        assert!(text.contains("\"target 1\""));
        let back = Plan::from_json_str(&text).unwrap().to_solution(&s).unwrap();
        assert_eq!(back.assignment, sol.assignment);
        assert!(validate(&s, &back).unwrap().ok);
    }

    #[test]
    fn dimension_mismatch() {
        let s = scenario1();
        let sol = Solution::infeasible(2, 3, ObjectiveKind::Survivors, 0);
        assert!(matches!(
            validate(&s, &sol),
            Err(ScheduleError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn endurance_is_a_flag() {
        let s = Scenario::from_json_str(
            r#"{"n":1,"w":3,"endurance":4,"flight_times":{"t_default":[
            {"i":1,"j":1,"t":0.11},{"i":2,"j":1,"t":3.7},{"i":3,"j":1,"t":4.24},{"i":4,"j":1,"t":5.38}]}}"#,
        )
        .unwrap();
        let sol = oracle_solve(&s, ObjectiveKind::WeightedMakespan).unwrap();
        let r = validate(&s, &sol).unwrap();
        assert!(r.ok);
        assert_eq!(r.endurance_flags.len(), 1);
        assert_eq!(r.endurance_flags[0].vehicle, 2);
    }
}
