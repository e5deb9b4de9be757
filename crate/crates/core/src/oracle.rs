//! Exhaustive reference solver for small instances.
//!
//! Every vehicle's local arc pattern is enumerated and filtered with the
//! routing rules, patterns are combined so each task is covered exactly once,
//! and the earliest times of each combination come from longest paths over
//! its precedence graph. Nothing here goes through the MILP model.

use crate::error::SolveError;
use crate::model::ObjectiveKind;
use crate::scenario::{Scenario, Task};
use crate::solution::{Assignment, Solution, SolveStatus};

/// Largest instance the enumeration accepts.
pub const MAX_TARGETS: usize = 2;
pub const MAX_VEHICLES: usize = 4;

const TIE_TOL: f64 = 1e-9;

/// One leg of a vehicle route. `from` is a target or the vehicle's source
/// node; the leg ends at target `to` where `task` is performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RouteArc {
    pub task: Task,
    pub from: usize,
    pub to: usize,
}

/// Earliest task times and departures of a fixed set of routes.
#[derive(Debug, Clone, PartialEq)]
pub struct Timing {
    /// `[classify, attack, verify]` per target.
    pub task_times: Vec<[f64; 3]>,
    pub departures: Vec<f64>,
}

impl Timing {
    pub fn time(&self, j: usize, task: Task) -> f64 {
        self.task_times[j - 1][task.number() - 1]
    }

    pub fn latest_verify(&self) -> f64 {
        self.task_times.iter().map(|t| t[2]).fold(0.0, f64::max)
    }
}

/// Earliest times for the given per-vehicle routes, honoring flight times
/// and the task-order gap. Tasks nobody performs are placed as early as the
/// gap allows.
pub fn timing_propagation(s: &Scenario, routes: &[Vec<RouteArc>]) -> Result<Timing, SolveError> {
    let (n, w) = (s.n(), s.w());
    if routes.len() != w {
        return Err(SolveError::BadRoute {
            vehicle: routes.len(),
            reason: format!("expected {w} routes"),
        });
    }
    let task_node = |j: usize, task: Task| (j - 1) * 3 + task.number() - 1;
    let dep_node = |v: usize| 3 * n + v - 1;
    // (a, b, c): t_b >= t_a + c
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let tight = |edges: &mut Vec<(usize, usize, f64)>, a: usize, b: usize, c: f64| {
        edges.push((a, b, c));
        edges.push((b, a, -c));
    };

    for (idx, route) in routes.iter().enumerate() {
        let v = idx + 1;
        let bad = |reason: String| SolveError::BadRoute { vehicle: v, reason };
        for arc in route {
            if !s.is_admissible(v, arc.task, arc.from, arc.to) {
                return Err(bad(format!(
                    "{} leg {} -> {} is not an arc",
                    arc.task, arc.from, arc.to
                )));
            }
            let t = s.time(v, arc.task, arc.from, arc.to);
            let to = task_node(arc.to, arc.task);
            if arc.from > n {
                tight(&mut edges, dep_node(v), to, t);
                continue;
            }
            // The vehicle was last busy with whatever it came to `from` for.
            let entries: Vec<Task> = route
                .iter()
                .filter(|a| a.to == arc.from && a.from != arc.from)
                .map(|a| a.task)
                .collect();
            let prior = match entries.as_slice() {
                [p] => *p,
                [] => {
                    return Err(bad(format!(
                        "leaves target {} without reaching it",
                        arc.from
                    )))
                }
                _ => return Err(bad(format!("reaches target {} more than once", arc.from))),
            };
            if prior == Task::Attack {
                return Err(bad(format!(
                    "leaves target {} after attacking it",
                    arc.from
                )));
            }
            if arc.from == arc.to && prior != Task::Classify {
                return Err(bad(format!(
                    "attacks target {} in place without classifying",
                    arc.to
                )));
            }
            tight(&mut edges, task_node(arc.from, prior), to, t);
        }
    }
    let eps = s.epsilon();
    for j in 1..=n {
        edges.push((
            task_node(j, Task::Classify),
            task_node(j, Task::Attack),
            eps,
        ));
        edges.push((task_node(j, Task::Attack), task_node(j, Task::Verify), eps));
    }

    let count = 3 * n + w;
    let mut t = vec![0.0f64; count];
    let mut settled = false;
    for _ in 0..=count {
        let mut changed = false;
        for &(a, b, c) in &edges {
            if t[a] + c > t[b] + 1e-12 {
                t[b] = t[a] + c;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(SolveError::PrecedenceCycle);
    }
    Ok(Timing {
        task_times: (1..=n)
            .map(|j| Task::ALL.map(|task| t[task_node(j, task)]))
            .collect(),
        departures: (1..=w).map(|v| t[dep_node(v)]).collect(),
    })
}

/// Local decision slots of one vehicle, in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    /// Leg from a target or the vehicle's own source (encoded as 0).
    Leg { task: Task, from: usize, to: usize },
    /// Retirement to the sink from a target or the source (0).
    Sink { from: usize },
}

fn local_slots(n: usize) -> Vec<Slot> {
    let mut out = Vec::new();
    for task in Task::ALL {
        for from in 0..=n {
            for to in 1..=n {
                if from == to && task != Task::Attack {
                    continue;
                }
                out.push(Slot::Leg { task, from, to });
            }
        }
    }
    for from in 0..=n {
        out.push(Slot::Sink { from });
    }
    out
}

/// Whether a set of slots is a legal single-vehicle plan, judged only from
/// that vehicle's own decisions.
fn legal_pattern(n: usize, legs: &[(Task, usize, usize)], sinks: &[usize]) -> bool {
    let entering = |j: usize| legs.iter().filter(move |l| l.2 == j && l.1 != j);
    let leaving = |j: usize| {
        legs.iter().filter(|l| l.1 == j && l.2 != j).count()
            + sinks.iter().filter(|&&f| f == j).count()
    };
    // Exactly one way out of the source.
    if legs.iter().filter(|l| l.1 == 0).count() + sinks.iter().filter(|&&f| f == 0).count() != 1 {
        return false;
    }
    if sinks.len() > 1 {
        return false;
    }
    if legs.iter().filter(|l| l.0 == Task::Attack).count() > 1 {
        return false;
    }
    for j in 1..=n {
        let ins: Vec<Task> = entering(j).map(|l| l.0).collect();
        if ins.len() > 1 {
            return false;
        }
        let out = leaving(j);
        if out > 1 {
            return false;
        }
        let self_attack = legs.iter().any(|l| l.1 == j && l.2 == j);
        let came = ins.first().copied();
        let attacked_here = came == Some(Task::Attack) || self_attack;
        match came {
            None if out > 0 || self_attack => return false,
            Some(Task::Verify) if out == 0 => return false,
            Some(Task::Classify) if out == 0 && !self_attack => return false,
            _ => {}
        }
        if attacked_here && out > 0 {
            return false;
        }
        if self_attack && came != Some(Task::Classify) {
            return false;
        }
    }
    true
}

struct Pattern {
    legs: Vec<(Task, usize, usize)>,
    sinks: Vec<usize>,
    /// Bit `(j-1)*3 + k-1` set when the pattern performs task k at j.
    cover: u32,
}

fn enumerate_patterns(n: usize) -> Vec<Pattern> {
    let slots = local_slots(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut legs = Vec::new();
        let mut sinks = Vec::new();
        for (b, slot) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                match *slot {
                    Slot::Leg { task, from, to } => legs.push((task, from, to)),
                    Slot::Sink { from } => sinks.push(from),
                }
            }
        }
        if !legal_pattern(n, &legs, &sinks) {
            continue;
        }
        let mut cover = 0u32;
        let mut clash = false;
        for &(task, _, to) in &legs {
            let bit = 1u32 << ((to - 1) * 3 + task.number() - 1);
            clash |= cover & bit != 0;
            cover |= bit;
        }
        if !clash {
            out.push(Pattern { legs, sinks, cover });
        }
    }
    out
}

struct Best {
    value: f64,
    key: Vec<(u8, usize, usize, usize, usize)>,
    choice: Vec<usize>,
    timing: Timing,
}

/// Optimal solution by full enumeration. Only for `n <= 2`, `w <= 4`.
///
/// Among optima within `1e-9`, the one whose sorted list of active arcs is
/// lexicographically smallest wins.
pub fn oracle_solve(s: &Scenario, kind: ObjectiveKind) -> Result<Solution, SolveError> {
    let (n, w) = (s.n(), s.w());
    if n > MAX_TARGETS || w > MAX_VEHICLES {
        return Err(SolveError::TooLarge { n, w });
    }
    let patterns = enumerate_patterns(n);
    let full = (1u32 << (3 * n)) - 1;
    let mut best: Option<Best> = None;
    let mut choice = Vec::with_capacity(w);
    let mut visited = 0u64;
    search(
        s,
        kind,
        &patterns,
        full,
        0,
        &mut choice,
        &mut best,
        &mut visited,
    )?;

    let Some(best) = best else {
        return Ok(Solution::infeasible(n, w, kind, visited));
    };
    let mut assignment = Assignment::zeros(n, w);
    for (idx, &p) in best.choice.iter().enumerate() {
        let v = idx + 1;
        let node = |x: usize| if x == 0 { n + v } else { x };
        for &(task, from, to) in &patterns[p].legs {
            assignment.set_arc(v, task, node(from), to, 1.0);
        }
        for &from in &patterns[p].sinks {
            assignment.set_sink(v, node(from), 1.0);
        }
    }
    Ok(Solution {
        status: SolveStatus::Optimal,
        kind,
        objective: best.value,
        assignment,
        makespan: (kind == ObjectiveKind::WeightedMakespan).then(|| best.timing.latest_verify()),
        task_times: best.timing.task_times,
        departures: best.timing.departures,
        node_count: visited,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    s: &Scenario,
    kind: ObjectiveKind,
    patterns: &[Pattern],
    full: u32,
    covered: u32,
    choice: &mut Vec<usize>,
    best: &mut Option<Best>,
    visited: &mut u64,
) -> Result<(), SolveError> {
    if choice.len() == s.w() {
        if covered == full {
            *visited += 1;
            evaluate(s, kind, patterns, choice, best)?;
        }
        return Ok(());
    }
    for (p, pat) in patterns.iter().enumerate() {
        if pat.cover & covered != 0 {
            continue;
        }
        choice.push(p);
        search(
            s,
            kind,
            patterns,
            full,
            covered | pat.cover,
            choice,
            best,
            visited,
        )?;
        choice.pop();
    }
    Ok(())
}

fn evaluate(
    s: &Scenario,
    kind: ObjectiveKind,
    patterns: &[Pattern],
    choice: &[usize],
    best: &mut Option<Best>,
) -> Result<(), SolveError> {
    let n = s.n();
    let mut routes = Vec::with_capacity(choice.len());
    let mut key = Vec::new();
    let mut flight = 0.0;
    let mut survivors = 0usize;
    for (idx, &p) in choice.iter().enumerate() {
        let v = idx + 1;
        let node = |x: usize| if x == 0 { n + v } else { x };
        let mut route = Vec::new();
        for &(task, from, to) in &patterns[p].legs {
            let (from, to) = (node(from), to);
            route.push(RouteArc { task, from, to });
            key.push((0u8, v, task.number(), from, to));
            flight += s.time(v, task, from, to);
        }
        for &from in &patterns[p].sinks {
            key.push((1u8, v, 0, node(from), 0));
            survivors += 1;
        }
        routes.push(route);
    }
    let timing = match timing_propagation(s, &routes) {
        Ok(t) => t,
        Err(SolveError::PrecedenceCycle) => return Ok(()),
        Err(e) => return Err(e),
    };
    // Minimization form; survivors are maximized.
    let value = match kind {
        ObjectiveKind::TotalFlightTime => flight,
        ObjectiveKind::WeightedMakespan => {
            let mut j_val = timing.latest_verify();
            for j in 1..=n {
                for task in Task::ALL {
                    j_val += s.task_weight(j, task) * timing.time(j, task);
                }
            }
            j_val
        }
        ObjectiveKind::Survivors => -(survivors as f64),
    };
    key.sort_unstable();
    let replace = match best {
        None => true,
        Some(b) => {
            let cur = sign(kind) * b.value;
            value < cur - TIE_TOL || (value <= cur + TIE_TOL && key < b.key)
        }
    };
    if replace {
        *best = Some(Best {
            value: sign(kind) * value,
            key,
            choice: choice.to_vec(),
            timing,
        });
    }
    Ok(())
}

fn sign(kind: ObjectiveKind) -> f64 {
    match kind {
        ObjectiveKind::Survivors => -1.0,
        _ => 1.0,
    }
}
