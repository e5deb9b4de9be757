//! Solver output in scenario terms, independent of variable ordinals.

use serde::Serialize;

use crate::model::{MilpModel, ObjectiveKind, VariableId};
use crate::scenario::Task;

/// Values of every arc variable, laid out densely over the scenario table.
/// Inadmissible slots exist but must stay zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    n: usize,
    w: usize,
    arcs: Vec<f64>,
    sinks: Vec<f64>,
}

impl Assignment {
    pub fn zeros(n: usize, w: usize) -> Self {
        Self {
            n,
            w,
            arcs: vec![0.0; w * 3 * (n + w) * n],
            sinks: vec![0.0; w * (n + w)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    fn arc_slot(&self, v: usize, task: Task, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.w).contains(&v)
                && (1..=self.n + self.w).contains(&i)
                && (1..=self.n).contains(&j),
            "arc (v={v}, i={i}, j={j}) outside the assignment"
        );
        (((v - 1) * 3 + task.number() - 1) * (self.n + self.w) + (i - 1)) * self.n + (j - 1)
    }

    fn sink_slot(&self, v: usize, i: usize) -> usize {
        assert!(
            (1..=self.w).contains(&v) && (1..=self.n + self.w).contains(&i),
            "sink arc (v={v}, i={i}) outside the assignment"
        );
        (v - 1) * (self.n + self.w) + (i - 1)
    }

    pub fn arc(&self, v: usize, task: Task, i: usize, j: usize) -> f64 {
        self.arcs[self.arc_slot(v, task, i, j)]
    }

    pub fn set_arc(&mut self, v: usize, task: Task, i: usize, j: usize, value: f64) {
        let k = self.arc_slot(v, task, i, j);
        self.arcs[k] = value;
    }

    /// Value of the arc from node `i` into the sink for vehicle `v`.
    pub fn sink(&self, v: usize, i: usize) -> f64 {
        self.sinks[self.sink_slot(v, i)]
    }

    pub fn set_sink(&mut self, v: usize, i: usize, value: f64) {
        let k = self.sink_slot(v, i);
        self.sinks[k] = value;
    }

    /// Every `(v, task, i, j)` slot, admissible or not.
    pub fn arc_slots(&self) -> impl Iterator<Item = (usize, Task, usize, usize)> + '_ {
        let (n, w) = (self.n, self.w);
        (1..=w).flat_map(move |v| {
            Task::ALL.into_iter().flat_map(move |task| {
                (1..=n + w).flat_map(move |i| (1..=n).map(move |j| (v, task, i, j)))
            })
        })
    }

    /// Arcs whose value rounds to 1.
    pub fn active_arcs(&self) -> impl Iterator<Item = (usize, Task, usize, usize)> + '_ {
        self.arc_slots()
            .filter(|&(v, t, i, j)| self.arc(v, t, i, j) > 0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub status: SolveStatus,
    pub kind: ObjectiveKind,
    /// Objective in its natural sense (survivors are counted, not negated).
    pub objective: f64,
    pub assignment: Assignment,
    /// `[classify, attack, verify]` time per target.
    pub task_times: Vec<[f64; 3]>,
    pub departures: Vec<f64>,
    pub makespan: Option<f64>,
    pub node_count: u64,
}

impl Solution {
    pub fn infeasible(n: usize, w: usize, kind: ObjectiveKind, node_count: u64) -> Self {
        Self {
            status: SolveStatus::Infeasible,
            kind,
            objective: f64::NAN,
            assignment: Assignment::zeros(n, w),
            task_times: vec![[0.0; 3]; n],
            departures: vec![0.0; w],
            makespan: None,
            node_count,
        }
    }

    pub fn task_time(&self, j: usize, task: Task) -> f64 {
        self.task_times[j - 1][task.number() - 1]
    }

    pub fn departure(&self, v: usize) -> f64 {
        self.departures[v - 1]
    }

    /// Decodes a full model variable vector.
    pub fn from_model_values(m: &MilpModel, values: &[f64], node_count: u64) -> Self {
        let mut assignment = Assignment::zeros(m.n, m.w);
        let mut task_times = vec![[0.0; 3]; m.n];
        let mut departures = vec![0.0; m.w];
        let mut makespan = None;
        for (var, &x) in m.variables.iter().zip(values) {
            match var.id {
                VariableId::Assign { v, task, i, j } => assignment.set_arc(v, task, i, j, x),
                VariableId::SinkArc { v, i } => assignment.set_sink(v, i, x),
                VariableId::Departure { v } => departures[v - 1] = x,
                VariableId::TaskTime { j, task } => task_times[j - 1][task.number() - 1] = x,
                VariableId::Makespan => makespan = Some(x),
            }
        }
        Self {
            status: SolveStatus::Optimal,
            kind: m.kind,
            objective: m.objective_value(values),
            assignment,
            task_times,
            departures,
            makespan,
            node_count,
        }
    }

    /// Re-encodes the solution as a model variable vector.
    pub fn to_model_values(&self, m: &MilpModel) -> Vec<f64> {
        m.variables
            .iter()
            .map(|var| match var.id {
                VariableId::Assign { v, task, i, j } => self.assignment.arc(v, task, i, j),
                VariableId::SinkArc { v, i } => self.assignment.sink(v, i),
                VariableId::Departure { v } => self.departure(v),
                VariableId::TaskTime { j, task } => self.task_time(j, task),
                VariableId::Makespan => self
                    .makespan
                    .unwrap_or_else(|| self.task_times.iter().map(|t| t[2]).fold(0.0, f64::max)),
            })
            .collect()
    }

    /// Vehicles holding the given task on target `j`.
    pub fn performers(&self, j: usize, task: Task) -> Vec<usize> {
        let (n, w) = (self.assignment.n(), self.assignment.w());
        (1..=w)
            .filter(|&v| (1..=n + w).any(|i| self.assignment.arc(v, task, i, j) > 0.5))
            .collect()
    }
}
