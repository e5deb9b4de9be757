//! Translation of a scenario into the mixed-integer program.
//!
//! Variables are laid out in a fixed order: assignment arcs by
//! `(v, k, i, j)`, sink arcs by `(v, i)`, departures by `v`, task times by
//! `(j, k)` and finally the makespan. Every constraint carries a [`Family`]
//! tag so the census can be audited family by family.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{self, Write};

use serde::Serialize;

use crate::scenario::{Scenario, Task};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VariableId {
    /// Vehicle `v` flies from node `i` to target `j` to perform `task`.
    Assign {
        v: usize,
        task: Task,
        i: usize,
        j: usize,
    },
    /// Vehicle `v` flies from node `i` into the sink.
    SinkArc {
        v: usize,
        i: usize,
    },
    /// Time vehicle `v` leaves its source node.
    Departure {
        v: usize,
    },
    /// Time `task` is performed on target `j`.
    TaskTime {
        j: usize,
        task: Task,
    },
    Makespan,
}

impl VariableId {
    /// Name used in LP exports.
    pub fn lp_name(&self) -> String {
        match *self {
            VariableId::Assign { v, task, i, j } => {
                format!("x_v{v}_k{}_i{i}_j{j}", task.number())
            }
            VariableId::SinkArc { v, i } => format!("xs_v{v}_i{i}"),
            VariableId::Departure { v } => format!("tv{v}"),
            VariableId::TaskTime { j, task } => format!("tt{j}_{}", task.number()),
            VariableId::Makespan => "tf".to_string(),
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, VariableId::Assign { .. } | VariableId::SinkArc { .. })
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lp_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Binary,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Variable {
    pub id: VariableId,
    pub domain: Domain,
    pub upper: Option<f64>,
}

/// Constraint family tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Every task on every target is performed exactly once.
    MC,
    /// At most one vehicle per task and target.
    SA,
    /// A vehicle visits a target at most once and enters the sink at most once.
    VO,
    /// A vehicle leaves a target at most once.
    LO,
    /// A vehicle attacks at most one target.
    PM,
    /// A vehicle never both attacks and verifies the same target.
    VA,
    /// Flow continuity at target nodes.
    CT,
    /// Every vehicle leaves its source exactly once.
    SD,
    /// Self-arc attacks need a preceding classification by the same vehicle.
    CA,
    /// Big-M timing for classify/verify arcs between distinct targets.
    T13,
    /// Big-M timing for attack arcs.
    T2,
    /// Big-M timing for arcs leaving a source.
    TS,
    /// Task order on each target with the minimum gap.
    TO,
    /// Verification times bounded by the makespan.
    TF,
    /// Domain checks (integrality, admissibility, non-negativity); only
    /// produced by the validator.
    DOM,
}

impl Family {
    pub const MODEL: [Family; 14] = [
        Family::MC,
        Family::SA,
        Family::VO,
        Family::LO,
        Family::PM,
        Family::VA,
        Family::CT,
        Family::SD,
        Family::CA,
        Family::T13,
        Family::T2,
        Family::TS,
        Family::TO,
        Family::TF,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::MC => "MC",
            Family::SA => "SA",
            Family::VO => "VO",
            Family::LO => "LO",
            Family::PM => "PM",
            Family::VA => "VA",
            Family::CT => "CT",
            Family::SD => "SD",
            Family::CA => "CA",
            Family::T13 => "T13",
            Family::T2 => "T2",
            Family::TS => "TS",
            Family::TO => "TO",
            Family::TF => "TF",
            Family::DOM => "DOM",
        }
    }

    pub fn is_timing(self) -> bool {
        matches!(
            self,
            Family::T13 | Family::T2 | Family::TS | Family::TO | Family::TF
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub family: Family,
    /// Instance label inside the family, e.g. `v2_j1`.
    pub label: String,
    /// `(variable ordinal, coefficient)`, sorted by ordinal.
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveSense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    /// Sum of flight times over all used arcs.
    TotalFlightTime,
    /// Makespan plus small weights on every task completion time.
    WeightedMakespan,
    /// Number of vehicles that reach the sink (maximized).
    Survivors,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 3] = [
        ObjectiveKind::TotalFlightTime,
        ObjectiveKind::WeightedMakespan,
        ObjectiveKind::Survivors,
    ];

    pub fn sense(self) -> ObjectiveSense {
        match self {
            ObjectiveKind::Survivors => ObjectiveSense::Maximize,
            _ => ObjectiveSense::Minimize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::TotalFlightTime => "total_flight_time",
            ObjectiveKind::WeightedMakespan => "weighted_makespan",
            ObjectiveKind::Survivors => "survivors",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Objective {
    pub sense: ObjectiveSense,
    pub coeffs: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MilpModel {
    pub n: usize,
    pub w: usize,
    pub kind: ObjectiveKind,
    pub big_m: f64,
    pub epsilon: f64,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
    #[serde(skip)]
    index: HashMap<VariableId, usize>,
}

impl MilpModel {
    pub fn ordinal(&self, id: VariableId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Ordinal of a variable known to exist. Panics otherwise.
    pub fn var(&self, id: VariableId) -> usize {
        self.ordinal(id)
            .unwrap_or_else(|| panic!("variable {id} is not part of the model"))
    }

    pub fn binary_count(&self) -> usize {
        self.variables
            .iter()
            .filter(|v| v.domain == Domain::Binary)
            .count()
    }

    pub fn continuous_count(&self) -> usize {
        self.variables.len() - self.binary_count()
    }

    pub fn constraint_census(&self) -> ConstraintCensus {
        let mut per_family: BTreeMap<Family, usize> =
            Family::MODEL.iter().map(|&f| (f, 0)).collect();
        let mut equality = 0;
        for c in &self.constraints {
            *per_family.entry(c.family).or_default() += 1;
            if c.sense == Sense::Eq {
                equality += 1;
            }
        }
        ConstraintCensus {
            per_family,
            equality,
            inequality: self.constraints.len() - equality,
        }
    }

    /// Objective value of a full variable vector, in the model's own sense.
    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective
            .coeffs
            .iter()
            .map(|&(j, c)| c * values[j])
            .sum()
    }

    /// Writes the model in CPLEX LP text format. Output is byte-identical for
    /// identical models.
    pub fn export_lp<W: Write>(&self, sink: &mut W) -> io::Result<()> {
        let names: Vec<String> = self.variables.iter().map(|v| v.id.lp_name()).collect();
        writeln!(
            sink,
            "\\ cooperative mission model n={} w={} objective={}",
            self.n,
            self.w,
            self.kind.name()
        )?;
        writeln!(sink, "\\ big_m={} epsilon={}", self.big_m, self.epsilon)?;
        match self.objective.sense {
            ObjectiveSense::Minimize => writeln!(sink, "Minimize")?,
            ObjectiveSense::Maximize => writeln!(sink, "Maximize")?,
        }
        write_row(sink, " obj:", &self.objective.coeffs, &names)?;
        writeln!(sink)?;
        writeln!(sink, "Subject To")?;
        let mut seq: BTreeMap<Family, usize> = BTreeMap::new();
        for c in &self.constraints {
            let n = seq.entry(c.family).or_default();
            *n += 1;
            write_row(
                sink,
                &format!(" {}_{}:", c.family.tag(), n),
                &c.coeffs,
                &names,
            )?;
            writeln!(sink, " {} {}", c.sense.symbol(), c.rhs)?;
        }
        writeln!(sink, "Bounds")?;
        for (v, name) in self.variables.iter().zip(&names) {
            if v.domain == Domain::Continuous {
                match v.upper {
                    Some(u) => writeln!(sink, " 0 <= {name} <= {u}")?,
                    None => writeln!(sink, " {name} >= 0")?,
                }
            }
        }
        writeln!(sink, "Binary")?;
        for (v, name) in self.variables.iter().zip(&names) {
            if v.domain == Domain::Binary {
                writeln!(sink, "{name}")?;
            }
        }
        writeln!(sink, "End")
    }

    pub fn to_lp_string(&self) -> String {
        let mut buf = Vec::new();
        self.export_lp(&mut buf)
            .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("LP text is ASCII")
    }

    /// JSON dump of variables, rows and objective, for diffing models.
    pub fn to_debug_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("models always serialize")
    }
}

fn write_row<W: Write>(
    sink: &mut W,
    head: &str,
    coeffs: &[(usize, f64)],
    names: &[String],
) -> io::Result<()> {
    let mut line = head.to_string();
    if coeffs.is_empty() {
        line.push_str(" 0 ");
        line.push_str(&names[0]);
    }
    for (k, &(j, c)) in coeffs.iter().enumerate() {
        let term = match (k, c < 0.0, c.abs() == 1.0) {
            (0, false, true) => format!(" {}", names[j]),
            (0, false, false) => format!(" {} {}", c, names[j]),
            (_, neg, unit) => {
                let sign = if neg { '-' } else { '+' };
                if unit {
                    format!(" {sign} {}", names[j])
                } else {
                    format!(" {sign} {} {}", c.abs(), names[j])
                }
            }
        };
        if line.len() + term.len() > 200 {
            writeln!(sink, "{line}")?;
            line = String::from("  ");
        }
        line.push_str(&term);
    }
    write!(sink, "{line}")
}

/// Per-family constraint counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintCensus {
    pub per_family: BTreeMap<Family, usize>,
    pub equality: usize,
    pub inequality: usize,
}

impl ConstraintCensus {
    pub fn total(&self) -> usize {
        self.equality + self.inequality
    }

    pub fn timing_inequalities(&self) -> usize {
        self.per_family
            .iter()
            .filter(|(f, _)| f.is_timing())
            .map(|(_, c)| c)
            .sum()
    }
}

/// Binary and continuous variable counts for `n` targets and `w` vehicles,
/// including the makespan variable.
pub fn variable_census(n: usize, w: usize) -> (usize, usize) {
    (w * (n * (3 * n + 2) + 1), 3 * n + w + 1)
}

/// Reference inequality totals as a closed form:
/// `7nw + 2w` non-timing rows plus `12(n-1)nw + 2nw + 2nwm + mn` timing rows
/// with `m = 3`. The builder's own census is authoritative; it emits `3n + nw`
/// more non-timing rows (single-assignee and classify-before-self-attack)
/// than this expression counts, while the timing part agrees exactly.
pub fn reference_inequality_total(n: usize, w: usize) -> usize {
    let m = 3;
    7 * n * w + 2 * w + 12 * (n - 1) * n * w + 2 * n * w + 2 * n * w * m + m * n
}

/// Builds the complete model for a scenario and objective.
pub fn build_model(s: &Scenario, kind: ObjectiveKind) -> MilpModel {
    let (n, w) = (s.n(), s.w());

    let mut ids: Vec<VariableId> = s
        .arcs()
        .map(|(v, task, i, j)| VariableId::Assign { v, task, i, j })
        .collect();
    for v in 1..=w {
        for i in (1..=n).chain(std::iter::once(n + v)) {
            ids.push(VariableId::SinkArc { v, i });
        }
    }
    ids.extend((1..=w).map(|v| VariableId::Departure { v }));
    for j in 1..=n {
        ids.extend(Task::ALL.map(|task| VariableId::TaskTime { j, task }));
    }
    if kind == ObjectiveKind::WeightedMakespan {
        ids.push(VariableId::Makespan);
    }
    debug_assert!(ids.windows(2).all(|p| p[0] < p[1]));

    let index: HashMap<VariableId, usize> =
        ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let variables = ids
        .iter()
        .map(|&id| Variable {
            id,
            domain: if id.is_binary() {
                Domain::Binary
            } else {
                Domain::Continuous
            },
            upper: None,
        })
        .collect();

    let mut b = Builder {
        s,
        index: &index,
        rows: Vec::new(),
    };
    let big_m = s.big_m();
    let eps = s.epsilon();

    // Mission completion and single assignee.
    for family in [Family::MC, Family::SA] {
        for j in 1..=n {
            for task in Task::ALL {
                let mut row = Row::default();
                for v in 1..=w {
                    for i in 1..=n + w {
                        b.add_arc(&mut row, 1.0, v, task, i, j);
                    }
                }
                let sense = if family == Family::MC {
                    Sense::Eq
                } else {
                    Sense::Le
                };
                b.push(family, format!("j{j}_k{}", task.number()), row, sense, 1.0);
            }
        }
    }

    // Visit once, then sink once.
    for v in 1..=w {
        for j in 1..=n {
            let mut row = Row::default();
            for task in Task::ALL {
                b.add_inbound(&mut row, 1.0, v, task, j);
            }
            b.push(Family::VO, format!("v{v}_j{j}"), row, Sense::Le, 1.0);
        }
    }
    for v in 1..=w {
        let mut row = Row::default();
        for i in (1..=n).chain(std::iter::once(n + v)) {
            row.add(index[&VariableId::SinkArc { v, i }], 1.0);
        }
        b.push(Family::VO, format!("v{v}_sink"), row, Sense::Le, 1.0);
    }

    for v in 1..=w {
        for j in 1..=n {
            let mut row = Row::default();
            b.add_outbound(&mut row, 1.0, v, j);
            b.push(Family::LO, format!("v{v}_j{j}"), row, Sense::Le, 1.0);
        }
    }

    for v in 1..=w {
        let mut row = Row::default();
        for j in 1..=n {
            for i in 1..=n + w {
                b.add_arc(&mut row, 1.0, v, Task::Attack, i, j);
            }
        }
        b.push(Family::PM, format!("v{v}"), row, Sense::Le, 1.0);
    }

    // attack-in <= 1 - verify-in, written as attack-in + verify-in <= 1.
    for v in 1..=w {
        for j in 1..=n {
            let mut row = Row::default();
            b.add_inbound(&mut row, 1.0, v, Task::Attack, j);
            b.add_inbound(&mut row, 1.0, v, Task::Verify, j);
            b.push(Family::VA, format!("v{v}_j{j}"), row, Sense::Le, 1.0);
        }
    }

    for v in 1..=w {
        for j in 1..=n {
            let self_attack = index[&VariableId::Assign {
                v,
                task: Task::Attack,
                i: j,
                j,
            }];

            // Entering for verification requires leaving.
            let mut row = Row::default();
            b.add_inbound(&mut row, 1.0, v, Task::Verify, j);
            b.add_outbound(&mut row, -1.0, v, j);
            b.push(
                Family::CT,
                format!("verify_exit_v{v}_j{j}"),
                row,
                Sense::Le,
                0.0,
            );

            // Entering for classification requires leaving or attacking in place.
            let mut row = Row::default();
            b.add_inbound(&mut row, 1.0, v, Task::Classify, j);
            b.add_outbound(&mut row, -1.0, v, j);
            row.add(self_attack, -1.0);
            b.push(
                Family::CT,
                format!("classify_exit_v{v}_j{j}"),
                row,
                Sense::Le,
                0.0,
            );

            // An attacker never leaves the attacked target.
            let mut row = Row::default();
            b.add_outbound(&mut row, 1.0, v, j);
            for i in 1..=n + w {
                b.add_arc(&mut row, 1.0, v, Task::Attack, i, j);
            }
            b.push(
                Family::CT,
                format!("attack_stop_v{v}_j{j}"),
                row,
                Sense::Le,
                1.0,
            );

            // No exit without having entered to classify or verify.
            let mut row = Row::default();
            b.add_outbound(&mut row, 1.0, v, j);
            b.add_inbound(&mut row, -1.0, v, Task::Classify, j);
            b.add_inbound(&mut row, -1.0, v, Task::Verify, j);
            b.push(
                Family::CT,
                format!("entry_before_exit_v{v}_j{j}"),
                row,
                Sense::Le,
                0.0,
            );
        }
    }

    for v in 1..=w {
        let src = n + v;
        let mut row = Row::default();
        for task in Task::ALL {
            for j in 1..=n {
                b.add_arc(&mut row, 1.0, v, task, src, j);
            }
        }
        row.add(index[&VariableId::SinkArc { v, i: src }], 1.0);
        b.push(Family::SD, format!("v{v}"), row, Sense::Eq, 1.0);
    }

    for v in 1..=w {
        for i in 1..=n {
            let mut row = Row::default();
            b.add_arc(&mut row, 1.0, v, Task::Attack, i, i);
            b.add_inbound(&mut row, -1.0, v, Task::Classify, i);
            b.push(Family::CA, format!("v{v}_i{i}"), row, Sense::Le, 0.0);
        }
    }

    // Timing pairs. For an arc i -> j taken by v after v performed `pred` at i:
    //   t_j^k - t_i^pred + M x_ij + M arrivals <= t_ij + 2M
    //   t_j^k - t_i^pred - M x_ij - M arrivals >= t_ij - 2M
    for v in 1..=w {
        for task in [Task::Classify, Task::Verify] {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    for pred in [Task::Classify, Task::Verify] {
                        b.timing_pair(Family::T13, v, task, i, j, pred, big_m);
                    }
                }
            }
        }
    }
    for v in 1..=w {
        for j in 1..=n {
            for i in 1..=n {
                b.timing_pair(Family::T2, v, Task::Attack, i, j, Task::Classify, big_m);
            }
            for i in (1..=n).filter(|&i| i != j) {
                b.timing_pair(Family::T2, v, Task::Attack, i, j, Task::Verify, big_m);
            }
        }
    }
    for v in 1..=w {
        let src = n + v;
        let dep = index[&VariableId::Departure { v }];
        for j in 1..=n {
            for task in Task::ALL {
                let x = index[&VariableId::Assign { v, task, i: src, j }];
                let tj = index[&VariableId::TaskTime { j, task }];
                let t = s.time(v, task, src, j);
                let label = format!("v{v}_k{}_j{j}", task.number());
                let mut le = Row::default();
                le.add(tj, 1.0);
                le.add(dep, -1.0);
                le.add(x, big_m);
                b.push(Family::TS, label.clone(), le, Sense::Le, t + big_m);
                let mut ge = Row::default();
                ge.add(tj, 1.0);
                ge.add(dep, -1.0);
                ge.add(x, -big_m);
                b.push(Family::TS, label, ge, Sense::Ge, t - big_m);
            }
        }
    }

    for j in 1..=n {
        for (a, c) in [(Task::Classify, Task::Attack), (Task::Attack, Task::Verify)] {
            let mut row = Row::default();
            row.add(index[&VariableId::TaskTime { j, task: a }], 1.0);
            row.add(index[&VariableId::TaskTime { j, task: c }], -1.0);
            b.push(
                Family::TO,
                format!("j{j}_{}_{}", a.name(), c.name()),
                row,
                Sense::Le,
                -eps,
            );
        }
    }

    if kind == ObjectiveKind::WeightedMakespan {
        let tf = index[&VariableId::Makespan];
        for j in 1..=n {
            let mut row = Row::default();
            row.add(
                index[&VariableId::TaskTime {
                    j,
                    task: Task::Verify,
                }],
                1.0,
            );
            row.add(tf, -1.0);
            b.push(Family::TF, format!("j{j}"), row, Sense::Le, 0.0);
        }
    }

    let mut obj = Row::default();
    match kind {
        ObjectiveKind::TotalFlightTime => {
            for (v, task, i, j) in s.arcs() {
                obj.add(
                    index[&VariableId::Assign { v, task, i, j }],
                    s.time(v, task, i, j),
                );
            }
        }
        ObjectiveKind::WeightedMakespan => {
            obj.add(index[&VariableId::Makespan], 1.0);
            for j in 1..=n {
                for task in Task::ALL {
                    obj.add(
                        index[&VariableId::TaskTime { j, task }],
                        s.task_weight(j, task),
                    );
                }
            }
        }
        ObjectiveKind::Survivors => {
            for (id, &k) in &index {
                if matches!(id, VariableId::SinkArc { .. }) {
                    obj.add(k, 1.0);
                }
            }
        }
    }

    let rows = b.rows;
    MilpModel {
        n,
        w,
        kind,
        big_m,
        epsilon: eps,
        variables,
        constraints: rows,
        objective: Objective {
            sense: kind.sense(),
            coeffs: obj.finish(),
        },
        index,
    }
}

#[derive(Default)]
struct Row(BTreeMap<usize, f64>);

impl Row {
    fn add(&mut self, var: usize, coeff: f64) {
        *self.0.entry(var).or_insert(0.0) += coeff;
    }

    fn finish(self) -> Vec<(usize, f64)> {
        self.0.into_iter().filter(|&(_, c)| c != 0.0).collect()
    }
}

struct Builder<'a> {
    s: &'a Scenario,
    index: &'a HashMap<VariableId, usize>,
    rows: Vec<Constraint>,
}

impl Builder<'_> {
    fn push(&mut self, family: Family, label: String, row: Row, sense: Sense, rhs: f64) {
        self.rows.push(Constraint {
            family,
            label,
            coeffs: row.finish(),
            sense,
            rhs,
        });
    }

    /// Adds `coeff * x_{ij}^{(v,task)}` if the arc exists.
    fn add_arc(&self, row: &mut Row, coeff: f64, v: usize, task: Task, i: usize, j: usize) {
        if self.s.is_admissible(v, task, i, j) {
            row.add(self.index[&VariableId::Assign { v, task, i, j }], coeff);
        }
    }

    /// Arcs entering target `j` for `task` from any other node.
    fn add_inbound(&self, row: &mut Row, coeff: f64, v: usize, task: Task, j: usize) {
        let nodes = self.s.n() + self.s.w();
        for i in (1..=nodes).filter(|&i| i != j) {
            self.add_arc(row, coeff, v, task, i, j);
        }
    }

    /// Arcs leaving target `j` towards another target or the sink.
    fn add_outbound(&self, row: &mut Row, coeff: f64, v: usize, j: usize) {
        for task in Task::ALL {
            for i in (1..=self.s.n()).filter(|&i| i != j) {
                self.add_arc(row, coeff, v, task, j, i);
            }
        }
        row.add(self.index[&VariableId::SinkArc { v, i: j }], coeff);
    }

    #[allow(clippy::too_many_arguments)]
    fn timing_pair(
        &mut self,
        family: Family,
        v: usize,
        task: Task,
        i: usize,
        j: usize,
        pred: Task,
        big_m: f64,
    ) {
        let x = self.index[&VariableId::Assign { v, task, i, j }];
        let tj = self.index[&VariableId::TaskTime { j, task }];
        let ti = self.index[&VariableId::TaskTime { j: i, task: pred }];
        let t = self.s.time(v, task, i, j);
        let label = format!("v{v}_k{}_i{i}_j{j}_after{}", task.number(), pred.number());
        let mut le = Row::default();
        let mut ge = Row::default();
        le.add(tj, 1.0);
        le.add(ti, -1.0);
        le.add(x, big_m);
        ge.add(tj, 1.0);
        ge.add(ti, -1.0);
        ge.add(x, -big_m);
        self.add_inbound(&mut le, big_m, v, pred, i);
        self.add_inbound(&mut ge, -big_m, v, pred, i);
        self.push(family, label.clone(), le, Sense::Le, t + 2.0 * big_m);
        self.push(family, label, ge, Sense::Ge, t - 2.0 * big_m);
    }
}
