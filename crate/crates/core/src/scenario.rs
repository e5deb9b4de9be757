//! Problem instances: targets, vehicles, the node numbering and the
//! flight-time table.
//!
//! Nodes are numbered from 1. Targets occupy `1..=n`, vehicle `v` starts at
//! source node `n + v`, and `n + w + 1` is the sink. A flight-time entry
//! `(v, k, i, j)` is the time vehicle `v` needs to fly from node `i` to target
//! `j` in order to perform task `k` there.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ScenarioError;
use crate::fuzzy::{DefuzzMode, TriangularFuzzyNumber};

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_TASK_WEIGHT: f64 = 0.1;

/// The three tasks every target needs, in the order they must happen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Classify = 1,
    Attack = 2,
    Verify = 3,
}

impl Task {
    pub const ALL: [Task; 3] = [Task::Classify, Task::Attack, Task::Verify];

    /// 1-based task number.
    pub fn number(self) -> usize {
        self as usize
    }

    pub fn from_number(k: usize) -> Option<Task> {
        match k {
            1 => Some(Task::Classify),
            2 => Some(Task::Attack),
            3 => Some(Task::Verify),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Task::Classify => "classify",
            Task::Attack => "attack",
            Task::Verify => "verify",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// 1-based node number within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeIndex(pub usize);

impl NodeIndex {
    pub fn value(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Target(usize),
    Source { vehicle: usize },
    Sink,
}

/// A fully validated instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    n: usize,
    w: usize,
    epsilon: TriangularFuzzyNumber,
    task_weights: Vec<[TriangularFuzzyNumber; 3]>,
    endurance: Vec<TriangularFuzzyNumber>,
    defuzz: DefuzzMode,
    fuzzy_times: Vec<Option<TriangularFuzzyNumber>>,
    crisp_times: Vec<f64>,
    notes: Option<String>,
}

impl Scenario {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn defuzz(&self) -> DefuzzMode {
        self.defuzz
    }

    pub fn notes(&self) -> Option<&str> {
        self.notes.as_deref()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon.defuzzify(self.defuzz)
    }

    /// Crisp objective weight on the completion time of task `task` at target `j`.
    pub fn task_weight(&self, j: usize, task: Task) -> f64 {
        self.task_weights[j - 1][task.number() - 1].defuzzify(self.defuzz)
    }

    /// Crisp endurance of vehicle `v`.
    pub fn endurance(&self, v: usize) -> f64 {
        self.endurance[v - 1].defuzzify(self.defuzz)
    }

    pub fn max_endurance(&self) -> f64 {
        (1..=self.w).map(|v| self.endurance(v)).fold(0.0, f64::max)
    }

    /// The big-M constant used by the timing rows: `w * max_v T_v`.
    pub fn big_m(&self) -> f64 {
        self.w as f64 * self.max_endurance()
    }

    pub fn node_count(&self) -> usize {
        self.n + self.w + 1
    }

    pub fn sink_index(&self) -> NodeIndex {
        NodeIndex(self.n + self.w + 1)
    }

    pub fn source_of(&self, v: usize) -> NodeIndex {
        NodeIndex(self.n + v)
    }

    pub fn node_kind(&self, node: NodeIndex) -> Option<NodeKind> {
        let i = node.0;
        if i == 0 || i > self.node_count() {
            None
        } else if i <= self.n {
            Some(NodeKind::Target(i))
        } else if i <= self.n + self.w {
            Some(NodeKind::Source {
                vehicle: i - self.n,
            })
        } else {
            Some(NodeKind::Sink)
        }
    }

    /// Whether `(v, k, i, j)` is an arc of the model: source rows only for
    /// the owning vehicle, self-arcs only for attacks.
    pub fn is_admissible(&self, v: usize, task: Task, i: usize, j: usize) -> bool {
        admissibility(self.n, self.w, v, task.number(), i, j).is_ok()
    }

    /// All admissible arcs, ordered by `(v, k, i, j)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, Task, usize, usize)> + '_ {
        let (n, w) = (self.n, self.w);
        (1..=w).flat_map(move |v| {
            Task::ALL.into_iter().flat_map(move |task| {
                (1..=n + w).flat_map(move |i| {
                    (1..=n)
                        .filter(move |&j| admissibility(n, w, v, task.number(), i, j).is_ok())
                        .map(move |j| (v, task, i, j))
                })
            })
        })
    }

    /// Crisp flight time for an admissible arc.
    pub fn flight_time(
        &self,
        v: usize,
        task: Task,
        i: NodeIndex,
        j: NodeIndex,
    ) -> Result<f64, ScenarioError> {
        admissibility(self.n, self.w, v, task.number(), i.0, j.0).map_err(|reason| {
            ScenarioError::InadmissibleArc {
                v,
                k: task.number(),
                i: i.0,
                j: j.0,
                reason,
            }
        })?;
        Ok(self.time(v, task, i.0, j.0))
    }

    /// Crisp flight time without admissibility checks. Panics on indices
    /// outside the table; returns NaN for inadmissible arcs.
    pub fn time(&self, v: usize, task: Task, i: usize, j: usize) -> f64 {
        self.crisp_times[table_slot(self.n, self.w, v, task.number(), i, j)]
    }

    pub fn fuzzy_time(
        &self,
        v: usize,
        task: Task,
        i: usize,
        j: usize,
    ) -> Option<TriangularFuzzyNumber> {
        if admissibility(self.n, self.w, v, task.number(), i, j).is_err() {
            return None;
        }
        self.fuzzy_times[table_slot(self.n, self.w, v, task.number(), i, j)]
    }

    /// Same instance with every flight time, the task gap and every endurance
    /// multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Scenario {
        let scale = |t: &TriangularFuzzyNumber| {
            TriangularFuzzyNumber::new(
                t.modal() * lambda,
                t.lower_width() * lambda,
                t.upper_width() * lambda,
            )
            .expect("scaling by a positive factor keeps a valid fuzzy number")
        };
        let mut out = self.clone();
        out.epsilon = scale(&self.epsilon);
        out.endurance = self.endurance.iter().map(scale).collect();
        out.fuzzy_times = self
            .fuzzy_times
            .iter()
            .map(|t| t.as_ref().map(scale))
            .collect();
        out.crisp_times = self.crisp_times.iter().map(|t| t * lambda).collect();
        out
    }

    pub fn from_json_str(text: &str) -> Result<Scenario, ScenarioError> {
        ScenarioDocument::from_json_str(text)?.into_scenario()
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// Explicit-table document that reloads to an equivalent scenario.
    pub fn to_document(&self) -> ScenarioDocument {
        let explicit = self
            .arcs()
            .map(|(v, task, i, j)| ExplicitEntry {
                v,
                k: task.number(),
                i,
                j,
                t: self.fuzzy_times[table_slot(self.n, self.w, v, task.number(), i, j)]
                    .expect("admissible arcs always carry a time"),
            })
            .collect();
        ScenarioDocument {
            n: self.n,
            w: self.w,
            epsilon: Some(self.epsilon),
            task_weight: Some(TaskWeightSpec::PerTarget(self.task_weights.clone())),
            defuzz: Some(DefuzzSpec {
                mode: self.defuzz.name().to_string(),
                alpha: self.defuzz.alpha(),
            }),
            endurance: EnduranceSpec::PerVehicle(self.endurance.clone()),
            flight_times: FlightTimesSpec {
                explicit: Some(explicit),
                t_default: None,
                geometric: None,
            },
            notes: self.notes.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_document())
            .expect("scenario documents always serialize")
    }
}

fn table_slot(n: usize, w: usize, v: usize, k: usize, i: usize, j: usize) -> usize {
    assert!(
        (1..=w).contains(&v)
            && (1..=3).contains(&k)
            && (1..=n + w).contains(&i)
            && (1..=n).contains(&j),
        "arc (v={v}, k={k}, i={i}, j={j}) outside the table"
    );
    (((v - 1) * 3 + (k - 1)) * (n + w) + (i - 1)) * n + (j - 1)
}

fn admissibility(
    n: usize,
    w: usize,
    v: usize,
    k: usize,
    i: usize,
    j: usize,
) -> Result<(), &'static str> {
    if !(1..=w).contains(&v) {
        return Err("vehicle out of range");
    }
    if !(1..=3).contains(&k) {
        return Err("task out of range");
    }
    if !(1..=n).contains(&j) {
        return Err("destination is not a target");
    }
    if !(1..=n + w).contains(&i) {
        return Err("origin is neither a target nor a source");
    }
    if i > n && i != n + v {
        return Err("source row belongs to another vehicle");
    }
    if i == j && k != 2 {
        return Err("self-arcs exist only for attacks");
    }
    Ok(())
}

/// Seeded random desk-scale instance: every admissible arc time uniform in
/// `[0.1, 10]`, endurance 100, default gap and weights.
pub fn random_scenario(n: usize, w: usize, seed: u64) -> Result<Scenario, ScenarioError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut explicit = Vec::new();
    for v in 1..=w {
        for k in 1..=3 {
            for i in 1..=n + w {
                for j in 1..=n {
                    if admissibility(n, w, v, k, i, j).is_ok() {
                        let t: f64 = rng.random_range(0.1..=10.0);
                        // Keep generated files short and exactly reproducible.
                        let t = (t * 100.0).round() / 100.0;
                        explicit.push(ExplicitEntry {
                            v,
                            k,
                            i,
                            j,
                            t: TriangularFuzzyNumber::crisp(t),
                        });
                    }
                }
            }
        }
    }
    ScenarioDocument {
        n,
        w,
        epsilon: None,
        task_weight: None,
        defuzz: None,
        endurance: EnduranceSpec::Uniform(TriangularFuzzyNumber::crisp(100.0)),
        flight_times: FlightTimesSpec {
            explicit: Some(explicit),
            t_default: None,
            geometric: None,
        },
        notes: Some(format!("random instance n={n} w={w} seed={seed}")),
    }
    .into_scenario()
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// Raw scenario file contents, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub n: usize,
    pub w: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<TriangularFuzzyNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task_weight: Option<TaskWeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defuzz: Option<DefuzzSpec>,
    pub endurance: EnduranceSpec,
    pub flight_times: FlightTimesSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefuzzSpec {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TaskWeightSpec {
    /// One `[classify, attack, verify]` triple per target.
    PerTarget(Vec<[TriangularFuzzyNumber; 3]>),
    PerTask {
        classify: TriangularFuzzyNumber,
        attack: TriangularFuzzyNumber,
        verify: TriangularFuzzyNumber,
    },
    Uniform(TriangularFuzzyNumber),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EnduranceSpec {
    PerVehicle(Vec<TriangularFuzzyNumber>),
    Uniform(TriangularFuzzyNumber),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlightTimesSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<Vec<ExplicitEntry>>,
    /// Vehicle- and task-independent fallback times over `(i, j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_default: Option<Vec<PairEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric: Option<GeometricSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitEntry {
    pub v: usize,
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub t: TriangularFuzzyNumber,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub t: TriangularFuzzyNumber,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricSpec {
    /// Planar coordinates of nodes `1..=n+w`.
    pub coords: Vec<[TriangularFuzzyNumber; 2]>,
    pub speed: SpeedSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpeedSpec {
    PerVehicle(Vec<TriangularFuzzyNumber>),
    Uniform(TriangularFuzzyNumber),
}

impl ScenarioDocument {
    pub fn from_json_str(text: &str) -> Result<ScenarioDocument, ScenarioError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            ScenarioError::Schema {
                path,
                message: err.into_inner().to_string(),
            }
        })
    }

    pub fn set_defuzz(&mut self, mode: DefuzzMode) {
        self.defuzz = Some(DefuzzSpec {
            mode: mode.name().to_string(),
            alpha: mode.alpha(),
        });
    }

    /// Validates the document and expands its flight-time table.
    pub fn into_scenario(self) -> Result<Scenario, ScenarioError> {
        let invariant = |msg: &str| Err(ScenarioError::Invariant(msg.to_string()));
        let (n, w) = (self.n, self.w);
        if n < 1 {
            return invariant("n must be at least 1");
        }
        if w < n + 1 {
            return invariant("w must exceed n");
        }

        let defuzz = match &self.defuzz {
            None => DefuzzMode::Modal,
            Some(spec) => DefuzzMode::from_parts(&spec.mode, spec.alpha)?,
        };

        let epsilon = self
            .epsilon
            .unwrap_or(TriangularFuzzyNumber::crisp(DEFAULT_EPSILON));
        if epsilon.defuzzify(defuzz) <= 0.0 {
            return invariant("epsilon must be positive");
        }

        let default_weight = TriangularFuzzyNumber::crisp(DEFAULT_TASK_WEIGHT);
        let task_weights = match self.task_weight {
            None => vec![[default_weight; 3]; n],
            Some(TaskWeightSpec::Uniform(c)) => vec![[c; 3]; n],
            Some(TaskWeightSpec::PerTask {
                classify,
                attack,
                verify,
            }) => vec![[classify, attack, verify]; n],
            Some(TaskWeightSpec::PerTarget(rows)) => {
                if rows.len() != n {
                    return invariant(
                        "task_weight must list one [classify, attack, verify] triple per target",
                    );
                }
                rows
            }
        };
        if task_weights
            .iter()
            .flatten()
            .any(|c| c.defuzzify(defuzz) < 0.0)
        {
            return invariant("task weights must be non-negative");
        }

        let endurance = match self.endurance {
            EnduranceSpec::Uniform(t) => vec![t; w],
            EnduranceSpec::PerVehicle(list) => {
                if list.len() != w {
                    return invariant("endurance must list one value per vehicle");
                }
                list
            }
        };
        if endurance.iter().any(|t| t.defuzzify(defuzz) <= 0.0) {
            return invariant("endurance values must be positive");
        }

        let fuzzy_times = expand_table(n, w, defuzz, self.flight_times)?;
        let crisp_times = fuzzy_times
            .iter()
            .map(|t| t.map_or(f64::NAN, |t| t.defuzzify(defuzz)))
            .collect();

        Ok(Scenario {
            n,
            w,
            epsilon,
            task_weights,
            endurance,
            defuzz,
            fuzzy_times,
            crisp_times,
            notes: self.notes,
        })
    }
}

fn expand_table(
    n: usize,
    w: usize,
    defuzz: DefuzzMode,
    spec: FlightTimesSpec,
) -> Result<Vec<Option<TriangularFuzzyNumber>>, ScenarioError> {
    let size = w * 3 * (n + w) * n;
    let mut table: Vec<Option<TriangularFuzzyNumber>> = vec![None; size];

    if spec.explicit.is_some() || spec.t_default.is_some() {
        if spec.geometric.is_some() {
            log::warn!("both explicit and geometric flight times given; using the explicit table");
        }
        for e in spec.explicit.unwrap_or_default() {
            admissibility(n, w, e.v, e.k, e.i, e.j).map_err(|reason| {
                ScenarioError::InadmissibleArc {
                    v: e.v,
                    k: e.k,
                    i: e.i,
                    j: e.j,
                    reason,
                }
            })?;
            e.t.check_time()?;
            let slot = &mut table[table_slot(n, w, e.v, e.k, e.i, e.j)];
            if slot.is_some() {
                return Err(ScenarioError::DuplicateFlightTime {
                    v: e.v,
                    k: e.k,
                    i: e.i,
                    j: e.j,
                });
            }
            *slot = Some(e.t);
        }
        let mut defaults = BTreeMap::new();
        for p in spec.t_default.unwrap_or_default() {
            if !(1..=n + w).contains(&p.i) || !(1..=n).contains(&p.j) {
                return Err(ScenarioError::Invariant(format!(
                    "t_default entry ({}, {}) is outside the node range",
                    p.i, p.j
                )));
            }
            p.t.check_time()?;
            if defaults.insert((p.i, p.j), p.t).is_some() {
                return Err(ScenarioError::Invariant(format!(
                    "duplicate t_default entry ({}, {})",
                    p.i, p.j
                )));
            }
        }
        for v in 1..=w {
            for k in 1..=3 {
                for i in 1..=n + w {
                    for j in 1..=n {
                        if admissibility(n, w, v, k, i, j).is_err() {
                            continue;
                        }
                        let slot = &mut table[table_slot(n, w, v, k, i, j)];
                        if slot.is_none() {
                            *slot = defaults.get(&(i, j)).copied();
                        }
                        if slot.is_none() {
                            return Err(ScenarioError::MissingFlightTime { v, k, i, j });
                        }
                    }
                }
            }
        }
        return Ok(table);
    }

    let Some(geo) = spec.geometric else {
        return Err(ScenarioError::Schema {
            path: "flight_times".to_string(),
            message: "one of `explicit`, `t_default` or `geometric` is required".to_string(),
        });
    };
    if geo.coords.len() != n + w {
        return Err(ScenarioError::Invariant(
            "geometric coords must list one point per target and source node".to_string(),
        ));
    }
    let speeds: Vec<f64> = match geo.speed {
        SpeedSpec::Uniform(s) => vec![s.defuzzify(defuzz); w],
        SpeedSpec::PerVehicle(list) => {
            if list.len() != w {
                return Err(ScenarioError::Invariant(
                    "geometric speed must list one value per vehicle".to_string(),
                ));
            }
            list.iter().map(|s| s.defuzzify(defuzz)).collect()
        }
    };
    if speeds.iter().any(|&s| s <= 0.0) {
        return Err(ScenarioError::Invariant(
            "vehicle speeds must be positive".to_string(),
        ));
    }
    let points: Vec<(f64, f64)> = geo
        .coords
        .iter()
        .map(|[x, y]| (x.defuzzify(defuzz), y.defuzzify(defuzz)))
        .collect();
    for v in 1..=w {
        for k in 1..=3 {
            for i in 1..=n + w {
                for j in 1..=n {
                    if admissibility(n, w, v, k, i, j).is_ok() {
                        let (a, b) = (points[i - 1], points[j - 1]);
                        let dist = (a.0 - b.0).hypot(a.1 - b.1);
                        table[table_slot(n, w, v, k, i, j)] =
                            Some(TriangularFuzzyNumber::crisp(dist / speeds[v - 1]));
                    }
                }
            }
        }
    }
    Ok(table)
}
