//! LP-based branch-and-bound over the binary arc variables.
//!
//! Nodes differ from the root only in the bounds of branched binaries. The
//! default search dives depth-first and, whenever a dive ends, reopens the
//! open node with the best parent bound. Incumbents are re-solved with their
//! binaries fixed and the continuous times pushed to their earliest values.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{LpError, SolveError};
use crate::lp::{relaxation_of, solve_lp_with, LinearProgram, LpOptions, LpOutcome, LpStatus};
use crate::model::{Domain, MilpModel, ObjectiveSense};
use crate::scenario::Scenario;
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branching {
    /// Branch on the binary closest to 0.5; ties go to the lowest ordinal.
    MostFractional,
    /// Branch on the lowest-ordinal fractional binary.
    LowestIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Search {
    /// Dive depth-first; reopen the best-bound open node when a dive ends.
    DepthFirst,
    /// Always expand the open node with the best bound.
    BestBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverParams {
    pub branching: Branching,
    pub search: Search,
    pub integrality_tol: f64,
    pub node_limit: u64,
    /// Node relaxations solved concurrently per step. `1` is sequential and
    /// bit-reproducible; larger values reach the same objective.
    pub threads: usize,
    pub lp: LpOptions,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            branching: Branching::MostFractional,
            search: Search::DepthFirst,
            integrality_tol: 1e-6,
            node_limit: 1_000_000,
            threads: 1,
            lp: LpOptions::default(),
        }
    }
}

/// Absolute gap below which a node cannot improve the incumbent.
const PRUNE_TOL: f64 = 1e-9;

struct Node {
    lower: Vec<f64>,
    upper: Vec<f64>,
    /// Parent relaxation value in minimization sense.
    bound: f64,
    seq: u64,
}

struct Open(Node);

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Open {}
impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Open {
    // BinaryHeap is a max-heap: smallest bound, then oldest node, on top.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .bound
            .total_cmp(&self.0.bound)
            .then_with(|| other.0.seq.cmp(&self.0.seq))
    }
}

struct Incumbent {
    value: f64,
    values: Vec<f64>,
}

struct BranchAndBound<'a> {
    model: &'a MilpModel,
    lp: LinearProgram,
    params: &'a SolverParams,
    binaries: Vec<usize>,
    /// +1 for minimization, -1 for maximization.
    sign: f64,
    /// Objective takes only integer values on integer points.
    integral_objective: bool,
    incumbent: Option<Incumbent>,
    next_seq: u64,
    nodes: u64,
}

/// Solves the model to proven optimality.
pub fn solve(m: &MilpModel, params: &SolverParams) -> Result<Solution, SolveError> {
    let lp = relaxation_of(m);
    let binaries: Vec<usize> = (0..m.variables.len())
        .filter(|&k| m.variables[k].domain == Domain::Binary)
        .collect();
    let integral_objective = m
        .objective
        .coeffs
        .iter()
        .all(|&(k, c)| m.variables[k].domain == Domain::Binary && c.fract() == 0.0);
    let sign = match m.objective.sense {
        ObjectiveSense::Minimize => 1.0,
        ObjectiveSense::Maximize => -1.0,
    };
    let mut search = BranchAndBound {
        model: m,
        params,
        binaries,
        sign,
        integral_objective,
        incumbent: None,
        next_seq: 0,
        nodes: 0,
        lp,
    };
    search.run()
}

impl BranchAndBound<'_> {
    fn prunable(&self, bound: f64) -> bool {
        match &self.incumbent {
            None => false,
            Some(inc) if self.integral_objective => bound > inc.value - 1.0 + 1e-6,
            Some(inc) => bound >= inc.value - PRUNE_TOL,
        }
    }

    fn new_node(&mut self, lower: Vec<f64>, upper: Vec<f64>, bound: f64) -> Node {
        self.next_seq += 1;
        Node {
            lower,
            upper,
            bound,
            seq: self.next_seq,
        }
    }

    fn evaluate(&self, node: &Node) -> Result<LpOutcome, LpError> {
        solve_lp_with(&self.lp, &node.lower, &node.upper, &self.params.lp)
    }

    fn run(&mut self) -> Result<Solution, SolveError> {
        let root = self.new_node(
            self.lp.lower.clone(),
            self.lp.upper.clone(),
            f64::NEG_INFINITY,
        );
        let mut dive: Option<Node> = Some(root);
        let mut pool: BinaryHeap<Open> = BinaryHeap::new();
        let threads = self.params.threads.max(1);
        let pool_threads = if threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .expect("thread pool construction"),
            )
        } else {
            None
        };

        loop {
            let mut batch: Vec<Node> = Vec::with_capacity(threads);
            while batch.len() < threads {
                let next = match dive.take() {
                    Some(node) => Some(node),
                    None => pool.pop().map(|o| o.0),
                };
                let Some(node) = next else { break };
                if self.prunable(node.bound) {
                    continue;
                }
                batch.push(node);
            }
            if batch.is_empty() {
                break;
            }
            if self.nodes + batch.len() as u64 > self.params.node_limit {
                return Err(SolveError::NodeLimit(self.params.node_limit));
            }
            self.nodes += batch.len() as u64;

            let outcomes: Vec<Result<LpOutcome, LpError>> = match &pool_threads {
                Some(tp) => tp.install(|| batch.par_iter().map(|n| self.evaluate(n)).collect()),
                None => batch.iter().map(|n| self.evaluate(n)).collect(),
            };

            for (node, outcome) in batch.into_iter().zip(outcomes) {
                if let Some((first, second)) = self.process(node, outcome?)? {
                    match self.params.search {
                        Search::DepthFirst if dive.is_none() => {
                            dive = Some(first);
                            pool.push(Open(second));
                        }
                        _ => {
                            pool.push(Open(first));
                            pool.push(Open(second));
                        }
                    }
                }
            }
        }

        let Some(inc) = self.incumbent.take() else {
            return Ok(Solution::infeasible(
                self.model.n,
                self.model.w,
                self.model.kind,
                self.nodes,
            ));
        };
        let mut sol = Solution::from_model_values(self.model, &inc.values, self.nodes);
        sol.objective = self.model.objective_value(&inc.values);
        Ok(sol)
    }

    /// Handles one evaluated node; returns its two children if it branches.
    fn process(&mut self, node: Node, out: LpOutcome) -> Result<Option<(Node, Node)>, SolveError> {
        match out.status {
            LpStatus::Infeasible => return Ok(None),
            LpStatus::Unbounded => return Err(SolveError::Unbounded),
            LpStatus::Optimal => {}
        }
        let bound = self.sign * out.objective;
        if self.prunable(bound) {
            return Ok(None);
        }

        let tol = self.params.integrality_tol;
        let mut pick: Option<(usize, f64)> = None;
        for &k in &self.binaries {
            if node.lower[k] == node.upper[k] {
                continue;
            }
            let x = out.values[k];
            let frac = (x - x.round()).abs();
            if frac <= tol {
                continue;
            }
            let score = match self.params.branching {
                Branching::MostFractional => frac,
                Branching::LowestIndex => f64::INFINITY,
            };
            match pick {
                Some((_, best)) if score <= best => {}
                _ => pick = Some((k, score)),
            }
            if self.params.branching == Branching::LowestIndex {
                break;
            }
        }

        let Some((k, _)) = pick else {
            self.try_incumbent(&out.values)?;
            return Ok(None);
        };

        let x = out.values[k];
        let mut down_upper = node.upper.clone();
        down_upper[k] = 0.0;
        let mut up_lower = node.lower.clone();
        up_lower[k] = 1.0;
        let down = self.new_node(node.lower, down_upper, bound);
        let up = self.new_node(up_lower, node.upper, bound);
        Ok(Some(if x >= 0.5 { (up, down) } else { (down, up) }))
    }

    fn try_incumbent(&mut self, values: &[f64]) -> Result<(), SolveError> {
        let Some(polished) = polish(self.model, &self.lp, values, &self.params.lp)? else {
            log::debug!("integral relaxation point became infeasible after rounding");
            return Ok(());
        };
        let value = self.sign * self.model.objective_value(&polished);
        let better = match &self.incumbent {
            None => true,
            Some(inc) => value < inc.value - PRUNE_TOL,
        };
        if better {
            log::debug!("incumbent {value} after {} nodes", self.nodes);
            self.incumbent = Some(Incumbent {
                value,
                values: polished,
            });
        }
        Ok(())
    }
}

/// Fixes every binary to its rounded value and solves for the earliest
/// feasible times. Returns `None` if the rounded assignment is infeasible.
///
/// For fixed arcs the timing rows form a system of difference constraints,
/// whose least solution also minimizes the weighted makespan.
pub(crate) fn polish(
    m: &MilpModel,
    lp: &LinearProgram,
    values: &[f64],
    opts: &LpOptions,
) -> Result<Option<Vec<f64>>, SolveError> {
    let mut lower = lp.lower.clone();
    let mut upper = lp.upper.clone();
    let mut timing = lp.clone();
    timing.sense = ObjectiveSense::Minimize;
    timing.objective.clear();
    for (k, var) in m.variables.iter().enumerate() {
        match var.domain {
            Domain::Binary => {
                let x = values[k].round();
                lower[k] = x;
                upper[k] = x;
            }
            Domain::Continuous => timing.objective.push((k, 1.0)),
        }
    }
    let out = solve_lp_with(&timing, &lower, &upper, opts)?;
    match out.status {
        LpStatus::Optimal => Ok(Some(out.values)),
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => Err(SolveError::Unbounded),
    }
}

/// Convenience: build the model for `s` and solve it.
pub fn solve_scenario(
    s: &Scenario,
    kind: crate::model::ObjectiveKind,
    params: &SolverParams,
) -> Result<Solution, SolveError> {
    solve(&crate::model::build_model(s, kind), params)
}
