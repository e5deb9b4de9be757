//! Exact planner for cooperative classify/attack/verify missions flown by
//! teams of expendable air vehicles.
//!
//! A [`Scenario`] is turned into a mixed-integer linear program by
//! [`build_model`], solved to proven optimality by [`solve`] and decoded into
//! per-vehicle timelines by [`extract_schedule`]. [`validate`] re-checks any
//! candidate solution against the scenario without going through the model,
//! and [`oracle_solve`] enumerates small instances exhaustively.

pub mod bnb;
pub mod error;
pub mod fuzzy;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod scenario;
pub mod schedule;
pub mod solution;

pub use bnb::{solve, solve_scenario, Branching, Search, SolverParams};
pub use error::{FuzzyError, LpError, ScenarioError, ScheduleError, SolveError};
pub use fuzzy::{membership_ramp, Alpha, DefuzzMode, TriangularFuzzyNumber};
pub use lp::{relaxation_of, solve_lp, LinearProgram, LpOutcome, LpStatus};
pub use model::{
    build_model, variable_census, ConstraintCensus, Family, MilpModel, ObjectiveKind, VariableId,
};
pub use oracle::{oracle_solve, timing_propagation, RouteArc, Timing};
pub use scenario::{random_scenario, NodeIndex, Scenario, ScenarioDocument, Task};
pub use schedule::{
    extract_schedule, validate, Action, Event, Plan, Schedule, ValidationReport, Violation,
};
pub use solution::{Assignment, Solution, SolveStatus};
