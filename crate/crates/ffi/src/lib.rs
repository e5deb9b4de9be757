//! C interface to the sortie planner.
//!
//! Scenarios and solutions are opaque handles owned by the caller and
//! released with their `_free` functions. Every fallible call returns a
//! [`SortieStatus`]; on failure [`sortie_last_error`] describes the problem
//! for the calling thread. Strings returned through `char **` parameters are
//! released with [`sortie_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sortie::{
    build_model, solve, validate, ObjectiveKind, Plan, Scenario, Solution, SolveError, SolveStatus,
    SolverParams, Task,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortieStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidScenario = 3,
    Infeasible = 4,
    NodeLimit = 5,
    SolverFailure = 6,
    InvalidPlan = 7,
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortieObjective {
    TotalFlightTime = 0,
    WeightedMakespan = 1,
    Survivors = 2,
}

impl From<SortieObjective> for ObjectiveKind {
    fn from(o: SortieObjective) -> Self {
        match o {
            SortieObjective::TotalFlightTime => ObjectiveKind::TotalFlightTime,
            SortieObjective::WeightedMakespan => ObjectiveKind::WeightedMakespan,
            SortieObjective::Survivors => ObjectiveKind::Survivors,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortieTask {
    Classify = 1,
    Attack = 2,
    Verify = 3,
}

impl From<SortieTask> for Task {
    fn from(t: SortieTask) -> Self {
        match t {
            SortieTask::Classify => Task::Classify,
            SortieTask::Attack => Task::Attack,
            SortieTask::Verify => Task::Verify,
        }
    }
}

/// Model size for one scenario and objective.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SortieCensus {
    pub binary: usize,
    pub continuous: usize,
    pub equality: usize,
    pub inequality: usize,
}

/// Opaque scenario handle.
pub struct SortieScenario {
    inner: Scenario,
}

/// Opaque handle to an optimal solution.
pub struct SortieSolution {
    solution: Solution,
    plan_json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn fail(status: SortieStatus, msg: impl Into<String>) -> SortieStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into [`SortieStatus::Panic`].
fn guard(f: impl FnOnce() -> SortieStatus) -> SortieStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == SortieStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(SortieStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SortieStatus> {
    if p.is_null() {
        return Err(fail(SortieStatus::NullArgument, "string argument is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SortieStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn sortie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sortie_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates a scenario document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sortie_scenario_from_json(
    json: *const c_char,
    out: *mut *mut SortieScenario,
) -> SortieStatus {
    guard(|| {
        if out.is_null() {
            return fail(SortieStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Scenario::from_json_str(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SortieScenario { inner }));
                SortieStatus::Ok
            }
            Err(e) => fail(SortieStatus::InvalidScenario, e.to_string()),
        }
    })
}

/// Releases a scenario. Null is ignored.
///
/// # Safety
/// `scenario` must come from [`sortie_scenario_from_json`] and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn sortie_scenario_free(scenario: *mut SortieScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Number of targets and vehicles.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sortie_scenario_dims(
    scenario: *const SortieScenario,
    targets: *mut usize,
    vehicles: *mut usize,
) -> SortieStatus {
    guard(|| {
        let (Some(s), false, false) = (scenario.as_ref(), targets.is_null(), vehicles.is_null())
        else {
            return fail(SortieStatus::NullArgument, "null argument");
        };
        *targets = s.inner.n();
        *vehicles = s.inner.w();
        SortieStatus::Ok
    })
}

/// Variable and constraint counts of the model.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sortie_census(
    scenario: *const SortieScenario,
    objective: SortieObjective,
    out: *mut SortieCensus,
) -> SortieStatus {
    guard(|| {
        let (Some(s), Some(out)) = (scenario.as_ref(), out.as_mut()) else {
            return fail(SortieStatus::NullArgument, "null argument");
        };
        let m = build_model(&s.inner, objective.into());
        let c = m.constraint_census();
        *out = SortieCensus {
            binary: m.binary_count(),
            continuous: m.continuous_count(),
            equality: c.equality,
            inequality: c.inequality,
        };
        SortieStatus::Ok
    })
}

/// Solves to proven optimality. `node_limit == 0` keeps the default limit.
/// On [`SortieStatus::Infeasible`] and [`SortieStatus::NodeLimit`] no
/// solution is returned.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sortie_solve(
    scenario: *const SortieScenario,
    objective: SortieObjective,
    node_limit: u64,
    out: *mut *mut SortieSolution,
) -> SortieStatus {
    guard(|| {
        if out.is_null() {
            return fail(SortieStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let Some(s) = scenario.as_ref() else {
            return fail(SortieStatus::NullArgument, "scenario is null");
        };
        let mut params = SolverParams::default();
        if node_limit > 0 {
            params.node_limit = node_limit;
        }
        let solution = match solve(&build_model(&s.inner, objective.into()), &params) {
            Ok(sol) if sol.status == SolveStatus::Infeasible => {
                return fail(SortieStatus::Infeasible, "scenario is infeasible")
            }
            Ok(sol) => sol,
            Err(e @ SolveError::NodeLimit(_)) => {
                return fail(SortieStatus::NodeLimit, e.to_string())
            }
            Err(e) => return fail(SortieStatus::SolverFailure, e.to_string()),
        };
        let plan = match Plan::from_solution(&s.inner, &solution) {
            Ok(p) => p,
            Err(e) => return fail(SortieStatus::SolverFailure, e.to_string()),
        };
        *out = Box::into_raw(Box::new(SortieSolution {
            solution,
            plan_json: plan.to_json_string(),
        }));
        SortieStatus::Ok
    })
}

/// Releases a solution. Null is ignored.
///
/// # Safety
/// `solution` must come from [`sortie_solve`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sortie_solution_free(solution: *mut SortieSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Objective value; survivors are reported as a count.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sortie_solution_objective(
    solution: *const SortieSolution,
    out: *mut f64,
) -> SortieStatus {
    guard(|| {
        let (Some(sol), Some(out)) = (solution.as_ref(), out.as_mut()) else {
            return fail(SortieStatus::NullArgument, "null argument");
        };
        *out = sol.solution.objective;
        SortieStatus::Ok
    })
}

/// Time at which `task` is performed on `target` (1-based).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sortie_solution_task_time(
    solution: *const SortieSolution,
    target: usize,
    task: SortieTask,
    out: *mut f64,
) -> SortieStatus {
    guard(|| {
        let (Some(sol), Some(out)) = (solution.as_ref(), out.as_mut()) else {
            return fail(SortieStatus::NullArgument, "null argument");
        };
        if target == 0 || target > sol.solution.task_times.len() {
            return fail(SortieStatus::OutOfRange, format!("no target {target}"));
        }
        *out = sol.solution.task_time(target, task.into());
        SortieStatus::Ok
    })
}

/// Plan JSON of the solution.
///
/// # Safety
/// All pointers must be valid. Release the string with
/// [`sortie_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sortie_solution_plan_json(
    solution: *const SortieSolution,
    out: *mut *mut c_char,
) -> SortieStatus {
    guard(|| {
        if out.is_null() {
            return fail(SortieStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let Some(sol) = solution.as_ref() else {
            return fail(SortieStatus::NullArgument, "solution is null");
        };
        *out = into_c_string(sol.plan_json.clone());
        SortieStatus::Ok
    })
}

/// The model in CPLEX LP format.
///
/// # Safety
/// All pointers must be valid. Release the string with
/// [`sortie_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sortie_export_lp(
    scenario: *const SortieScenario,
    objective: SortieObjective,
    out: *mut *mut c_char,
) -> SortieStatus {
    guard(|| {
        if out.is_null() {
            return fail(SortieStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let Some(s) = scenario.as_ref() else {
            return fail(SortieStatus::NullArgument, "scenario is null");
        };
        *out = into_c_string(build_model(&s.inner, objective.into()).to_lp_string());
        SortieStatus::Ok
    })
}

/// Checks a plan against a scenario and reports the number of violated
/// rules. A well-formed plan with violations still returns
/// [`SortieStatus::Ok`].
///
/// # Safety
/// All pointers must be valid; `plan_json` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn sortie_check_plan(
    scenario: *const SortieScenario,
    plan_json: *const c_char,
    violations: *mut usize,
) -> SortieStatus {
    guard(|| {
        let (Some(s), Some(violations)) = (scenario.as_ref(), violations.as_mut()) else {
            return fail(SortieStatus::NullArgument, "null argument");
        };
        let text = match read_str(plan_json) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let report = Plan::from_json_str(text)
            .and_then(|p| p.to_solution(&s.inner))
            .and_then(|sol| validate(&s.inner, &sol));
        match report {
            Ok(r) => {
                *violations = r.violations.len();
                SortieStatus::Ok
            }
            Err(e) => fail(SortieStatus::InvalidPlan, e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sortie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
