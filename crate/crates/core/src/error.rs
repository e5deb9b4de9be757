use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("fuzzy number components must be finite")]
    NonFinite,
    #[error("fuzzy half-widths must be non-negative (got lower {lower}, upper {upper})")]
    NegativeWidth { lower: f64, upper: f64 },
    #[error("time values must have a non-negative support (lowest point {0})")]
    NegativeTime(f64),
    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaOutOfRange(f64),
    #[error("defuzz mode `{0}` requires an alpha level")]
    MissingAlpha(String),
    #[error("defuzz mode `{0}` does not take an alpha level")]
    UnexpectedAlpha(String),
    #[error("unknown defuzz mode `{0}`")]
    UnknownMode(String),
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Invariant(String),
    #[error("inadmissible arc v={v} k={k} i={i} j={j}: {reason}")]
    InadmissibleArc {
        v: usize,
        k: usize,
        i: usize,
        j: usize,
        reason: &'static str,
    },
    #[error("missing flight time for v={v} k={k} i={i} j={j}")]
    MissingFlightTime {
        v: usize,
        k: usize,
        i: usize,
        j: usize,
    },
    #[error("duplicate flight time for v={v} k={k} i={i} j={j}")]
    DuplicateFlightTime {
        v: usize,
        k: usize,
        i: usize,
        j: usize,
    },
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error(
        "constraint row {row} references variable {var} but the program has {count} variables"
    )]
    DimensionMismatch {
        row: usize,
        var: usize,
        count: usize,
    },
    #[error("program has no variables")]
    Empty,
    #[error("non-finite coefficient, bound or right-hand side")]
    NonFinite,
    #[error("variable {0} has lower bound above its upper bound")]
    InvertedBounds(usize),
    #[error("simplex iteration limit reached")]
    IterationLimit,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("node limit of {0} reached before optimality was proven")]
    NodeLimit(u64),
    #[error("relaxation unbounded; the model is malformed")]
    Unbounded,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("instance too large for enumeration (n={n}, w={w}; limit n<=2, w<=4)")]
    TooLarge { n: usize, w: usize },
    #[error("precedence cycle among task times")]
    PrecedenceCycle,
    #[error("route for vehicle {vehicle} is malformed: {reason}")]
    BadRoute { vehicle: usize, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScheduleError {
    #[error("solution dimensions (n={n}, w={w}) do not match the scenario (n={sn}, w={sw})")]
    DimensionMismatch {
        n: usize,
        w: usize,
        sn: usize,
        sw: usize,
    },
    #[error("broken flow for vehicle {vehicle}: {reason}")]
    BrokenFlow { vehicle: usize, reason: String },
    #[error("solution is not optimal (status {0})")]
    NotSolved(String),
    #[error("plan is malformed: {0}")]
    BadPlan(String),
}
