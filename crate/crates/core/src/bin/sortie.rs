use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sortie::{
    build_model, oracle_solve, random_scenario, solve, validate, DefuzzMode, ObjectiveKind, Plan,
    Scenario, ScenarioDocument, SolveError, SolveStatus, SolverParams, TriangularFuzzyNumber,
};

const EXIT_USAGE: u8 = 1;
const EXIT_SCENARIO: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;
const EXIT_VIOLATIONS: u8 = 4;

// Stdout writes that end quietly when the reader goes away.
macro_rules! out {
    ($($arg:tt)*) => {
        stdout_or_exit(format_args!($($arg)*), true)
    };
}

macro_rules! out_raw {
    ($($arg:tt)*) => {
        stdout_or_exit(format_args!($($arg)*), false)
    };
}

fn stdout_or_exit(args: std::fmt::Arguments<'_>, newline: bool) {
    let mut stdout = io::stdout().lock();
    let written = stdout.write_fmt(args).and_then(|()| {
        if newline {
            stdout.write_all(b"\n")
        } else {
            Ok(())
        }
    });
    if let Err(e) = written {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(1);
    }
}

#[derive(Parser)]
#[command(
    name = "sortie",
    version,
    about = "Exact planner for classify/attack/verify missions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a scenario and report what it contains.
    Validate(ScenarioArgs),
    /// Print the variable and constraint census of the model.
    Stats(ScenarioArgs),
    /// Solve to optimality and emit a plan.
    Solve(ScenarioArgs),
    /// Check a plan file against a scenario.
    Check {
        #[command(flatten)]
        common: ScenarioArgs,
        /// Plan JSON produced by `solve` or written by hand.
        #[arg(long)]
        plan: PathBuf,
    },
    /// Solve by enumeration and compare with the branch-and-bound result.
    Oracle {
        #[command(flatten)]
        common: ScenarioArgs,
        /// Generate a random instance `N,W` instead of reading a scenario.
        #[arg(long, value_name = "N,W", value_parser = parse_pair)]
        gen: Option<(usize, usize)>,
    },
    /// Write the model in CPLEX LP format.
    ExportLp(ScenarioArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    TotalTime,
    Makespan,
    Survivors,
}

impl From<ObjectiveArg> for ObjectiveKind {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::TotalTime => ObjectiveKind::TotalFlightTime,
            ObjectiveArg::Makespan => ObjectiveKind::WeightedMakespan,
            ObjectiveArg::Survivors => ObjectiveKind::Survivors,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DefuzzArg {
    Modal,
    Centroid,
    AlphaPess,
    AlphaOpt,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario JSON file.
    scenario: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "makespan")]
    objective: ObjectiveArg,
    #[arg(long, value_enum)]
    defuzz: Option<DefuzzArg>,
    /// Alpha level for the alpha-cut defuzzification modes.
    #[arg(long)]
    alpha: Option<f64>,
    /// Override the minimum gap between consecutive tasks on a target.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Write machine-readable output here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for generated instances.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Node relaxations evaluated in parallel.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl ScenarioArgs {
    fn kind(&self) -> ObjectiveKind {
        self.objective.into()
    }

    fn params(&self) -> SolverParams {
        let mut p = SolverParams {
            threads: self.threads.max(1),
            ..SolverParams::default()
        };
        if let Some(limit) = self.node_limit {
            p.node_limit = limit;
        }
        p
    }

    fn defuzz_mode(&self) -> Result<Option<DefuzzMode>, Failure> {
        let name = match self.defuzz {
            None if self.alpha.is_some() => {
                return Err(Failure::usage(
                    "--alpha needs --defuzz alpha-pess or alpha-opt",
                ))
            }
            None => return Ok(None),
            Some(DefuzzArg::Modal) => "modal",
            Some(DefuzzArg::Centroid) => "centroid",
            Some(DefuzzArg::AlphaPess) => "alpha-pess",
            Some(DefuzzArg::AlphaOpt) => "alpha-opt",
        };
        DefuzzMode::from_parts(name, self.alpha)
            .map(Some)
            .map_err(|e| Failure::usage(e.to_string()))
    }

    fn patch(&self, doc: &mut ScenarioDocument) -> Result<(), Failure> {
        if let Some(mode) = self.defuzz_mode()? {
            doc.set_defuzz(mode);
        }
        if let Some(eps) = self.epsilon {
            doc.epsilon = Some(TriangularFuzzyNumber::crisp(eps));
        }
        Ok(())
    }

    fn load(&self) -> Result<Scenario, Failure> {
        let path = self
            .scenario
            .as_ref()
            .ok_or_else(|| Failure::usage("a scenario file is required"))?;
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_SCENARIO, format!("{}: {e}", path.display())))?;
        let mut doc = ScenarioDocument::from_json_str(&text).map_err(Failure::scenario)?;
        self.patch(&mut doc)?;
        doc.into_scenario().map_err(Failure::scenario)
    }

    fn generate(&self, n: usize, w: usize) -> Result<Scenario, Failure> {
        let s = random_scenario(n, w, self.seed).map_err(Failure::scenario)?;
        let mut doc = s.to_document();
        self.patch(&mut doc)?;
        doc.into_scenario().map_err(Failure::scenario)
    }
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| "expected N,W".to_string())?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((parse(a)?, parse(b)?))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }

    fn scenario(e: sortie::ScenarioError) -> Self {
        Self::new(EXIT_SCENARIO, format!("invalid scenario: {e}"))
    }

    fn solve(e: SolveError) -> Self {
        match e {
            SolveError::NodeLimit(_) => Self::new(EXIT_NO_SOLUTION, e.to_string()),
            SolveError::TooLarge { .. } => Self::usage(e.to_string()),
            other => Self::new(EXIT_NO_SOLUTION, format!("solver failure: {other}")),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self::new(EXIT_USAGE, format!("{}: {e}", path.display()))
    }
}

/// Writes to `--out` if given, otherwise to standard output.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

/// Human-readable lines go to stdout when machine output has its own file,
/// and to stderr when machine output occupies stdout.
fn say(args: &ScenarioArgs, line: &str) {
    if args.out.is_some() {
        out!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn cmd_validate(args: &ScenarioArgs) -> Result<u8, Failure> {
    let s = args.load()?;
    out!("n={} w={} arcs={}", s.n(), s.w(), s.arcs().count());
    out!(
        "epsilon={} big_m={} defuzz={}",
        s.epsilon(),
        s.big_m(),
        s.defuzz().name()
    );
    for v in 1..=s.w() {
        out!("vehicle {v}: endurance {}", s.endurance(v));
    }
    if let Some(notes) = s.notes() {
        out!("notes: {notes}");
    }
    out!("scenario ok");
    Ok(0)
}

fn cmd_stats(args: &ScenarioArgs) -> Result<u8, Failure> {
    let s = args.load()?;
    let m = build_model(&s, args.kind());
    let census = m.constraint_census();
    out!(
        "binary={} continuous={} equality={}",
        m.binary_count(),
        m.continuous_count(),
        census.equality
    );
    out!("{:<6}{:>8}", "family", "rows");
    for (family, count) in &census.per_family {
        out!("{:<6}{:>8}", family.tag(), count);
    }
    out!("{:<6}{:>8}", "total", census.total());
    let per_family: serde_json::Map<String, serde_json::Value> = census
        .per_family
        .iter()
        .map(|(f, c)| (f.tag().to_string(), json!(c)))
        .collect();
    let doc = json!({
        "n": s.n(),
        "w": s.w(),
        "objective": args.kind().name(),
        "binary": m.binary_count(),
        "continuous": m.continuous_count(),
        "equality": census.equality,
        "inequality": census.inequality,
        "timing_inequality": census.timing_inequalities(),
        "families": per_family,
    });
    let text = serde_json::to_string_pretty(&doc).expect("census serializes");
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e))?,
        None => out!("{text}"),
    }
    Ok(0)
}

fn cmd_solve(args: &ScenarioArgs) -> Result<u8, Failure> {
    let s = args.load()?;
    let m = build_model(&s, args.kind());
    let sol = solve(&m, &args.params()).map_err(Failure::solve)?;
    if sol.status == SolveStatus::Infeasible {
        return Err(Failure::new(
            EXIT_NO_SOLUTION,
            format!("infeasible after {} nodes", sol.node_count),
        ));
    }
    let plan = Plan::from_solution(&s, &sol).map_err(|e| {
        Failure::new(
            EXIT_NO_SOLUTION,
            format!("solver produced a broken plan: {e}"),
        )
    })?;
    say(
        args,
        &format!(
            "{} optimal: objective {:.6} makespan {:.6} ({} nodes)",
            args.kind().name(),
            sol.objective,
            plan.makespan,
            sol.node_count
        ),
    );
    for vp in &plan.vehicles {
        let route: Vec<String> = vp
            .events
            .iter()
            .map(|e| format!("{:?}@{}:{:.4}", e.action, e.node, e.t).to_lowercase())
            .collect();
        say(
            args,
            &format!("  vehicle {}: {}", vp.id, route.join(" -> ")),
        );
    }
    emit(args.out.as_deref(), &plan.to_json_string())?;
    Ok(0)
}

fn cmd_check(args: &ScenarioArgs, plan_path: &Path) -> Result<u8, Failure> {
    let s = args.load()?;
    let text = fs::read_to_string(plan_path).map_err(|e| Failure::io(plan_path, e))?;
    let plan =
        Plan::from_json_str(&text).map_err(|e| Failure::new(EXIT_VIOLATIONS, e.to_string()))?;
    let sol = plan
        .to_solution(&s)
        .map_err(|e| Failure::new(EXIT_VIOLATIONS, e.to_string()))?;
    let report = validate(&s, &sol).map_err(|e| Failure::new(EXIT_VIOLATIONS, e.to_string()))?;
    for v in &report.violations {
        out!("violation {v}");
    }
    for f in &report.endurance_flags {
        out!(
            "endurance vehicle {}: flies {:.4} of {:.4}",
            f.vehicle,
            f.flight_time,
            f.endurance
        );
    }
    let families: Vec<&str> = report.families().iter().map(|f| f.tag()).collect();
    out!(
        "{} ({} violations{})",
        if report.ok { "ok" } else { "FAILED" },
        report.violations.len(),
        if families.is_empty() {
            String::new()
        } else {
            format!(": {}", families.join(","))
        }
    );
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(path, text).map_err(|e| Failure::io(path, e))?;
    }
    Ok(if report.ok { 0 } else { EXIT_VIOLATIONS })
}

fn cmd_oracle(args: &ScenarioArgs, gen: Option<(usize, usize)>) -> Result<u8, Failure> {
    let s = match gen {
        Some((n, w)) => {
            out!("generated n={n} w={w} seed={}", args.seed);
            args.generate(n, w)?
        }
        None => args.load()?,
    };
    let kind = args.kind();
    let by_oracle = oracle_solve(&s, kind).map_err(Failure::solve)?;
    let by_search = solve(&build_model(&s, kind), &args.params()).map_err(Failure::solve)?;
    let agree = match (by_oracle.status, by_search.status) {
        (SolveStatus::Optimal, SolveStatus::Optimal) => {
            (by_oracle.objective - by_search.objective).abs() <= 1e-6
        }
        (a, b) => a == b,
    };
    out!(
        "{}: oracle {} {:.9} | solve {} {:.9} | {}",
        kind.name(),
        by_oracle.status.name(),
        by_oracle.objective,
        by_search.status.name(),
        by_search.objective,
        if agree { "agree" } else { "DISAGREE" }
    );
    if let Some(path) = &args.out {
        let mut doc = json!({
            "objective_kind": kind.name(),
            "seed": gen.map(|_| args.seed),
            "oracle": { "status": by_oracle.status.name(), "objective": finite(by_oracle.objective) },
            "solve": { "status": by_search.status.name(), "objective": finite(by_search.objective) },
            "agree": agree,
        });
        if by_oracle.status == SolveStatus::Optimal {
            let plan = Plan::from_solution(&s, &by_oracle)
                .map_err(|e| Failure::new(EXIT_NO_SOLUTION, e.to_string()))?;
            doc["plan"] = serde_json::to_value(plan).expect("plan serializes");
        }
        if gen.is_some() {
            doc["scenario"] = serde_json::to_value(s.to_document()).expect("scenario serializes");
        }
        let text = serde_json::to_string_pretty(&doc).expect("report serializes");
        fs::write(path, text).map_err(|e| Failure::io(path, e))?;
    }
    Ok(if agree { 0 } else { EXIT_VIOLATIONS })
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn cmd_export_lp(args: &ScenarioArgs) -> Result<u8, Failure> {
    let s = args.load()?;
    let m = build_model(&s, args.kind());
    let text = m.to_lp_string();
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::io(path, e))?;
            let timing = m
                .constraints
                .iter()
                .filter(|c| c.family.is_timing())
                .count();
            out!(
                "wrote {} ({} variables, {} rows, {} timing)",
                path.display(),
                m.variables.len(),
                m.constraints.len(),
                timing
            );
        }
        None => out_raw!("{text}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Check { common, plan } => cmd_check(common, plan),
        Command::Oracle { common, gen } => cmd_oracle(common, *gen),
        Command::ExportLp(a) => cmd_export_lp(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
