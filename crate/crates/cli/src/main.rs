//! `tensor-roadmap`: grids, sample-size tables, cover checks, single- and
//! multi-robot planning, experiment sweeps and scene rendering.
//!
//! Results go to stdout (or `--output`), progress and summaries to stderr.
//! Exit codes: 0 success, 1 planning failure, 2 invalid input, 3 internal
//! invariant violation.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use tensor_roadmap::geometry::{Point, Workspace};
use tensor_roadmap::mrmp::{path_cost, CompositePath, CostMetric, PlannerConfig, PlannerMode};
use tensor_roadmap::roadmap::{build_prm, shortest_path, theorem1_params, MotionProblem, ShortestPath};
use tensor_roadmap::sampling::{
    bounds_table, display_count, multi_robot_sample_count, staggered_grid, table1, verify_beta_cover, BoundsQuery,
    GridParams, Stretch,
};
use tensor_roadmap::scenarios::{
    builtin, default_epsilons, plan_scenario, reference_cost, render_svg, run_random_comparison, run_ratio_sweep_with,
    ScenarioFile, SweepConfig,
};
use tensor_roadmap::Error;

#[derive(Parser)]
#[command(
    name = "tensor-roadmap",
    version,
    about = "Near-optimal roadmaps on staggered grids, for one or many disc robots"
)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "TENSOR_ROADMAP_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the points of a staggered grid.
    Grid(GridArgs),
    /// Sample-size table: lower bound, staggered grid, and the earlier covering bound.
    Bounds(BoundsArgs),
    /// Check that a staggered grid covers [γ, 1−γ]^d within β.
    CoverCheck(CoverArgs),
    /// Plan for a single point robot with the single-robot recipe.
    Plan(PlanArgs),
    /// Plan a multi-robot scenario on the tensor roadmap.
    MrmpPlan(MrmpArgs),
    /// Approximation-ratio sweep, optionally against random sampling.
    Experiment(ExperimentArgs),
    /// Draw a scenario (and optionally a planned path) as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write results here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn sink(&self) -> Result<Box<dyn Write>, Error> {
        Ok(match &self.output {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout())),
        })
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    dim: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    /// Reproduce the standard grid: δ ∈ {0.25, 0.1, 0.05, 0.01}, d ∈ 2..6, ε ∈ {inf, 1, 0.25, 0.1}.
    #[arg(long, conflicts_with_all = ["deltas", "epsilons", "dims", "multi_robot"])]
    table1: bool,
    /// Multi-robot grid sizes (β = ωδ) instead of the single-robot table.
    #[arg(long)]
    multi_robot: bool,
    #[arg(long = "delta", value_delimiter = ',', required_unless_present = "table1")]
    deltas: Vec<f64>,
    /// Stretch values; `inf` for ∞.
    #[arg(long = "epsilon", value_delimiter = ',', required_unless_present = "table1")]
    epsilons: Vec<Stretch>,
    #[arg(long = "dim", value_delimiter = ',', required_unless_present = "table1")]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    dim: usize,
    /// Random probes on top of the corners.
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PlanArgs {
    /// Workspace JSON; defaults to an obstacle-free cube.
    #[arg(long)]
    workspace: Option<PathBuf>,
    /// Comma-separated coordinates.
    #[arg(long, value_delimiter = ',', required = true)]
    start: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    goal: Vec<f64>,
    #[arg(long)]
    epsilon: Stretch,
    /// Clearance δ the guarantee is stated for.
    #[arg(long)]
    delta: f64,
    /// Robot radius; obstacles are inflated by it.
    #[arg(long, default_value_t = 0.0)]
    radius: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Astar,
    Prioritized,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Sum,
    Max,
}

#[derive(Args)]
struct PlannerArgs {
    /// Most robots moving per composite edge (default: all for ≤ 3 robots, else 1).
    #[arg(long)]
    move_cap: Option<usize>,
    /// Per-plan time limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    max_expansions: Option<usize>,
    /// Dense replay steps per composite edge for validation.
    #[arg(long, default_value_t = 10_000)]
    validate_steps: usize,
}

#[derive(Args)]
struct MrmpArgs {
    /// Built-in scenario name (open2, spiral2, circle4, lanes7) or a scenario JSON file.
    #[arg(long)]
    scenario: String,
    #[arg(long)]
    epsilon: Stretch,
    #[arg(long, value_enum, default_value = "astar")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "sum")]
    metric: MetricArg,
    #[command(flatten)]
    planner: PlannerArgs,
    /// Also write an SVG drawing of the plan.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    scenario: String,
    /// Stretch values (default: inf,50,20,10,5,2,1.5,1,0.75).
    #[arg(long = "epsilons", value_delimiter = ',')]
    epsilons: Vec<Stretch>,
    /// Compare against random sample sets of equal size.
    #[arg(long)]
    compare_random: bool,
    #[arg(long, default_value_t = 10, requires = "compare_random")]
    trials: u32,
    #[arg(long, default_value_t = 0, requires = "compare_random")]
    seed: u64,
    /// Run sweep cells one after another.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    planner: PlannerArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    scenario: String,
    /// Plan JSON written by `mrmp-plan`.
    #[arg(long)]
    path: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

/// JSON artifact of `mrmp-plan`.
#[derive(Serialize, Deserialize)]
struct PlanArtifact {
    scenario: String,
    epsilon: Stretch,
    samples: usize,
    reference: f64,
    path: CompositePath,
}

#[derive(Serialize)]
struct SinglePlanArtifact {
    epsilon: Stretch,
    delta: f64,
    radius: f64,
    samples: usize,
    vertices: usize,
    edges: usize,
    path: ShortestPath,
}

enum Failure {
    Planning(String),
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unreachable | Error::PlanningFailed(_) | Error::BudgetExhausted { .. } => {
                Failure::Planning(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn load_scenario(s: &str) -> Result<ScenarioFile, Error> {
    if Path::new(s).is_file() {
        ScenarioFile::load(s)
    } else {
        builtin(s)
    }
}

fn time_limit(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|_| Failure::Input(format!("bad time limit {s}")))).transpose()
}

fn cmd_grid(a: GridArgs) -> CmdResult {
    let params = GridParams::new(a.beta, a.gamma, a.dim)?;
    let grid = staggered_grid(&params)?;
    let mut w = a.out.sink()?;
    match a.format {
        TableFormat::Json => {
            #[derive(Serialize)]
            struct GridOut<'a> {
                beta: f64,
                gamma: f64,
                dim: usize,
                count: usize,
                points: &'a [Point],
            }
            let out = GridOut { beta: a.beta, gamma: a.gamma, dim: a.dim, count: grid.len(), points: &grid.points };
            serde_json::to_writer(&mut w, &out)?;
            writeln!(w)?;
        }
        TableFormat::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record((0..a.dim).map(|k| format!("x{k}")))?;
            for p in &grid.points {
                c.write_record(p.coords().iter().map(|x| x.to_string()))?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    eprintln!("{} points", grid.len());
    Ok(())
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    #[derive(Serialize)]
    struct Row {
        delta: f64,
        d: usize,
        epsilon: Stretch,
        lb: String,
        curr: String,
        prev: String,
    }
    #[derive(Serialize)]
    struct MultiRow {
        delta: f64,
        d: usize,
        epsilon: Stretch,
        samples: String,
    }
    let mut w = a.out.sink()?;
    let json = matches!(a.format, TableFormat::Json);
    if a.multi_robot {
        if a.deltas.is_empty() || a.epsilons.is_empty() || a.dims.is_empty() {
            return Err(Failure::Input("need at least one delta, epsilon and dim".into()));
        }
        let mut rows = Vec::new();
        for &delta in &a.deltas {
            for &dim in &a.dims {
                for &epsilon in &a.epsilons {
                    let n = multi_robot_sample_count(&BoundsQuery::new(epsilon, delta, dim)?)?;
                    rows.push(MultiRow { delta, d: dim, epsilon, samples: display_count(n as f64) });
                }
            }
        }
        emit(&mut w, &rows, json)?;
    } else {
        let table = if a.table1 { table1() } else { bounds_table(&a.deltas, &a.epsilons, &a.dims)? };
        let rows: Vec<_> = table
            .into_iter()
            .map(|r| Row {
                delta: r.delta,
                d: r.d,
                epsilon: r.epsilon,
                lb: display_count(r.lb),
                curr: display_count(r.curr as f64),
                prev: display_count(r.prev),
            })
            .collect();
        emit(&mut w, &rows, json)?;
    }
    w.flush()?;
    Ok(())
}

fn emit<T: Serialize>(w: &mut dyn Write, rows: &[T], json: bool) -> CmdResult {
    if json {
        serde_json::to_writer_pretty(&mut *w, rows)?;
        writeln!(w)?;
    } else {
        let mut c = csv::Writer::from_writer(w);
        for r in rows {
            c.serialize(r)?;
        }
        c.flush()?;
    }
    Ok(())
}

fn cmd_cover(a: CoverArgs) -> CmdResult {
    let params = GridParams::new(a.beta, a.gamma, a.dim)?;
    let grid = staggered_grid(&params)?;
    let r = verify_beta_cover(&grid, &params, a.trials, a.seed)?;
    println!(
        "{} points, {} probes, max gap {:.9} (beta {}) at {:?}: {}",
        grid.len(),
        r.probes,
        r.max_gap,
        a.beta,
        r.worst.coords(),
        if r.ok { "ok" } else { "NOT A COVER" }
    );
    if r.ok {
        Ok(())
    } else {
        Err(Failure::Internal("grid is not a beta-cover".into()))
    }
}

fn cmd_plan(a: PlanArgs) -> CmdResult {
    let started = Instant::now();
    let ws = match &a.workspace {
        Some(p) => serde_json::from_str::<Workspace>(&std::fs::read_to_string(p)?)?,
        None => Workspace::empty(a.start.len()),
    }
    .with_inflation(a.radius)?;
    let start = Point::try_new(a.start.clone())?;
    let goal = Point::try_new(a.goal.clone())?;
    let problem = MotionProblem::new(ws.clone(), start.clone(), goal.clone())?;
    let params = theorem1_params(a.epsilon, a.delta, ws.dim())?;
    let samples = staggered_grid(&params.grid)?;
    let roadmap = build_prm(&problem, &samples, params.radius)?;
    let path = shortest_path(&roadmap, &start, &goal)?;
    eprintln!(
        "cost {:.6}, {} samples, {} vertices, {} edges, {:.3}s",
        path.length,
        samples.len(),
        roadmap.len(),
        roadmap.edge_count(),
        started.elapsed().as_secs_f64()
    );
    let out = SinglePlanArtifact {
        epsilon: a.epsilon,
        delta: a.delta,
        radius: a.radius,
        samples: samples.len(),
        vertices: roadmap.len(),
        edges: roadmap.edge_count(),
        path,
    };
    let mut w = a.out.sink()?;
    serde_json::to_writer(&mut w, &out)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn cmd_mrmp(a: MrmpArgs) -> CmdResult {
    let started = Instant::now();
    let s = load_scenario(&a.scenario)?;
    let config = PlannerConfig {
        epsilon: a.epsilon,
        move_cap: a.planner.move_cap,
        mode: match a.mode {
            ModeArg::Astar => PlannerMode::CompositeAstar,
            ModeArg::Prioritized => PlannerMode::PrioritizedTiming,
        },
        tie_break: Default::default(),
        max_expansions: a.planner.max_expansions,
        time_limit: time_limit(a.planner.time_limit)?,
    };
    let metric = match a.metric {
        MetricArg::Sum => CostMetric::Sum,
        MetricArg::Max => CostMetric::Max,
    };
    let reference = reference_cost(&s)?;
    let mut outcome = plan_scenario(&s, &config, a.planner.validate_steps)?;
    if metric == CostMetric::Max {
        // Report the max metric on the sum-optimal path when asked.
        outcome.path.cost = path_cost(&outcome.path, metric);
        outcome.path.metric = metric;
    }
    let ratio = outcome.path.cost / reference.cost;
    eprintln!(
        "{}: cost {:.6}, reference {:.6}{}, ratio {:.4}, {} samples/robot, {} expansions, {} steps, plan {:.3}s, total {:.3}s",
        s.name,
        outcome.path.cost,
        reference.cost,
        if reference.lower_bound { " (lower bound)" } else { "" },
        ratio,
        outcome.samples,
        outcome.path.expansions,
        outcome.path.steps(),
        outcome.runtime.as_secs_f64(),
        started.elapsed().as_secs_f64()
    );
    if !outcome.validation.ok {
        return Err(Failure::Internal(format!("plan failed dense validation: {:?}", outcome.validation)));
    }
    if let Some(svg) = &a.svg {
        std::fs::write(svg, render_svg(&s, Some(&outcome.path)))?;
    }
    let artifact = PlanArtifact {
        scenario: s.name.clone(),
        epsilon: a.epsilon,
        samples: outcome.samples,
        reference: reference.cost,
        path: outcome.path,
    };
    let mut w = a.out.sink()?;
    serde_json::to_writer(&mut w, &artifact)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> CmdResult {
    let s = load_scenario(&a.scenario)?;
    let config = SweepConfig {
        epsilons: if a.epsilons.is_empty() { default_epsilons() } else { a.epsilons.clone() },
        move_cap: a.planner.move_cap,
        mode: PlannerMode::CompositeAstar,
        time_limit: time_limit(a.planner.time_limit)?,
        max_expansions: a.planner.max_expansions,
        validate_steps: a.planner.validate_steps,
        parallel: !a.sequential,
    };
    let mut w = a.out.sink()?;
    if a.compare_random {
        eprintln!("{}: {} stretch values x (1 staggered + {} random) runs", s.name, config.epsilons.len(), a.trials);
        let r = run_random_comparison(&s, &config, a.trials, a.seed)?;
        r.write_csv(&mut w)?;
    } else {
        let r = run_ratio_sweep_with(&s, &config, |row| {
            eprintln!(
                "{} eps={} samples={} status={} ratio={}",
                row.scenario,
                row.epsilon,
                row.samples,
                row.status,
                row.ratio.map_or("-".into(), |x| format!("{x:.4}"))
            )
        })?;
        r.write_csv(&mut w)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_render(a: RenderArgs) -> CmdResult {
    let s = load_scenario(&a.scenario)?;
    let path = match &a.path {
        Some(p) => Some(serde_json::from_str::<PlanArtifact>(&std::fs::read_to_string(p)?)?.path),
        None => None,
    };
    if let Some(p) = &path {
        if p.trajectories.len() != s.robot_count() {
            return Err(Failure::Input("plan and scenario disagree on the robot count".into()));
        }
    }
    let mut w = a.out.sink()?;
    w.write_all(render_svg(&s, path.as_ref()).as_bytes())?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))?;
    }
    match cli.command {
        Command::Grid(a) => cmd_grid(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::CoverCheck(a) => cmd_cover(a),
        Command::Plan(a) => cmd_plan(a),
        Command::MrmpPlan(a) => cmd_mrmp(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Planning(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Input(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
