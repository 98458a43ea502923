use std::io::{Read, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{reference_cost, ScenarioFile};
use crate::error::{invalid, Error, Result};
use crate::mrmp::{
    build_roadmaps, build_roadmaps_from_samples, clear_reference_paths, plan_composite_astar, plan_prioritized_timing,
    theorem2_params, validate_dense, CompositePath, MultiRobotProblem, PlannerConfig, PlannerMode, ValidationReport,
};
use crate::roadmap::Roadmap;
use crate::sampling::{random_samples, SampleSet, Stretch};

/// Stretch values swept by default: ∞, 50, 20, 10, 5, 2, 1.5, 1, 0.75.
pub fn default_epsilons() -> Vec<Stretch> {
    std::iter::once(Stretch::Infinite)
        .chain([50.0, 20.0, 10.0, 5.0, 2.0, 1.5, 1.0, 0.75].into_iter().map(Stretch::Finite))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub epsilons: Vec<Stretch>,
    pub move_cap: Option<usize>,
    pub mode: PlannerMode,
    /// Per-plan wall-clock limit; exceeding it records a failure.
    pub time_limit: Option<Duration>,
    pub max_expansions: Option<usize>,
    /// Dense replay resolution used to validate every plan.
    pub validate_steps: usize,
    /// Run the cells of a sweep concurrently.
    pub parallel: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            epsilons: default_epsilons(),
            move_cap: None,
            mode: PlannerMode::CompositeAstar,
            time_limit: None,
            max_expansions: None,
            validate_steps: 10_000,
            parallel: true,
        }
    }
}

impl SweepConfig {
    pub fn planner(&self, epsilon: Stretch) -> PlannerConfig {
        PlannerConfig {
            epsilon,
            move_cap: self.move_cap,
            mode: self.mode,
            tie_break: Default::default(),
            max_expansions: self.max_expansions,
            time_limit: self.time_limit,
        }
    }
}

/// A validated plan for one scene and stretch value.
#[derive(Clone, Debug)]
pub struct PlanOutcome {
    pub path: CompositePath,
    pub roadmaps: Vec<Roadmap>,
    /// Samples generated per robot before discarding colliding ones.
    pub samples: usize,
    pub validation: ValidationReport,
    pub runtime: Duration,
}

fn plan_on(
    problem: &MultiRobotProblem,
    roadmaps: Vec<Roadmap>,
    config: &PlannerConfig,
    samples: usize,
    validate_steps: usize,
    started: Instant,
) -> Result<PlanOutcome> {
    let path = match config.mode {
        PlannerMode::CompositeAstar => plan_composite_astar(problem, &roadmaps, config)?,
        PlannerMode::PrioritizedTiming => {
            let refs = clear_reference_paths(problem, &roadmaps)?;
            plan_prioritized_timing(problem, &roadmaps, config, &refs)?
        }
    };
    let runtime = started.elapsed();
    let validation = validate_dense(problem, &path, validate_steps)?;
    Ok(PlanOutcome { path, roadmaps, samples, validation, runtime })
}

/// Plan a scene with the multi-robot recipe at `config.epsilon`, using δ = μ
/// for every robot, and replay the result densely.
pub fn plan_scenario(s: &ScenarioFile, config: &PlannerConfig, validate_steps: usize) -> Result<PlanOutcome> {
    let started = Instant::now();
    let problem = s.to_problem()?;
    let params = theorem2_params(config.epsilon, &vec![s.mu; s.robot_count()], s.workspace.dim())?;
    let samples = params[0].grid.point_count().unwrap_or(u128::MAX).min(usize::MAX as u128) as usize;
    let roadmaps = build_roadmaps(&problem, &params)?;
    plan_on(&problem, roadmaps, config, samples, validate_steps, started)
}

/// Like [`plan_scenario`], but every robot uses `samples` with the recipe's
/// connection radius.
fn plan_with_samples(
    s: &ScenarioFile,
    config: &PlannerConfig,
    samples: &SampleSet,
    validate_steps: usize,
) -> Result<PlanOutcome> {
    let started = Instant::now();
    let problem = s.to_problem()?;
    let params = theorem2_params(config.epsilon, &vec![s.mu; s.robot_count()], s.workspace.dim())?;
    let radii: Vec<f64> = params.iter().map(|p| p.radius).collect();
    let sets = vec![samples.clone(); s.robot_count()];
    let roadmaps = build_roadmaps_from_samples(&problem, &sets, &radii)?;
    plan_on(&problem, roadmaps, config, samples.len(), validate_steps, started)
}

fn status_of(e: &Error) -> &'static str {
    match e {
        Error::Unreachable => "unreachable",
        Error::BudgetExhausted { .. } => "budget",
        Error::PlanningFailed(_) => "failed",
        _ => "error",
    }
}

/// One stretch value of a ratio sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scenario: String,
    pub epsilon: Stretch,
    pub samples: u64,
    pub cost: Option<f64>,
    pub reference: f64,
    pub lower_bound: bool,
    pub ratio: Option<f64>,
    pub runtime_s: f64,
    pub expansions: u64,
    pub success: bool,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub scenario: String,
    pub reference: f64,
    pub lower_bound: bool,
    pub rows: Vec<SweepRow>,
}

fn write_rows<T: Serialize>(rows: &[T], w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

fn read_rows<T: for<'de> Deserialize<'de>>(r: impl Read) -> Result<Vec<T>> {
    csv::Reader::from_reader(r).deserialize().map(|x| x.map_err(Error::from)).collect()
}

impl ExperimentResult {
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        write_rows(&self.rows, w)
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// Inverse of [`ExperimentResult::write_csv`]; needs at least one row.
    pub fn read_csv(r: impl Read) -> Result<Self> {
        let rows: Vec<SweepRow> = read_rows(r)?;
        let first = rows.first().ok_or_else(|| invalid("experiment CSV has no rows"))?;
        Ok(ExperimentResult {
            scenario: first.scenario.clone(),
            reference: first.reference,
            lower_bound: first.lower_bound,
            rows,
        })
    }
}

pub fn run_ratio_sweep(s: &ScenarioFile, config: &SweepConfig) -> Result<ExperimentResult> {
    run_ratio_sweep_with(s, config, |_| {})
}

/// Plan the scene at every stretch value of `config` and record
/// `cost / reference`. Planning failures become unsuccessful rows; rows are
/// returned in the order of `config.epsilons` whatever the execution order.
pub fn run_ratio_sweep_with(
    s: &ScenarioFile,
    config: &SweepConfig,
    on_row: impl Fn(&SweepRow) + Sync,
) -> Result<ExperimentResult> {
    if config.epsilons.is_empty() {
        return Err(invalid("need at least one stretch value"));
    }
    let reference = reference_cost(s)?;
    let cell = |&epsilon: &Stretch| -> Result<SweepRow> {
        let started = Instant::now();
        let outcome = plan_scenario(s, &config.planner(epsilon), config.validate_steps);
        let mut row = SweepRow {
            scenario: s.name.clone(),
            epsilon,
            samples: 0,
            cost: None,
            reference: reference.cost,
            lower_bound: reference.lower_bound,
            ratio: None,
            runtime_s: started.elapsed().as_secs_f64(),
            expansions: 0,
            success: false,
            status: String::new(),
        };
        match outcome {
            Ok(o) => {
                row.samples = o.samples as u64;
                row.cost = Some(o.path.cost);
                row.ratio = Some(o.path.cost / reference.cost);
                row.runtime_s = o.runtime.as_secs_f64();
                row.expansions = o.path.expansions as u64;
                row.success = o.validation.ok;
                row.status = if o.validation.ok { "ok" } else { "invalid_path" }.into();
            }
            Err(Error::InvalidInput(m)) => return Err(Error::InvalidInput(m)),
            Err(e) => row.status = status_of(&e).into(),
        }
        on_row(&row);
        Ok(row)
    };
    let rows: Result<Vec<SweepRow>> = if config.parallel {
        config.epsilons.par_iter().map(cell).collect()
    } else {
        config.epsilons.iter().map(cell).collect()
    };
    Ok(ExperimentResult {
        scenario: s.name.clone(),
        reference: reference.cost,
        lower_bound: reference.lower_bound,
        rows: rows?,
    })
}

/// Staggered grid against random samples of equal size at one stretch value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scenario: String,
    pub epsilon: Stretch,
    pub samples: u64,
    pub staggered_success: bool,
    pub staggered_cost: Option<f64>,
    pub trials: u32,
    pub random_successes: u32,
    pub random_success_rate: f64,
    /// Mean over successful random trials.
    pub random_mean_cost: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomComparison {
    pub scenario: String,
    pub seed: u64,
    pub rows: Vec<ComparisonRow>,
}

impl RandomComparison {
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        write_rows(&self.rows, w)
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

/// Seed of random trial `trial` at stretch index `k`.
fn trial_seed(base: u64, k: usize, trial: u32) -> u64 {
    base.wrapping_add(((k as u64) << 32) | trial as u64)
}

/// For each stretch value: one staggered-grid plan, then `trials` plans on
/// uniform random sample sets of the same size with the same connection
/// radius. All cells run concurrently and merge by (stretch, trial).
pub fn run_random_comparison(
    s: &ScenarioFile,
    config: &SweepConfig,
    trials: u32,
    seed: u64,
) -> Result<RandomComparison> {
    if config.epsilons.is_empty() {
        return Err(invalid("need at least one stretch value"));
    }
    if trials == 0 {
        return Err(invalid("need at least one random trial"));
    }
    let staggered: Vec<(usize, Option<f64>)> = config
        .epsilons
        .par_iter()
        .map(|&e| {
            let params = theorem2_params(e, &[s.mu], s.workspace.dim())?;
            let n = params[0].grid.point_count().unwrap_or(u128::MAX).min(usize::MAX as u128) as usize;
            let cost = match plan_scenario(s, &config.planner(e), config.validate_steps) {
                Ok(o) if o.validation.ok => Some(o.path.cost),
                Ok(_) => None,
                Err(Error::InvalidInput(m)) => return Err(Error::InvalidInput(m)),
                Err(_) => None,
            };
            Ok((n, cost))
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, u32)> = (0..config.epsilons.len()).flat_map(|k| (0..trials).map(move |t| (k, t))).collect();
    let random: Vec<Option<f64>> = jobs
        .par_iter()
        .map(|&(k, t)| {
            let samples = random_samples(staggered[k].0, s.mu, s.workspace.dim(), trial_seed(seed, k, t))?;
            Ok(match plan_with_samples(s, &config.planner(config.epsilons[k]), &samples, config.validate_steps) {
                Ok(o) if o.validation.ok => Some(o.path.cost),
                Ok(_) => None,
                Err(Error::InvalidInput(m)) => return Err(Error::InvalidInput(m)),
                Err(_) => None,
            })
        })
        .collect::<Result<_>>()?;
    let rows = config
        .epsilons
        .iter()
        .enumerate()
        .map(|(k, &epsilon)| {
            let costs: Vec<f64> =
                random[k * trials as usize..(k + 1) * trials as usize].iter().flatten().copied().collect();
            ComparisonRow {
                scenario: s.name.clone(),
                epsilon,
                samples: staggered[k].0 as u64,
                staggered_success: staggered[k].1.is_some(),
                staggered_cost: staggered[k].1,
                trials,
                random_successes: costs.len() as u32,
                random_success_rate: costs.len() as f64 / trials as f64,
                random_mean_cost: (!costs.is_empty()).then(|| costs.iter().sum::<f64>() / costs.len() as f64),
            }
        })
        .collect();
    Ok(RandomComparison { scenario: s.name.clone(), seed, rows })
}
