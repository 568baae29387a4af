//! Running a configured experiment.

use std::fs;
use std::io;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::domain::instances::{parse_instances, ParseError};
use crate::domain::tile::{random_instances, CostMode, TilePuzzle, TileRules, TileState};
use crate::domain::tree::{SyntheticTree, TreeConfig, TreeError};
use crate::heuristic::lookahead::Lookahead;
use crate::heuristic::manhattan::{AxisDistance, WeightedManhattan};
use crate::heuristic::pdb::{default_partition, AdditivePdb, PdbError, PdbOptions};
use crate::heuristic::{Heuristic, Timed, Zero};
use crate::search::{solve, Counters, SearchError, SearchOptions, StateSpace};
use crate::strategy::Strategy;
use crate::Cost;

use super::config::{ConfigError, DomainSpec, ExperimentConfig, HeuristicSpec, InstanceSource, StrategySpec};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("instance file: {0}")]
    Instances(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error(transparent)]
    Pdb(#[from] PdbError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("instance source does not apply to this domain")]
    SourceMismatch,
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    NoSolution,
    Limit,
    Invalid,
}

impl RowStatus {
    pub fn name(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::NoSolution => "no-solution",
            RowStatus::Limit => "limit",
            RowStatus::Invalid => "invalid",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        [RowStatus::Ok, RowStatus::NoSolution, RowStatus::Limit, RowStatus::Invalid]
            .into_iter()
            .find(|s| s.name() == text)
    }
}

/// One (instance, strategy) result.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub instance: usize,
    pub strategy: String,
    pub rule: String,
    pub status: RowStatus,
    pub cost: Option<Cost>,
    pub counters: Counters,
    /// Abstract time from the configured cost model; deterministic.
    pub model_time: f64,
    pub wall_ms: f64,
}

/// Per-strategy totals.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub strategy: String,
    pub solved: usize,
    pub instances: usize,
    pub totals: Counters,
    pub mean_generated: f64,
    pub model_time: f64,
    /// Geometric mean over instances of model time relative to the baseline.
    pub relative_model_time: f64,
    /// Geometric mean of wall time relative to the baseline.
    pub relative_wall: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<Row>,
    pub aggregates: Vec<Aggregate>,
    pub baseline: String,
}

impl ExperimentReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Ok)
    }

    pub fn rows_for<'a>(&'a self, strategy: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.strategy == strategy)
    }
}

/// Instances ready to search.
pub enum Instances {
    Tile { states: Vec<TileState>, cost: CostMode },
    Tree(Vec<SyntheticTree>),
}

impl Instances {
    pub fn len(&self) -> usize {
        match self {
            Instances::Tile { states, .. } => states.len(),
            Instances::Tree(trees) => trees.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn load_instances(cfg: &ExperimentConfig) -> Result<Instances, BenchError> {
    match (&cfg.domain, &cfg.instances) {
        (DomainSpec::Tile { width, height, cost }, InstanceSource::Generated { seed, count, walk }) => {
            let states = random_instances(*width, *height, *seed, *count, *walk)
                .map_err(|e| ConfigError::Invalid(e.to_string()))?;
            Ok(Instances::Tile { states, cost: *cost })
        }
        (DomainSpec::Tile { width, height, cost }, InstanceSource::File(path)) => {
            let text = fs::read_to_string(path).map_err(|source| BenchError::Read {
                path: path.display().to_string(),
                source,
            })?;
            let states = parse_instances(&text, *width, *height)?;
            if states.is_empty() {
                return Err(ConfigError::Invalid("instance list is empty".into()).into());
            }
            Ok(Instances::Tile { states, cost: *cost })
        }
        (DomainSpec::Tree(tree), InstanceSource::Generated { seed, count, .. }) => {
            let trees = (0..*count as u64)
                .map(|i| {
                    SyntheticTree::generate(&TreeConfig {
                        seed: tree.seed.wrapping_add(*seed).wrapping_add(i),
                        ..*tree
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Instances::Tree(trees))
        }
        (DomainSpec::Tree(_), InstanceSource::File(_)) => Err(BenchError::SourceMismatch),
    }
}

type TileHeuristic = Arc<dyn Heuristic<TileState>>;

/// Builds a tile heuristic from its spec.
pub fn tile_heuristic(
    spec: &HeuristicSpec,
    width: usize,
    height: usize,
    cost: CostMode,
    pdb: &PdbOptions,
) -> Result<TileHeuristic, BenchError> {
    Ok(match spec {
        HeuristicSpec::Zero => Arc::new(Zero),
        HeuristicSpec::Manhattan => Arc::new(WeightedManhattan::new(width, height, cost)),
        HeuristicSpec::Md => Arc::new(WeightedManhattan::unit(width, height)),
        HeuristicSpec::Wmd => Arc::new(WeightedManhattan::tile_number(width, height)),
        HeuristicSpec::Dx => Arc::new(AxisDistance::columns(width, height).weighted(cost)),
        HeuristicSpec::Dy => Arc::new(AxisDistance::rows(width, height).weighted(cost)),
        HeuristicSpec::Lookahead(d) => Arc::new(Lookahead::new(
            TileRules::new(width, height, cost),
            WeightedManhattan::new(width, height, cost),
            *d,
        )),
        HeuristicSpec::Pdb(parts) => {
            let parts = parts.clone().unwrap_or_else(|| default_partition(width, height));
            Arc::new(AdditivePdb::build(width, height, cost, &parts, pdb)?)
        }
        HeuristicSpec::TreeH1 | HeuristicSpec::TreeH2 => {
            return Err(ConfigError::Invalid("tree heuristics need the tree domain".into()).into())
        }
    })
}

fn with_delay<S: 'static>(
    h: Arc<dyn Heuristic<S>>,
    delay: std::time::Duration,
    spin: bool,
) -> Arc<dyn Heuristic<S>> {
    if delay.is_zero() {
        h
    } else if spin {
        Arc::new(Timed::spinning(h, delay))
    } else {
        Arc::new(Timed::new(h, delay))
    }
}

/// Runs every strategy on every instance. Instances run in parallel; rows
/// come back in instance order, strategies in configured order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, BenchError> {
    cfg.validate()?;
    let strategies = cfg.strategies()?;
    let instances = load_instances(cfg)?;
    if instances.is_empty() {
        return Err(ConfigError::Invalid("instance list is empty".into()).into());
    }
    let rows: Vec<Row> = match &instances {
        Instances::Tile { states, cost } => {
            let (w, h) = (states[0].width(), states[0].height());
            let pdb = PdbOptions {
                max_entries: cfg.pdb_max_entries,
            };
            let h1 = with_delay(tile_heuristic(&cfg.h1, w, h, *cost, &pdb)?, cfg.h1_delay, cfg.spin_delays);
            let h2 = with_delay(tile_heuristic(&cfg.h2, w, h, *cost, &pdb)?, cfg.h2_delay, cfg.spin_delays);
            states
                .par_iter()
                .enumerate()
                .map(|(i, s)| run_instance(cfg, &strategies, i, &TilePuzzle::new(*s, *cost), &*h1, &*h2))
                .flatten()
                .collect()
        }
        Instances::Tree(trees) => trees
            .par_iter()
            .enumerate()
            .map(|(i, tree)| {
                let pick = |spec: &HeuristicSpec| -> Arc<dyn Heuristic<usize>> {
                    match spec {
                        HeuristicSpec::TreeH1 => Arc::new(tree.h1()),
                        HeuristicSpec::TreeH2 => Arc::new(tree.h2()),
                        _ => Arc::new(Zero),
                    }
                };
                let h1 = with_delay(pick(&cfg.h1), cfg.h1_delay, cfg.spin_delays);
                let h2 = with_delay(pick(&cfg.h2), cfg.h2_delay, cfg.spin_delays);
                run_instance(cfg, &strategies, i, tree, &*h1, &*h2)
            })
            .flatten()
            .collect(),
    };
    let baseline = cfg
        .baseline
        .clone()
        .unwrap_or_else(|| strategies[0].label.clone());
    let aggregates = aggregate(&rows, &strategies, &baseline, instances.len());
    Ok(ExperimentReport {
        rows,
        aggregates,
        baseline,
    })
}

/// Runs every strategy on one instance.
pub fn run_instance<P: StateSpace>(
    cfg: &ExperimentConfig,
    strategies: &[StrategySpec],
    index: usize,
    space: &P,
    h1: &dyn Heuristic<P::State>,
    h2: &dyn Heuristic<P::State>,
) -> Vec<Row> {
    strategies
        .iter()
        .map(|spec| {
            let options = SearchOptions {
                enhancements: spec.enhancements,
                tie: cfg.tie.clone(),
                limits: cfg.limits,
                trace: false,
                measure_times: false,
            };
            let start = Instant::now();
            let outcome = solve(space, h1, h2, &spec.strategy, &options);
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let (status, cost, counters) = match outcome {
                Ok(r) => (RowStatus::Ok, Some(r.cost), r.counters),
                Err(SearchError::NoSolution { counters }) => (RowStatus::NoSolution, None, counters),
                Err(SearchError::ResourceLimit { counters, .. }) => (RowStatus::Limit, None, counters),
                Err(SearchError::InvalidCostModel) => (RowStatus::Invalid, None, Counters::default()),
            };
            let rule = match spec.strategy {
                Strategy::RationalLazy(r) => r.policy.name().to_string(),
                _ => "-".to_string(),
            };
            Row {
                instance: index,
                strategy: spec.label.clone(),
                rule,
                status,
                cost,
                model_time: cfg.cost_model.model_time(&counters),
                counters,
                wall_ms,
            }
        })
        .collect()
}

fn geometric_mean(ratios: &[f64]) -> f64 {
    if ratios.is_empty() {
        return f64::NAN;
    }
    (ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64).exp()
}

/// Per-strategy sums and geometric-mean times relative to `baseline`. The
/// baseline's own relative times are exactly 1.
pub fn aggregate(rows: &[Row], strategies: &[StrategySpec], baseline: &str, instances: usize) -> Vec<Aggregate> {
    let base_of = |i: usize| {
        rows.iter()
            .find(|r| r.instance == i && r.strategy == baseline && r.status == RowStatus::Ok)
    };
    strategies
        .iter()
        .map(|spec| {
            let mine: Vec<&Row> = rows.iter().filter(|r| r.strategy == spec.label).collect();
            let mut totals = Counters::default();
            let mut model_time = 0.0;
            let mut rel_model = Vec::new();
            let mut rel_wall = Vec::new();
            for r in &mine {
                totals += &r.counters;
                model_time += r.model_time;
                if r.status != RowStatus::Ok {
                    continue;
                }
                if let Some(b) = base_of(r.instance) {
                    if r.model_time > 0.0 && b.model_time > 0.0 {
                        rel_model.push(r.model_time / b.model_time);
                    }
                    if r.wall_ms > 0.0 && b.wall_ms > 0.0 {
                        rel_wall.push(r.wall_ms / b.wall_ms);
                    }
                }
            }
            let is_base = spec.label == baseline;
            Aggregate {
                strategy: spec.label.clone(),
                solved: mine.iter().filter(|r| r.status == RowStatus::Ok).count(),
                instances,
                totals,
                mean_generated: totals.generated as f64 / instances.max(1) as f64,
                model_time,
                relative_model_time: if is_base { 1.0 } else { geometric_mean(&rel_model) },
                relative_wall: if is_base { 1.0 } else { geometric_mean(&rel_wall) },
            }
        })
        .collect()
}
