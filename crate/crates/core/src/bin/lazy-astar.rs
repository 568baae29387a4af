use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use lazy_astar::bench::config::split_list;
use lazy_astar::bench::report::{report_markdown, write_summary_csv};
use lazy_astar::bench::run::{load_instances, tile_heuristic, Instances};
use lazy_astar::bench::{
    csv_string, run_experiment, BenchError, ConfigError, DomainSpec, ExperimentConfig, HeuristicSpec,
    InstanceSource, StrategySpec,
};
use lazy_astar::domain::tile::{CostMode, TilePuzzle, TileState};
use lazy_astar::heuristic::pdb::{parse_partition, PatternDb, PdbOptions};
use lazy_astar::heuristic::Heuristic;
use lazy_astar::oracle::{compare_expansion_sets, uniform_cost_optimal};
use lazy_astar::search::{solve, Counters, SearchError, SearchOptions, SearchResult, StateSpace};
use lazy_astar::strategy::{CostModel, DecisionRule, Strategy};
use lazy_astar::Cost;

#[derive(Parser)]
#[command(name = "lazy-astar", version, about = "A* with lazy and rational evaluation of two heuristics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print the result and counters.
    Solve(SolveArgs),
    /// Run a config-driven sweep and write CSV, summary and markdown.
    Bench(BenchArgs),
    /// Build a pattern database and write it to a file.
    PdbBuild(PdbArgs),
    /// Check every strategy against the uniform-cost oracle.
    Verify(VerifyArgs),
}

/// Settings shared by the search subcommands; each overrides the config file.
#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Strategy name or comma-separated list, e.g. `lazy` or `max,rational-ratio+ob`.
    #[arg(long)]
    strategy: Option<String>,
    /// Decision rule for rational strategies: general, logopen or ratio.
    #[arg(long)]
    rule: Option<DecisionRule>,
    /// Use bounded lookahead of this depth as h2.
    #[arg(long)]
    lookahead: Option<Cost>,
    /// Seed for generated instances.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "cost-model")]
    cost_model: Option<CostModel>,
    #[arg(long)]
    h1: Option<HeuristicSpec>,
    #[arg(long)]
    h2: Option<HeuristicSpec>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    /// Tiles in row-major order with 0 for the blank, e.g. "1 4 2 3 0 5 6 7 8".
    #[arg(long)]
    tiles: Option<String>,
    #[arg(long, default_value_t = 3)]
    width: usize,
    #[arg(long, default_value_t = 3)]
    height: usize,
    /// Operator costs: unit or weighted.
    #[arg(long)]
    cost: Option<String>,
    /// Which configured or generated instance to solve.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Write the solution path, one state per line.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    /// Per-instance CSV; the summary goes next to it as `.summary.csv` and
    /// the markdown report as `.md`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PdbArgs {
    /// Pattern tiles, e.g. "1,2,3,4".
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = 4)]
    width: usize,
    #[arg(long, default_value_t = 4)]
    height: usize,
    #[arg(long, default_value = "unit")]
    cost: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 64 << 20)]
    max_entries: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Node cap for the uniform-cost oracle per instance.
    #[arg(long, default_value_t = 20_000_000)]
    oracle_cap: u64,
    /// Write a per-instance report.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Run(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Config(c) => Failure::Config(c.to_string()),
            BenchError::Instances(_) | BenchError::SourceMismatch => Failure::Config(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::PdbBuild(a) => cmd_pdb_build(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("config error: {m}");
            ExitCode::from(2)
        }
    }
}

fn parse_cost(text: &str) -> Result<CostMode, Failure> {
    match text {
        "unit" => Ok(CostMode::Unit),
        "weighted" | "tile" | "tile-number" => Ok(CostMode::TileNumber),
        other => Err(Failure::Config(format!("unknown cost `{other}`, expected unit or weighted"))),
    }
}

fn build_config(c: &Common, default_strategies: &[&str]) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &c.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = &c.strategy {
        cfg.strategy_names = split_list(s);
        if let Some(b) = &cfg.baseline {
            let labels = cfg.strategies()?;
            if !labels.iter().any(|l| &l.label == b) {
                cfg.baseline = None;
            }
        }
    }
    if cfg.strategy_names.is_empty() {
        cfg.strategy_names = default_strategies.iter().map(|s| s.to_string()).collect();
    }
    if let Some(r) = c.rule {
        cfg.rule = r;
    }
    if let Some(h) = &c.h1 {
        cfg.h1 = h.clone();
    }
    if let Some(h) = &c.h2 {
        cfg.h2 = h.clone();
    }
    if let Some(d) = c.lookahead {
        cfg.h2 = HeuristicSpec::Lookahead(d);
    }
    if let Some(m) = c.cost_model {
        cfg.cost_model = m;
    }
    if let Some(seed) = c.seed {
        if let InstanceSource::Generated { seed: s, .. } = &mut cfg.instances {
            *s = seed;
        } else {
            return Err(Failure::Config("--seed needs generated instances".into()));
        }
    }
    Ok(cfg)
}

fn options(cfg: &ExperimentConfig, spec: &StrategySpec) -> SearchOptions {
    SearchOptions {
        enhancements: spec.enhancements,
        tie: cfg.tie.clone(),
        limits: cfg.limits,
        ..SearchOptions::default()
    }
}

fn print_result<S: std::fmt::Debug>(label: &str, outcome: &Result<SearchResult<S>, SearchError>) -> bool {
    match outcome {
        Ok(r) => {
            println!("{label}: cost {} in {} steps", r.cost, r.path.len().saturating_sub(1));
            print_counters(&r.counters);
            true
        }
        Err(e) => {
            println!("{label}: {e}");
            if let Some(c) = e.counters() {
                print_counters(c);
            }
            false
        }
    }
}

fn print_counters(c: &Counters) {
    let line: Vec<String> = Counters::NAMES
        .iter()
        .zip(c.values())
        .map(|(n, v)| format!("{n}={v}"))
        .collect();
    println!("  {}", line.join(" "));
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let mut cfg = build_config(&a.common, &["lazy"])?;
    if let Some(tiles) = &a.tiles {
        let cost = match (&a.cost, &cfg.domain) {
            (Some(c), _) => parse_cost(c)?,
            (None, DomainSpec::Tile { cost, .. }) => *cost,
            (None, DomainSpec::Tree(_)) => CostMode::Unit,
        };
        let state = lazy_astar::domain::parse_instances(tiles, a.width, a.height)
            .map_err(|e| Failure::Config(e.to_string()))?;
        let [state] = state[..] else {
            return Err(Failure::Config("--tiles must hold exactly one instance".into()));
        };
        cfg.domain = DomainSpec::Tile {
            width: a.width,
            height: a.height,
            cost,
        };
        return solve_tiles(&cfg, &[state], cost, a.out.as_deref());
    }
    if let (Some(c), DomainSpec::Tile { cost, .. }) = (&a.cost, &mut cfg.domain) {
        *cost = parse_cost(c)?;
    }
    cfg.validate()?;
    match load_instances(&cfg)? {
        Instances::Tile { states, cost } => {
            let state = *states
                .get(a.index)
                .ok_or_else(|| Failure::Config(format!("no instance {}", a.index)))?;
            solve_tiles(&cfg, &[state], cost, a.out.as_deref())
        }
        Instances::Tree(trees) => {
            let tree = trees
                .get(a.index)
                .ok_or_else(|| Failure::Config(format!("no instance {}", a.index)))?;
            let pick = |h: &HeuristicSpec| -> Arc<dyn Heuristic<usize>> {
                match h {
                    HeuristicSpec::TreeH1 => Arc::new(tree.h1()),
                    _ => Arc::new(tree.h2()),
                }
            };
            let (h1, h2) = (pick(&cfg.h1), pick(&cfg.h2));
            println!("tree with {} nodes, optimal cost {:?}", tree.node_count(), tree.optimal_cost());
            let mut ok = true;
            for spec in cfg.strategies()? {
                let r = solve(tree, &*h1, &*h2, &spec.strategy, &options(&cfg, &spec));
                ok &= print_result(&spec.label, &r);
            }
            Ok(ok)
        }
    }
}

fn solve_tiles(cfg: &ExperimentConfig, states: &[TileState], cost: CostMode, out: Option<&Path>) -> Outcome {
    cfg.validate()?;
    let (w, h) = (states[0].width(), states[0].height());
    let pdb = PdbOptions {
        max_entries: cfg.pdb_max_entries,
    };
    let h1 = tile_heuristic(&cfg.h1, w, h, cost, &pdb)?;
    let h2 = tile_heuristic(&cfg.h2, w, h, cost, &pdb)?;
    let mut ok = true;
    for state in states {
        println!("start {state}  h1={} ({}) h2={} ({})", h1.evaluate(state), h1.label(), h2.evaluate(state), h2.label());
        let puzzle = TilePuzzle::new(*state, cost);
        let mut last_path = None;
        for spec in cfg.strategies()? {
            let r = solve(&puzzle, &*h1, &*h2, &spec.strategy, &options(cfg, &spec));
            ok &= print_result(&spec.label, &r);
            if let Ok(r) = r {
                last_path = Some(r.path);
            }
        }
        if let (Some(path), Some(out)) = (last_path, out) {
            let text: String = path.iter().map(|s| format!("{s}\n")).collect();
            fs::write(out, text).map_err(|e| Failure::Run(format!("{}: {e}", out.display())))?;
        }
    }
    Ok(ok)
}

fn sibling(path: &Path, extension: &str) -> PathBuf {
    path.with_extension(extension)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Run(format!("{}: {e}", path.display())))
}

fn cmd_bench(a: BenchArgs) -> Outcome {
    let mut cfg = build_config(&a.common, &[])?;
    if a.out.is_some() {
        cfg.csv = a.out.clone();
    }
    let report = run_experiment(&cfg)?;
    let csv = csv_string(&report.rows)?;
    let mut summary = Vec::new();
    write_summary_csv(&report.aggregates, &mut summary)?;
    let summary = String::from_utf8(summary).expect("csv output is utf-8");
    let markdown = report_markdown(&report.rows, &report.aggregates, &report.baseline)?;
    match &cfg.csv {
        Some(path) => {
            write_file(path, &csv)?;
            write_file(&sibling(path, "summary.csv"), &summary)?;
            let md = cfg.markdown.clone().unwrap_or_else(|| sibling(path, "md"));
            write_file(&md, &markdown)?;
            eprintln!("wrote {} rows to {}", report.rows.len(), path.display());
        }
        None => match &cfg.markdown {
            Some(md) => write_file(md, &markdown)?,
            None => print!("{markdown}"),
        },
    }
    if cfg.csv.is_some() {
        print!("{}", lazy_astar::bench::emit_markdown(&summary)?);
    }
    Ok(report.all_ok())
}

fn cmd_pdb_build(a: PdbArgs) -> Outcome {
    let cost = parse_cost(&a.cost)?;
    let parts = parse_partition(&a.pattern).ok_or_else(|| Failure::Config(format!("bad pattern `{}`", a.pattern)))?;
    let [pattern] = &parts[..] else {
        return Err(Failure::Config("pdb-build takes a single pattern".into()));
    };
    let options = PdbOptions {
        max_entries: a.max_entries,
    };
    let pdb = PatternDb::build(a.width, a.height, cost, pattern, &options).map_err(|e| match e {
        lazy_astar::heuristic::pdb::PdbError::Io(_) => Failure::Run(e.to_string()),
        other => Failure::Config(other.to_string()),
    })?;
    pdb.save(&a.out).map_err(|e| Failure::Run(e.to_string()))?;
    println!(
        "{}: {} entries ({} unreached) written to {}",
        pdb.label(),
        pdb.len(),
        pdb.unreached(),
        a.out.display()
    );
    Ok(true)
}

struct Verified {
    lines: Vec<String>,
    ok: bool,
}

fn verify_instance<P>(
    cfg: &ExperimentConfig,
    strategies: &[StrategySpec],
    index: usize,
    space: &P,
    h1: &dyn Heuristic<P::State>,
    h2: &dyn Heuristic<P::State>,
    cap: u64,
) -> Verified
where
    P: StateSpace,
    P::State: Ord,
{
    let mut lines = Vec::new();
    let optimal = match uniform_cost_optimal(space, Some(cap)) {
        Ok(c) => c,
        Err(e) => {
            return Verified {
                lines: vec![format!("instance {index}: oracle failed: {e}")],
                ok: false,
            }
        }
    };
    let mut ok = true;
    for spec in strategies {
        if spec.enhancements.heuristic_bypass && !(h1.is_consistent() && h2.is_consistent()) {
            continue;
        }
        match solve(space, h1, h2, &spec.strategy, &options(cfg, spec)) {
            Ok(r) if r.cost == optimal => {}
            Ok(r) => {
                ok = false;
                lines.push(format!("instance {index}: {} cost {} != optimal {optimal}", spec.label, r.cost));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("instance {index}: {}: {e}", spec.label));
            }
        }
    }
    let plain = SearchOptions::default();
    if let (Ok(lazy), Ok(max)) = (
        solve(space, h1, h2, &Strategy::Lazy, &plain),
        solve(space, h1, h2, &Strategy::AStarMax, &plain),
    ) {
        let sets = compare_expansion_sets(&lazy, &max).map(|r| r.pass()).unwrap_or(false);
        let identity = lazy.counters.h2_evals + lazy.counters.sg == max.counters.h2_evals;
        if !sets || !identity {
            ok = false;
            lines.push(format!("instance {index}: lazy/max equivalence failed (sets {sets}, h2 identity {identity})"));
        }
    }
    if ok {
        lines.push(format!("instance {index}: ok, optimal cost {optimal}"));
    }
    Verified { lines, ok }
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let all = [
        "h1", "h2", "max", "lazy", "lazy+ob", "lazy+hbp", "rational-general", "rational-logopen",
        "rational-ratio", "rational-ratio+ob", "rational-compute", "rational-bypass",
    ];
    let cfg = build_config(&a.common, &all)?;
    cfg.validate()?;
    let strategies = cfg.strategies()?;
    let results: Vec<Verified> = match load_instances(&cfg)? {
        Instances::Tile { states, cost } => {
            let (w, h) = (states[0].width(), states[0].height());
            let pdb = PdbOptions {
                max_entries: cfg.pdb_max_entries,
            };
            let h1 = tile_heuristic(&cfg.h1, w, h, cost, &pdb)?;
            let h2 = tile_heuristic(&cfg.h2, w, h, cost, &pdb)?;
            states
                .iter()
                .enumerate()
                .map(|(i, s)| verify_instance(&cfg, &strategies, i, &TilePuzzle::new(*s, cost), &*h1, &*h2, a.oracle_cap))
                .collect()
        }
        Instances::Tree(trees) => trees
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let (h1, h2) = (t.h1(), t.h2());
                verify_instance(&cfg, &strategies, i, t, &h1, &h2, a.oracle_cap)
            })
            .collect(),
    };
    let text: String = results.iter().flat_map(|r| &r.lines).map(|l| format!("{l}\n")).collect();
    let failed = results.iter().filter(|r| !r.ok).count();
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    println!("verify: {} instances, {failed} failed", results.len());
    Ok(failed == 0)
}
