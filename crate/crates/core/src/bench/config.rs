//! Experiment configuration: `[section]` headers and `key = value` lines.
//!
//! ```text
//! [domain]
//! kind = tile            # tile | tree
//! width = 3
//! height = 3
//! cost = weighted        # unit | weighted
//!
//! [instances]
//! source = generated     # generated | file
//! seed = 1
//! count = 20
//! walk = 40
//!
//! [heuristics]
//! h1 = wmd
//! h2 = lookahead:4
//! h2_delay_us = 0
//!
//! [search]
//! strategies = max, lazy, rational+ob
//! rule = ratio
//! tie = h,-g,fifo
//!
//! [cost_model]
//! spec = fixed:t1=1,t2=10,to=0.1,tc=0,tau=0
//!
//! [output]
//! csv = results.csv
//! markdown = results.md
//! baseline = max
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::domain::tile::CostMode;
use crate::domain::tree::{ErrorModel, TreeConfig};
use crate::heuristic::pdb::parse_partition;
use crate::search::{Limits, TieBreakRule};
use crate::strategy::{
    CostModel, DecisionPolicy, DecisionRule, Enhancements, PhEstimator, PhModel, RationalConfig,
    Strategy,
};
use crate::Cost;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("[{section}] {key}: {message}")]
    Value {
        section: String,
        key: String,
        message: String,
    },
    #[error("[{section}] unknown key `{key}`")]
    UnknownKey { section: String, key: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// The state space instances are drawn from.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    Tile {
        width: usize,
        height: usize,
        cost: CostMode,
    },
    Tree(TreeConfig),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    Generated { seed: u64, count: usize, walk: usize },
    File(PathBuf),
}

/// A heuristic by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeuristicSpec {
    Zero,
    /// Manhattan distance weighted like the domain's operators.
    Manhattan,
    /// Unit-weight Manhattan distance.
    Md,
    /// Tile-number-weighted Manhattan distance.
    Wmd,
    Dx,
    Dy,
    Lookahead(Cost),
    /// Additive databases over the given patterns (`None`: default split).
    Pdb(Option<Vec<Vec<u8>>>),
    TreeH1,
    TreeH2,
}

impl FromStr for HeuristicSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "zero" => HeuristicSpec::Zero,
            "manhattan" => HeuristicSpec::Manhattan,
            "md" => HeuristicSpec::Md,
            "wmd" => HeuristicSpec::Wmd,
            "dx" => HeuristicSpec::Dx,
            "dy" => HeuristicSpec::Dy,
            "pdb" => HeuristicSpec::Pdb(None),
            "tree-h1" => HeuristicSpec::TreeH1,
            "tree-h2" => HeuristicSpec::TreeH2,
            _ => {
                if let Some(d) = s.strip_prefix("lookahead:") {
                    let d = d.parse().map_err(|_| format!("bad lookahead depth `{d}`"))?;
                    HeuristicSpec::Lookahead(d)
                } else if let Some(p) = s.strip_prefix("pdb:") {
                    let parts = parse_partition(p).ok_or_else(|| format!("bad pattern list `{p}`"))?;
                    HeuristicSpec::Pdb(Some(parts))
                } else {
                    return Err(format!("unknown heuristic `{s}`"));
                }
            }
        })
    }
}

impl HeuristicSpec {
    fn fits(&self, domain: &DomainSpec) -> bool {
        match (self, domain) {
            (HeuristicSpec::Zero, _) => true,
            (HeuristicSpec::TreeH1 | HeuristicSpec::TreeH2, d) => matches!(d, DomainSpec::Tree(_)),
            (_, d) => matches!(d, DomainSpec::Tile { .. }),
        }
    }
}

/// A strategy column: strategy, enhancements and display label.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategySpec {
    pub label: String,
    pub strategy: Strategy,
    pub enhancements: Enhancements,
}

impl StrategySpec {
    /// Parses `lazy`, `rational-logopen+ob+hbp` and similar. A bare
    /// `rational` takes `default_rule`.
    pub fn parse(
        text: &str,
        default_rule: DecisionRule,
        rational: impl Fn(DecisionPolicy) -> RationalConfig,
    ) -> Result<Self, String> {
        let text = text.trim();
        let mut pieces = text.split('+');
        let base = pieces.next().unwrap_or_default().trim();
        let mut enhancements = Enhancements::NONE;
        for p in pieces {
            match p.trim() {
                "ob" => enhancements.open_bypass = true,
                "hbp" => enhancements.heuristic_bypass = true,
                other => return Err(format!("unknown enhancement `{other}`")),
            }
        }
        let strategy = match base {
            "h1" => Strategy::AStarH1,
            "h2" => Strategy::AStarH2,
            "max" => Strategy::AStarMax,
            "lazy" => Strategy::Lazy,
            "rational" => Strategy::RationalLazy(rational(DecisionPolicy::Rule(default_rule))),
            _ => match base.strip_prefix("rational-") {
                Some("compute") => Strategy::RationalLazy(rational(DecisionPolicy::AlwaysCompute)),
                Some("bypass") => Strategy::RationalLazy(rational(DecisionPolicy::AlwaysBypass)),
                Some(rule) => Strategy::RationalLazy(rational(DecisionPolicy::Rule(rule.parse()?))),
                None => return Err(format!("unknown strategy `{base}`")),
            },
        };
        Ok(StrategySpec {
            label: format!("{strategy}{}", enhancements.suffix()),
            strategy,
            enhancements,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub domain: DomainSpec,
    pub instances: InstanceSource,
    pub h1: HeuristicSpec,
    pub h2: HeuristicSpec,
    pub h1_delay: Duration,
    pub h2_delay: Duration,
    /// Busy-wait for the delays instead of only charging them.
    pub spin_delays: bool,
    pub pdb_max_entries: u64,
    /// Strategy names such as `lazy` or `rational-ratio+ob`.
    pub strategy_names: Vec<String>,
    pub rule: DecisionRule,
    pub tie: TieBreakRule,
    pub limits: Limits,
    pub cost_model: CostModel,
    pub ph_k: f64,
    pub ph_init: f64,
    pub csv: Option<PathBuf>,
    pub markdown: Option<PathBuf>,
    pub baseline: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            domain: DomainSpec::Tile {
                width: 3,
                height: 3,
                cost: CostMode::Unit,
            },
            instances: InstanceSource::Generated {
                seed: 1,
                count: 10,
                walk: 40,
            },
            h1: HeuristicSpec::Manhattan,
            h2: HeuristicSpec::Lookahead(2),
            h1_delay: Duration::ZERO,
            h2_delay: Duration::ZERO,
            spin_delays: false,
            pdb_max_entries: 64 << 20,
            strategy_names: Vec::new(),
            rule: DecisionRule::Ratio,
            tie: TieBreakRule::default(),
            limits: Limits::default(),
            cost_model: CostModel::default(),
            ph_k: 1000.0,
            ph_init: 0.5,
            csv: None,
            markdown: None,
            baseline: None,
        }
    }
}

/// Splits a comma-separated list, dropping empty items.
pub fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

type Sections = BTreeMap<String, BTreeMap<String, (usize, String)>>;

fn split_sections(text: &str) -> Result<Sections, ConfigError> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or_default().trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let name = name.trim().to_string();
            sections.entry(name.clone()).or_default();
            current = Some(name);
            continue;
        }
        let Some(section) = current.as_ref() else {
            return Err(ConfigError::Syntax {
                line,
                message: "key outside of a section".into(),
            });
        };
        let Some((key, value)) = body.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                message: format!("expected `key = value`, found `{body}`"),
            });
        };
        sections
            .get_mut(section)
            .expect("section inserted above")
            .insert(key.trim().to_string(), (line, value.trim().to_string()));
    }
    Ok(sections)
}

/// Key lookup that records which keys were consumed.
struct Reader {
    sections: Sections,
}

impl Reader {
    fn take(&mut self, section: &str, key: &str) -> Option<String> {
        self.sections.get_mut(section)?.remove(key).map(|(_, v)| v)
    }

    fn parse<T: FromStr>(&mut self, section: &str, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: std::fmt::Display,
    {
        match self.take(section, key) {
            None => Ok(None),
            Some(v) => v.parse::<T>().map(Some).map_err(|e| ConfigError::Value {
                section: section.into(),
                key: key.into(),
                message: e.to_string(),
            }),
        }
    }

    fn value_error(section: &str, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError::Value {
            section: section.into(),
            key: key.into(),
            message: message.into(),
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        for (section, keys) in self.sections {
            if let Some(key) = keys.into_keys().next() {
                return Err(ConfigError::UnknownKey { section, key });
            }
        }
        Ok(())
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::parse_relative(text, None)
    }

    /// Reads and parses a file; relative paths inside resolve against the
    /// file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse_relative(&text, path.parent())
    }

    fn parse_relative(text: &str, base: Option<&Path>) -> Result<Self, ConfigError> {
        let mut r = Reader {
            sections: split_sections(text)?,
        };
        let mut cfg = ExperimentConfig::default();
        let resolve = |p: String| -> PathBuf {
            let p = PathBuf::from(p);
            match base {
                Some(b) if p.is_relative() => b.join(p),
                _ => p,
            }
        };

        let kind = r.take("domain", "kind").unwrap_or_else(|| "tile".into());
        cfg.domain = match kind.as_str() {
            "tile" => {
                let width = r.parse("domain", "width")?.unwrap_or(3);
                let height = r.parse("domain", "height")?.unwrap_or(width);
                let cost = match r.take("domain", "cost").as_deref() {
                    None | Some("unit") => CostMode::Unit,
                    Some("weighted") | Some("tile") => CostMode::TileNumber,
                    Some(other) => {
                        return Err(Reader::value_error("domain", "cost", format!("unknown cost `{other}`")))
                    }
                };
                DomainSpec::Tile { width, height, cost }
            }
            "tree" => {
                let d = TreeConfig::default();
                DomainSpec::Tree(TreeConfig {
                    branching: r.parse("domain", "branching")?.unwrap_or(d.branching),
                    depth: r.parse("domain", "depth")?.unwrap_or(d.depth),
                    seed: r.parse("domain", "tree_seed")?.unwrap_or(d.seed),
                    min_cost: r.parse("domain", "min_cost")?.unwrap_or(d.min_cost),
                    max_cost: r.parse("domain", "max_cost")?.unwrap_or(d.max_cost),
                    goal_prob: r.parse("domain", "goal_prob")?.unwrap_or(d.goal_prob),
                    h1: ErrorModel {
                        scale: r.parse("domain", "h1_scale")?.unwrap_or(d.h1.scale),
                        noise: r.parse("domain", "h1_noise")?.unwrap_or(d.h1.noise),
                    },
                    h2: ErrorModel {
                        scale: r.parse("domain", "h2_scale")?.unwrap_or(d.h2.scale),
                        noise: r.parse("domain", "h2_noise")?.unwrap_or(d.h2.noise),
                    },
                    dead_estimate: r.parse("domain", "dead_estimate")?.unwrap_or(d.dead_estimate),
                })
            }
            other => return Err(Reader::value_error("domain", "kind", format!("unknown domain `{other}`"))),
        };

        let source = r.take("instances", "source").unwrap_or_else(|| "generated".into());
        cfg.instances = match source.as_str() {
            "generated" => InstanceSource::Generated {
                seed: r.parse("instances", "seed")?.unwrap_or(1),
                count: r.parse("instances", "count")?.unwrap_or(10),
                walk: r.parse("instances", "walk")?.unwrap_or(40),
            },
            "file" => {
                let path = r
                    .take("instances", "file")
                    .ok_or_else(|| Reader::value_error("instances", "file", "required when source = file"))?;
                InstanceSource::File(resolve(path))
            }
            other => {
                return Err(Reader::value_error("instances", "source", format!("unknown source `{other}`")))
            }
        };

        if let DomainSpec::Tree(_) = cfg.domain {
            cfg.h1 = HeuristicSpec::TreeH1;
            cfg.h2 = HeuristicSpec::TreeH2;
        }
        if let Some(h) = r.parse("heuristics", "h1")? {
            cfg.h1 = h;
        }
        if let Some(h) = r.parse("heuristics", "h2")? {
            cfg.h2 = h;
        }
        if let Some(us) = r.parse::<u64>("heuristics", "h1_delay_us")? {
            cfg.h1_delay = Duration::from_micros(us);
        }
        if let Some(us) = r.parse::<u64>("heuristics", "h2_delay_us")? {
            cfg.h2_delay = Duration::from_micros(us);
        }
        if let Some(spin) = r.parse("heuristics", "spin_delays")? {
            cfg.spin_delays = spin;
        }
        if let Some(cap) = r.parse("heuristics", "pdb_max_entries")? {
            cfg.pdb_max_entries = cap;
        }

        if let Some(rule) = r.parse("search", "rule")? {
            cfg.rule = rule;
        }
        if let Some(tie) = r.take("search", "tie") {
            cfg.tie = TieBreakRule::parse(&tie)
                .ok_or_else(|| Reader::value_error("search", "tie", format!("bad tie-break list `{tie}`")))?;
        }
        cfg.limits.max_expansions = r.parse("search", "max_expansions")?;
        cfg.limits.max_generated = r.parse("search", "max_generated")?;
        if let Some(k) = r.parse("search", "ph_k")? {
            cfg.ph_k = k;
        }
        if let Some(p) = r.parse("search", "ph_init")? {
            cfg.ph_init = p;
        }

        if let Some(spec) = r.take("cost_model", "spec") {
            cfg.cost_model = spec
                .parse()
                .map_err(|e: crate::strategy::cost::CostModelParseError| Reader::value_error("cost_model", "spec", e.to_string()))?;
        }
        for key in ["t1", "t2", "to", "tc", "tau"] {
            if let Some(v) = r.parse::<f64>("cost_model", key)? {
                match key {
                    "t1" => cfg.cost_model.t1 = v,
                    "t2" => cfg.cost_model.t2 = v,
                    "to" => cfg.cost_model.t_o = v,
                    "tc" => cfg.cost_model.t_c = v,
                    _ => cfg.cost_model.tau = v,
                }
            }
        }
        if let Some(mode) = r.take("cost_model", "mode") {
            cfg.cost_model.mode = match mode.as_str() {
                "fixed" => crate::strategy::CostMode::Fixed,
                "measured" => crate::strategy::CostMode::Measured,
                other => return Err(Reader::value_error("cost_model", "mode", format!("unknown mode `{other}`"))),
            };
        }

        if let Some(list) = r.take("search", "strategies") {
            cfg.strategy_names = split_list(&list);
        }

        cfg.csv = r.take("output", "csv").map(resolve);
        cfg.markdown = r.take("output", "markdown").map(resolve);
        cfg.baseline = r.take("output", "baseline");
        r.finish()?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The rational configuration implied by the config for `policy`.
    pub fn rational(&self, policy: DecisionPolicy) -> RationalConfig {
        RationalConfig::with_policy(policy)
            .cost_model(self.cost_model)
            .ph(PhModel::Adaptive(PhEstimator::new(self.ph_k, self.ph_init)))
    }

    /// Resolves the strategy names against the current rule, cost model
    /// and estimator settings.
    pub fn strategies(&self) -> Result<Vec<StrategySpec>, ConfigError> {
        self.strategy_names
            .iter()
            .map(|s| StrategySpec::parse(s, self.rule, |p| self.rational(p)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|m| Reader::value_error("search", "strategies", m))
    }

    /// Fail-fast checks run before any search starts.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let strategies = self.strategies()?;
        if strategies.is_empty() {
            return Err(ConfigError::Invalid("no strategies configured".into()));
        }
        if let InstanceSource::Generated { count: 0, .. } = self.instances {
            return Err(ConfigError::Invalid("instance list is empty".into()));
        }
        if let DomainSpec::Tile { width, height, .. } = self.domain {
            crate::domain::tile::TileState::goal(width, height)
                .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        for (name, h) in [("h1", &self.h1), ("h2", &self.h2)] {
            if !h.fits(&self.domain) {
                return Err(ConfigError::Invalid(format!("heuristic {name} ({h:?}) does not apply to this domain")));
            }
        }
        if !self.cost_model.is_valid() {
            return Err(ConfigError::Invalid("cost model parameters must be finite and non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.ph_init) || !(self.ph_k >= 0.0) {
            return Err(ConfigError::Invalid("ph_init must lie in [0, 1] and ph_k be non-negative".into()));
        }
        if let Some(b) = &self.baseline {
            if !strategies.iter().any(|s| &s.label == b) {
                return Err(ConfigError::Invalid(format!("baseline `{b}` is not among the strategies")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "
[domain]
kind = tile
width = 3
height = 3
cost = weighted

[instances]
source = generated
seed = 7
count = 4
walk = 30

[heuristics]
h1 = wmd
h2 = lookahead:4   # bounded search
h2_delay_us = 25

[search]
strategies = max, lazy, rational+ob, rational-logopen+hbp
rule = ratio
tie = h,-g,fifo
max_expansions = 100000

[cost_model]
spec = fixed:t1=1,t2=8.36,to=0.1,tc=0,tau=0

[output]
baseline = max
";

    #[test]
    fn parses_full_example() {
        let cfg = ExperimentConfig::parse(FULL).unwrap();
        assert_eq!(
            cfg.domain,
            DomainSpec::Tile {
                width: 3,
                height: 3,
                cost: CostMode::TileNumber
            }
        );
        assert_eq!(cfg.h2, HeuristicSpec::Lookahead(4));
        assert_eq!(cfg.h2_delay, Duration::from_micros(25));
        let strategies = cfg.strategies().unwrap();
        let labels: Vec<&str> = strategies.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, ["max", "lazy", "rational-ratio+ob", "rational-logopen+hbp"]);
        assert_eq!(cfg.limits.max_expansions, Some(100_000));
        assert_eq!(cfg.cost_model.t2, 8.36);
        match strategies[2].strategy {
            Strategy::RationalLazy(r) => assert_eq!(r.cost_model.t2, 8.36),
            _ => panic!("expected rational"),
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let empty = FULL.replace("count = 4", "count = 0");
        assert_eq!(
            ExperimentConfig::parse(&empty),
            Err(ConfigError::Invalid("instance list is empty".into()))
        );
        let unknown = FULL.replace("walk = 30", "walk = 30\nwalks = 3");
        assert!(matches!(ExperimentConfig::parse(&unknown), Err(ConfigError::UnknownKey { .. })));
        let bad_h = FULL.replace("lookahead:4", "lookahead:x");
        assert!(matches!(ExperimentConfig::parse(&bad_h), Err(ConfigError::Value { .. })));
        let bad_s = FULL.replace("max, lazy", "max, lazzy");
        assert!(matches!(ExperimentConfig::parse(&bad_s), Err(ConfigError::Value { .. })));
        let bad_base = FULL.replace("baseline = max", "baseline = h1");
        assert!(matches!(ExperimentConfig::parse(&bad_base), Err(ConfigError::Invalid(_))));
        assert!(matches!(
            ExperimentConfig::parse("width = 3"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        let tree_h = FULL.replace("h1 = wmd", "h1 = tree-h1");
        assert!(matches!(ExperimentConfig::parse(&tree_h), Err(ConfigError::Invalid(_))));
    }

    #[test]
    fn strategy_names() {
        let rational = |p| RationalConfig::with_policy(p);
        for (text, label) in [
            ("h1", "h1"),
            ("h2+ob", "h2+ob"),
            ("lazy+ob+hbp", "lazy+ob+hbp"),
            ("rational", "rational-general"),
            ("rational-compute", "rational-compute"),
            ("rational-bypass+ob", "rational-bypass+ob"),
        ] {
            let s = StrategySpec::parse(text, DecisionRule::General, rational).unwrap();
            assert_eq!(s.label, label);
        }
        assert!(StrategySpec::parse("lazy+fast", DecisionRule::General, rational).is_err());
    }

    #[test]
    fn heuristic_names() {
        assert_eq!("pdb:1,2/3".parse(), Ok(HeuristicSpec::Pdb(Some(vec![vec![1, 2], vec![3]]))));
        assert_eq!("pdb".parse(), Ok(HeuristicSpec::Pdb(None)));
        assert_eq!("dx".parse(), Ok(HeuristicSpec::Dx));
        assert!("mdd".parse::<HeuristicSpec>().is_err());
    }
}
