//! Generic best-first search with lazy heuristic evaluation.
//!
//! A single loop serves every [`Strategy`]: nodes are created once per state
//! and carry their evaluation phase; OPEN holds at most one live entry per
//! node, keyed by `g` plus the best known lower bound on `h`. The goal test
//! happens when a node is popped.
//!
//! Heuristic values of goal states are never evaluated: admissibility forces
//! them to zero.

mod counters;
mod node;
mod open;
mod tie;

use std::collections::hash_map::{DefaultHasher, Entry};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use thiserror::Error;

pub use counters::Counters;
pub use node::{classify_node, NodeClass, Phase, SearchNode};
pub use open::{OpenKey, OpenList, PushOutcome};
pub use tie::{TieBreakRule, TieKey};

use crate::heuristic::Heuristic;
use crate::strategy::bypass::{hbp_h2_redundant, LazyHbp, MaxHbp};
use crate::strategy::decision::decide;
use crate::strategy::{
    hbp_apply_lazy, hbp_apply_max, hbp_bounds, lazy_reemerge, ob_check, CostMode, CostModel,
    Decision, DecisionInput, Enhancements, HbpBounds, MeasuredTimes, ObDecision, PhModel,
    Reemerge, Strategy,
};
use crate::Cost;

/// One outgoing operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<S> {
    pub state: S,
    pub cost: Cost,
    /// The reverse operator exists with the same cost.
    pub bidirectional: bool,
}

/// Successor generation and goal test.
pub trait Transitions {
    type State: Clone + Eq + Hash + Debug;

    /// Appends the successors of `state` to `out`.
    fn successors(&self, state: &Self::State, out: &mut Vec<Edge<Self::State>>);

    fn is_goal(&self, state: &Self::State) -> bool;

    /// `b(n)`, the number of successors.
    fn branching_factor(&self, state: &Self::State) -> usize {
        let mut out = Vec::new();
        self.successors(state, &mut out);
        out.len()
    }
}

/// A search problem: transitions plus an initial state.
pub trait StateSpace: Transitions {
    fn initial_state(&self) -> Self::State;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_expansions: Option<u64>,
    pub max_generated: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub enhancements: Enhancements,
    pub tie: TieBreakRule,
    pub limits: Limits,
    /// Record the full event trace.
    pub trace: bool,
    /// Time every heuristic evaluation, even outside a measured cost model.
    pub measure_times: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            enhancements: Enhancements::NONE,
            tie: TieBreakRule::default(),
            limits: Limits::default(),
            trace: false,
            measure_times: false,
        }
    }
}

impl SearchOptions {
    pub fn with_enhancements(enhancements: Enhancements) -> Self {
        SearchOptions {
            enhancements,
            ..SearchOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Expansions,
    Generated,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("OPEN exhausted without reaching a goal")]
    NoSolution { counters: Counters },
    #[error("{limit:?} limit exceeded")]
    ResourceLimit { limit: LimitKind, counters: Counters },
    #[error("invalid cost model: parameters must be finite and non-negative")]
    InvalidCostModel,
}

impl SearchError {
    pub fn counters(&self) -> Option<&Counters> {
        match self {
            SearchError::NoSolution { counters } | SearchError::ResourceLimit { counters, .. } => {
                Some(counters)
            }
            SearchError::InvalidCostModel => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Pop,
    EvalH1,
    EvalH2,
    Expand,
    Reinsert,
    Bypass,
}

/// One step of the search, for trace comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub state_id: u64,
    pub f: Cost,
}

/// Stable identifier of a state, derived from its `Hash` implementation.
pub fn state_id<S: Hash>(state: &S) -> u64 {
    let mut hasher = DefaultHasher::new();
    state.hash(&mut hasher);
    hasher.finish()
}

/// A node expansion: the state, its `g` and the f-key it was expanded with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion<S> {
    pub state: S,
    pub g: Cost,
    pub f: Cost,
}

#[derive(Debug, Clone)]
pub struct SearchResult<S> {
    /// States from the initial state to the goal.
    pub path: Vec<S>,
    /// Operator costs along `path` (one fewer than states).
    pub step_costs: Vec<Cost>,
    pub cost: Cost,
    pub counters: Counters,
    pub node_classes: HashMap<S, NodeClass>,
    pub expansions: Vec<Expansion<S>>,
    pub trace: Option<Vec<TraceEvent>>,
    /// Observed evaluation times, when timing was enabled.
    pub timing: MeasuredTimes,
    /// Final `p_h` estimate of a rational search.
    pub ph_final: Option<f64>,
}

impl<S: Clone + Eq + Hash> SearchResult<S> {
    /// States expanded with an f-key strictly below `bound`.
    pub fn expanded_below(&self, bound: Cost) -> std::collections::HashSet<S> {
        self.expansions
            .iter()
            .filter(|e| e.f < bound)
            .map(|e| e.state.clone())
            .collect()
    }

    pub fn class_count(&self, class: NodeClass) -> usize {
        self.node_classes.values().filter(|c| **c == class).count()
    }
}

/// Runs one search.
pub fn solve<P: StateSpace>(
    space: &P,
    h1: &dyn Heuristic<P::State>,
    h2: &dyn Heuristic<P::State>,
    strategy: &Strategy,
    options: &SearchOptions,
) -> Result<SearchResult<P::State>, SearchError> {
    Engine::new(space, h1, h2, strategy, options)?.run()
}

struct Engine<'a, P: StateSpace> {
    space: &'a P,
    h1: &'a dyn Heuristic<P::State>,
    h2: &'a dyn Heuristic<P::State>,
    strategy: &'a Strategy,
    options: &'a SearchOptions,
    nodes: Vec<SearchNode<P::State>>,
    index: HashMap<P::State, usize>,
    open: OpenList,
    counters: Counters,
    trace: Option<Vec<TraceEvent>>,
    expansions: Vec<Expansion<P::State>>,
    ph: Option<PhModel>,
    cost_model: Option<CostModel>,
    timing: MeasuredTimes,
    measure: bool,
    hbp_ready: bool,
    buf: Vec<Edge<P::State>>,
}

impl<'a, P: StateSpace> Engine<'a, P> {
    fn new(
        space: &'a P,
        h1: &'a dyn Heuristic<P::State>,
        h2: &'a dyn Heuristic<P::State>,
        strategy: &'a Strategy,
        options: &'a SearchOptions,
    ) -> Result<Self, SearchError> {
        let (ph, cost_model) = match strategy {
            Strategy::RationalLazy(cfg) => {
                if !cfg.cost_model.is_valid() {
                    return Err(SearchError::InvalidCostModel);
                }
                (Some(cfg.ph), Some(cfg.cost_model))
            }
            _ => (None, None),
        };
        let measure = options.measure_times
            || cost_model.is_some_and(|c| c.mode == CostMode::Measured);
        let hbp_ready = options.enhancements.heuristic_bypass
            && strategy.uses_h1()
            && strategy.uses_h2()
            && h1.is_consistent()
            && h2.is_consistent();
        Ok(Engine {
            space,
            h1,
            h2,
            strategy,
            options,
            nodes: Vec::new(),
            index: HashMap::new(),
            open: OpenList::new(options.tie.clone()),
            counters: Counters::default(),
            trace: options.trace.then(Vec::new),
            expansions: Vec::new(),
            ph,
            cost_model,
            timing: MeasuredTimes::default(),
            measure,
            hbp_ready,
            buf: Vec::new(),
        })
    }

    fn run(mut self) -> Result<SearchResult<P::State>, SearchError> {
        let start = self.space.initial_state();
        let id = self.create_node(start, 0, None, 0)?;
        if !self.nodes[id].is_goal {
            // every heuristic the strategy uses is applied to the start node
            if self.strategy.uses_h1() {
                self.eval_h1(id);
            }
            if self.strategy.uses_h2() {
                self.eval_h2(id);
            }
            self.nodes[id].phase = Phase::FullyEvaluated;
        }
        self.push(id);

        loop {
            let Some((id, f)) = self.open.pop_best() else {
                return Err(SearchError::NoSolution {
                    counters: self.partial_counters(),
                });
            };
            self.record(EventKind::Pop, id, f);
            if self.nodes[id].is_goal {
                return Ok(self.finish(id));
            }
            let phase = self.nodes[id].phase;
            match lazy_reemerge(phase, || self.decide(id)) {
                Reemerge::Expand => {
                    if phase == Phase::AwaitingH2 {
                        self.counters.good2 += 1;
                        self.nodes[id].phase = Phase::BypassedH2;
                        let f = self.nodes[id].f_key();
                        self.record(EventKind::Bypass, id, f);
                    }
                    self.expand(id)?;
                }
                Reemerge::EvaluateH2AndReinsert => {
                    self.eval_h2(id);
                    self.nodes[id].phase = Phase::FullyEvaluated;
                    let f_new = self.nodes[id].f_key();
                    if self.options.enhancements.open_bypass
                        && ob_check(f_new, self.open.best_f()) == ObDecision::BypassOpen
                    {
                        self.counters.ob_hits += 1;
                        self.expand(id)?;
                    } else {
                        self.record(EventKind::Reinsert, id, f_new);
                        self.push(id);
                    }
                }
            }
        }
    }

    fn decide(&mut self, id: usize) -> Decision {
        let Strategy::RationalLazy(cfg) = self.strategy else {
            return Decision::Compute;
        };
        let input = DecisionInput {
            branching: self.space.branching_factor(&self.nodes[id].state),
            open_size: self.open.len() + 1,
        };
        let cost = self.effective_cost_model();
        let ph = self.ph.map_or(0.0, |p| p.estimate());
        decide(cfg.policy, input, &cost, ph)
    }

    fn effective_cost_model(&self) -> CostModel {
        let base = self.cost_model.unwrap_or_default();
        match base.mode {
            CostMode::Fixed => base,
            CostMode::Measured => self.timing.apply(&base),
        }
    }

    fn create_node(
        &mut self,
        state: P::State,
        g: Cost,
        parent: Option<usize>,
        edge_cost: Cost,
    ) -> Result<usize, SearchError> {
        if let Some(cap) = self.options.limits.max_generated {
            if self.counters.generated >= cap {
                return Err(SearchError::ResourceLimit {
                    limit: LimitKind::Generated,
                    counters: self.partial_counters(),
                });
            }
        }
        let id = self.nodes.len();
        let mut node = SearchNode::new(state.clone(), g, parent, edge_cost, id as u64);
        if self.space.is_goal(&state) {
            node.is_goal = true;
            node.h1 = Some(0);
            node.h2 = Some(0);
            node.bounds1 = HbpBounds::exact(0);
            node.bounds2 = HbpBounds::exact(0);
            node.phase = Phase::FullyEvaluated;
        }
        self.nodes.push(node);
        self.index.insert(state, id);
        self.counters.generated += 1;
        Ok(id)
    }

    fn eval_h1(&mut self, id: usize) -> Cost {
        let value = if self.measure {
            let t = Instant::now();
            let v = self.h1.evaluate(&self.nodes[id].state);
            let us = (t.elapsed() + self.h1.synthetic_delay()).as_secs_f64() * 1e6;
            self.timing.record_h1(us);
            v
        } else {
            self.h1.evaluate(&self.nodes[id].state)
        };
        self.counters.h1_evals += 1;
        let node = &mut self.nodes[id];
        node.h1 = Some(value);
        node.bounds1 = HbpBounds::exact(value);
        let f = node.f_key();
        self.record(EventKind::EvalH1, id, f);
        value
    }

    fn eval_h2(&mut self, id: usize) -> Cost {
        let value = if self.measure {
            let t = Instant::now();
            let v = self.h2.evaluate(&self.nodes[id].state);
            let us = (t.elapsed() + self.h2.synthetic_delay()).as_secs_f64() * 1e6;
            self.timing.record_h2(us);
            v
        } else {
            self.h2.evaluate(&self.nodes[id].state)
        };
        self.counters.h2_evals += 1;
        if let Some(ph) = self.ph.as_mut() {
            ph.on_h2_computed();
        }
        let node = &mut self.nodes[id];
        node.h2 = Some(value);
        node.bounds2 = HbpBounds::exact(value);
        let f = node.f_key();
        self.record(EventKind::EvalH2, id, f);
        value
    }

    fn push(&mut self, id: usize) {
        let node = &mut self.nodes[id];
        let h = node.h_key();
        let key = OpenKey {
            f: node.g + h,
            h,
            g: node.g,
            seq: node.seq,
        };
        if self.open.push(id, key) == PushOutcome::Inserted {
            node.open_cycles += 1;
        }
    }

    fn expand(&mut self, id: usize) -> Result<(), SearchError> {
        if let Some(cap) = self.options.limits.max_expansions {
            if self.counters.expanded >= cap {
                return Err(SearchError::ResourceLimit {
                    limit: LimitKind::Expansions,
                    counters: self.partial_counters(),
                });
            }
        }
        self.counters.expanded += 1;
        let (g, f) = {
            let node = &mut self.nodes[id];
            node.closed = true;
            if !node.expanded_once {
                node.expanded_once = true;
                if node.h2.is_some() {
                    if let Some(ph) = self.ph.as_mut() {
                        ph.on_expanded();
                    }
                }
            }
            (node.g, node.f_key())
        };
        self.record(EventKind::Expand, id, f);
        self.expansions.push(Expansion {
            state: self.nodes[id].state.clone(),
            g,
            f,
        });

        let mut buf = std::mem::take(&mut self.buf);
        buf.clear();
        self.space.successors(&self.nodes[id].state, &mut buf);
        for edge in buf.drain(..) {
            let g_child = g + edge.cost;
            match self.index.entry(edge.state) {
                Entry::Occupied(slot) => {
                    let cid = *slot.get();
                    let child = &mut self.nodes[cid];
                    if g_child < child.g {
                        child.g = g_child;
                        child.parent = Some(id);
                        child.edge_cost = edge.cost;
                        if child.closed {
                            child.closed = false;
                            self.counters.reopened += 1;
                            self.push(cid);
                        } else if self.open.contains(cid) {
                            self.push(cid);
                        }
                    }
                }
                Entry::Vacant(slot) => {
                    let state = slot.into_key();
                    let cid = self.create_node(state, g_child, Some(id), edge.cost)?;
                    if !self.nodes[cid].is_goal {
                        self.evaluate_generated(cid, id, edge.cost, edge.bidirectional);
                    }
                    self.push(cid);
                }
            }
        }
        self.buf = buf;
        Ok(())
    }

    fn evaluate_generated(&mut self, cid: usize, parent: usize, cost: Cost, bidirectional: bool) {
        let (b1, b2) = if self.hbp_ready && bidirectional {
            let p = &self.nodes[parent];
            (
                hbp_bounds(p.bounds1, cost, true, true),
                hbp_bounds(p.bounds2, cost, true, true),
            )
        } else {
            (None, None)
        };
        match self.strategy {
            Strategy::AStarH1 => {
                self.eval_h1(cid);
                self.nodes[cid].phase = Phase::FullyEvaluated;
            }
            Strategy::AStarH2 => {
                self.eval_h2(cid);
                self.nodes[cid].phase = Phase::FullyEvaluated;
            }
            Strategy::AStarMax => {
                match hbp_apply_max(b1, b2) {
                    MaxHbp::SkipH1 => {
                        self.counters.hbp1_skips += 1;
                        self.nodes[cid].bounds1 = b1.unwrap_or(HbpBounds::UNKNOWN);
                        self.eval_h2(cid);
                    }
                    MaxHbp::SkipH2 => {
                        self.counters.hbp2_delays += 1;
                        self.nodes[cid].bounds2 = b2.unwrap_or(HbpBounds::UNKNOWN);
                        self.eval_h1(cid);
                    }
                    MaxHbp::EvaluateBoth => {
                        let h1 = self.eval_h1(cid);
                        if hbp_h2_redundant(h1, b2) {
                            self.counters.hbp2_delays += 1;
                            self.nodes[cid].bounds2 = b2.unwrap_or(HbpBounds::UNKNOWN);
                        } else {
                            self.eval_h2(cid);
                        }
                    }
                }
                self.nodes[cid].phase = Phase::FullyEvaluated;
            }
            Strategy::Lazy | Strategy::RationalLazy(_) => {
                match hbp_apply_lazy(b1, b2) {
                    LazyHbp::SkipH1UseLowerH2 { .. } => {
                        self.counters.hbp1_skips += 1;
                        let node = &mut self.nodes[cid];
                        node.bounds1 = b1.unwrap_or(HbpBounds::UNKNOWN);
                        node.bounds2 = b2.unwrap_or(HbpBounds::UNKNOWN);
                        node.phase = Phase::AwaitingH2;
                    }
                    LazyHbp::EvaluateH1 => {
                        if let Some(b2) = b2 {
                            self.nodes[cid].bounds2 = b2;
                        }
                        let h1 = self.eval_h1(cid);
                        if hbp_h2_redundant(h1, b2) {
                            self.counters.hbp2_delays += 1;
                            self.nodes[cid].phase = Phase::FullyEvaluated;
                        } else {
                            self.nodes[cid].phase = Phase::AwaitingH2;
                        }
                    }
                }
                if self.options.enhancements.open_bypass
                    && self.nodes[cid].phase == Phase::AwaitingH2
                    && ob_check(self.nodes[cid].f_key(), self.open.best_f())
                        == ObDecision::BypassOpen
                    && self.decide(cid) == Decision::Compute
                {
                    self.counters.ob_hits += 1;
                    self.eval_h2(cid);
                    self.nodes[cid].phase = Phase::FullyEvaluated;
                }
            }
        }
    }

    fn record(&mut self, kind: EventKind, id: usize, f: Cost) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(TraceEvent {
                kind,
                state_id: state_id(&self.nodes[id].state),
                f,
            });
        }
    }

    fn partial_counters(&self) -> Counters {
        let mut c = self.counters;
        c.open_pushes = self.open.pushes();
        c.open_pops = self.open.pops();
        c
    }

    fn finish(self, goal: usize) -> SearchResult<P::State> {
        let mut counters = self.partial_counters();
        let mut classes = HashMap::with_capacity(self.nodes.len());
        for (id, node) in self.nodes.iter().enumerate() {
            let in_open = self.open.contains(id);
            let class = classify_node(node.is_goal, in_open, node.phase);
            match class {
                NodeClass::ExpandedRegular => counters.er += 1,
                NodeClass::ExpandedBypassed => counters.eb += 1,
                NodeClass::SurplusRegular => counters.sr += 1,
                NodeClass::SurplusGood => {
                    counters.sg += 1;
                    if node.phase == Phase::AwaitingH2 {
                        counters.good1 += 1;
                    }
                }
                NodeClass::Goal => counters.goals += 1,
            }
            if node.open_cycles >= 2 {
                counters.bad += 1;
            }
            classes.insert(node.state.clone(), class);
        }

        let mut path = Vec::new();
        let mut step_costs = Vec::new();
        let mut cursor = Some(goal);
        while let Some(id) = cursor {
            let node = &self.nodes[id];
            path.push(node.state.clone());
            if node.parent.is_some() {
                step_costs.push(node.edge_cost);
            }
            cursor = node.parent;
        }
        path.reverse();
        step_costs.reverse();

        SearchResult {
            path,
            step_costs,
            cost: self.nodes[goal].g,
            counters,
            node_classes: classes,
            expansions: self.expansions,
            trace: self.trace,
            timing: self.timing,
            ph_final: self.ph.map(|p| p.estimate()),
        }
    }
}
