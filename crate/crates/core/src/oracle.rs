//! Ground truth for tests: a heuristic-free uniform-cost solver, exhaustive
//! distance tables and comparison of search results.
//!
//! Nothing here uses the search engine's OPEN list or hashing; states are
//! kept in ordered maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use thiserror::Error;

use crate::search::{Edge, SearchResult, StateSpace, TraceEvent, Transitions};
use crate::Cost;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("expansion cap of {0} exceeded")]
    CapExceeded(u64),
    #[error("no goal is reachable")]
    NoSolution,
    #[error("solution costs differ: {0} vs {1}")]
    CostMismatch(Cost, Cost),
}

/// Bucket queue keyed by cost.
struct Buckets<S> {
    map: BTreeMap<Cost, Vec<S>>,
}

impl<S> Buckets<S> {
    fn new() -> Self {
        Buckets { map: BTreeMap::new() }
    }

    fn push(&mut self, cost: Cost, state: S) {
        self.map.entry(cost).or_default().push(state);
    }

    fn pop(&mut self) -> Option<(Cost, S)> {
        let mut entry = self.map.first_entry()?;
        let cost = *entry.key();
        let state = entry.get_mut().pop().expect("buckets are never left empty");
        if entry.get().is_empty() {
            entry.remove();
        }
        Some((cost, state))
    }
}

/// Optimal solution cost by Dijkstra's algorithm. `cap` bounds the number of
/// expansions.
pub fn uniform_cost_optimal<P>(space: &P, cap: Option<u64>) -> Result<Cost, OracleError>
where
    P: StateSpace,
    P::State: Ord,
{
    let mut dist: BTreeMap<P::State, Cost> = BTreeMap::new();
    let mut done: BTreeSet<P::State> = BTreeSet::new();
    let mut queue = Buckets::new();
    let start = space.initial_state();
    dist.insert(start.clone(), 0);
    queue.push(0, start);
    let mut edges: Vec<Edge<P::State>> = Vec::new();
    let mut expanded = 0u64;
    while let Some((d, s)) = queue.pop() {
        if done.contains(&s) || dist.get(&s).is_some_and(|&best| best < d) {
            continue;
        }
        if space.is_goal(&s) {
            return Ok(d);
        }
        if cap.is_some_and(|c| expanded >= c) {
            return Err(OracleError::CapExceeded(expanded));
        }
        expanded += 1;
        edges.clear();
        space.successors(&s, &mut edges);
        for e in edges.drain(..) {
            let nd = d + e.cost;
            if dist.get(&e.state).is_none_or(|&old| nd < old) {
                dist.insert(e.state.clone(), nd);
                queue.push(nd, e.state);
            }
        }
        done.insert(s);
    }
    Err(OracleError::NoSolution)
}

/// Distance to a target for every state that reaches it, computed by a
/// sweep from the target. Valid for spaces whose edges are all
/// bidirectional with equal cost.
#[derive(Debug, Clone)]
pub struct DistanceTable<S> {
    dist: BTreeMap<S, Cost>,
}

impl<S: Ord + Clone + Debug> DistanceTable<S> {
    pub fn to_goal<T>(rules: &T, goal: &S) -> Self
    where
        T: Transitions<State = S>,
    {
        let mut dist: BTreeMap<S, Cost> = BTreeMap::new();
        let mut queue = Buckets::new();
        dist.insert(goal.clone(), 0);
        queue.push(0, goal.clone());
        let mut edges = Vec::new();
        while let Some((d, s)) = queue.pop() {
            if dist[&s] < d {
                continue;
            }
            edges.clear();
            rules.successors(&s, &mut edges);
            for e in edges.drain(..) {
                assert!(e.bidirectional, "distance tables need bidirectional edges");
                let nd = d + e.cost;
                if dist.get(&e.state).is_none_or(|&old| nd < old) {
                    dist.insert(e.state.clone(), nd);
                    queue.push(nd, e.state);
                }
            }
        }
        DistanceTable { dist }
    }

    pub fn distance(&self, state: &S) -> Option<Cost> {
        self.dist.get(state).copied()
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, Cost)> {
        self.dist.iter().map(|(s, &d)| (s, d))
    }
}

/// Unit-cost distance between two states by bidirectional breadth-first
/// search over bidirectional edges.
pub fn bidirectional_bfs<T>(rules: &T, start: &T::State, goal: &T::State) -> Option<Cost>
where
    T: Transitions,
    T::State: Ord,
{
    if start == goal {
        return Some(0);
    }
    let mut seen = [BTreeMap::new(), BTreeMap::new()];
    let mut frontier = [vec![start.clone()], vec![goal.clone()]];
    seen[0].insert(start.clone(), 0 as Cost);
    seen[1].insert(goal.clone(), 0 as Cost);
    let mut edges = Vec::new();
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return None;
        }
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<Cost> = None;
        for s in std::mem::take(&mut frontier[side]) {
            let d = seen[side][&s];
            edges.clear();
            rules.successors(&s, &mut edges);
            for e in edges.drain(..) {
                if seen[side].contains_key(&e.state) {
                    continue;
                }
                if let Some(&od) = seen[other].get(&e.state) {
                    let total = d + 1 + od;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen[side].insert(e.state.clone(), d + 1);
                next.push(e.state);
            }
        }
        if best.is_some() {
            return best;
        }
        frontier[side] = next;
    }
}

/// Outcome of comparing the expansions of two runs below `C*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport<S> {
    pub cost: Cost,
    /// Expanded below `C*` by the first run only.
    pub only_a: Vec<S>,
    /// Expanded below `C*` by the second run only.
    pub only_b: Vec<S>,
    /// Expansions with key exactly `C*`, per run; informational.
    pub at_bound: (usize, usize),
}

impl<S> ExpansionReport<S> {
    pub fn pass(&self) -> bool {
        self.only_a.is_empty() && self.only_b.is_empty()
    }
}

/// Compares the states each run expanded with an f-key below the shared
/// optimal cost.
pub fn compare_expansion_sets<S>(
    a: &SearchResult<S>,
    b: &SearchResult<S>,
) -> Result<ExpansionReport<S>, OracleError>
where
    S: Clone + Ord + std::hash::Hash,
{
    if a.cost != b.cost {
        return Err(OracleError::CostMismatch(a.cost, b.cost));
    }
    let c = a.cost;
    let below = |r: &SearchResult<S>| -> BTreeSet<S> {
        r.expansions.iter().filter(|e| e.f < c).map(|e| e.state.clone()).collect()
    };
    let at = |r: &SearchResult<S>| r.expansions.iter().filter(|e| e.f == c).count();
    let sa = below(a);
    let sb = below(b);
    Ok(ExpansionReport {
        cost: c,
        only_a: sa.difference(&sb).cloned().collect(),
        only_b: sb.difference(&sa).cloned().collect(),
        at_bound: (at(a), at(b)),
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("traces diverge at event {index}: {a:?} vs {b:?}")]
pub struct TraceMismatch {
    pub index: usize,
    pub a: Option<TraceEvent>,
    pub b: Option<TraceEvent>,
}

/// Event-for-event comparison of two traces.
pub fn compare_traces(a: &[TraceEvent], b: &[TraceEvent]) -> Result<(), TraceMismatch> {
    let n = a.len().max(b.len());
    for i in 0..n {
        let (x, y) = (a.get(i).copied(), b.get(i).copied());
        if x != y {
            return Err(TraceMismatch { index: i, a: x, b: y });
        }
    }
    Ok(())
}
