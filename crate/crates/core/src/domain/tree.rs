//! An explicit b-ary tree with known distances and configurable heuristics.
//!
//! Nodes are numbered breadth-first: the children of node `i` are
//! `b*i + 1 ..= b*i + b`, restricted to indices below the node count.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::heuristic::Heuristic;
use crate::search::{Edge, StateSpace, Transitions};
use crate::Cost;

/// Distance of a node with no goal below it.
pub const DEAD: Cost = Cost::MAX;

const MAX_NODES: usize = 1 << 23;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("branching factor and depth must both be at least 1")]
    Degenerate,
    #[error("tree would have more than {MAX_NODES} nodes")]
    TooLarge,
    #[error("table {name} has {found} entries, expected {expected}")]
    Length {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{name} overestimates at node {node}")]
    Inadmissible { name: &'static str, node: usize },
}

/// Heuristic value model: `floor(scale * true)` minus uniform noise in
/// `0..=noise`, floored at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    pub scale: f64,
    pub noise: Cost,
}

impl ErrorModel {
    pub const PERFECT: ErrorModel = ErrorModel { scale: 1.0, noise: 0 };
    pub const ZERO: ErrorModel = ErrorModel { scale: 0.0, noise: 0 };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConfig {
    pub branching: usize,
    pub depth: usize,
    pub seed: u64,
    /// Inclusive range of edge costs.
    pub min_cost: Cost,
    pub max_cost: Cost,
    /// Probability that a leaf is a goal. At least one leaf always is.
    pub goal_prob: f64,
    pub h1: ErrorModel,
    pub h2: ErrorModel,
    /// Estimate reported for nodes with no goal below them.
    pub dead_estimate: Cost,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            branching: 2,
            depth: 3,
            seed: 0,
            min_cost: 1,
            max_cost: 1,
            goal_prob: 1.0,
            h1: ErrorModel::ZERO,
            h2: ErrorModel::PERFECT,
            dead_estimate: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticTree {
    branching: usize,
    costs: Vec<Cost>,
    goals: Vec<bool>,
    true_h: Vec<Cost>,
    depth_g: Vec<Cost>,
    h1: Arc<Vec<Cost>>,
    h2: Arc<Vec<Cost>>,
}

impl SyntheticTree {
    pub fn generate(config: &TreeConfig) -> Result<Self, TreeError> {
        if config.branching == 0 || config.depth == 0 {
            return Err(TreeError::Degenerate);
        }
        let mut n = 0usize;
        let mut level = 1usize;
        for _ in 0..=config.depth {
            n = n.checked_add(level).ok_or(TreeError::TooLarge)?;
            level = level.checked_mul(config.branching).ok_or(TreeError::TooLarge)?;
            if n > MAX_NODES {
                return Err(TreeError::TooLarge);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let lo = config.min_cost.min(config.max_cost);
        let hi = config.min_cost.max(config.max_cost);
        let mut costs: Vec<Cost> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        costs[0] = 0;
        let first_leaf = (n - 1) / config.branching;
        let mut goals = vec![false; n];
        for g in goals.iter_mut().skip(first_leaf) {
            *g = rng.gen_bool(config.goal_prob.clamp(0.0, 1.0));
        }
        if !goals.iter().any(|&g| g) {
            let pick = rng.gen_range(first_leaf..n);
            goals[pick] = true;
        }
        let mut tree = SyntheticTree::skeleton(config.branching, costs, goals);
        let h1 = tree.noisy(config.h1, config.dead_estimate, &mut rng);
        let h2 = tree.noisy(config.h2, config.dead_estimate, &mut rng);
        tree.h1 = Arc::new(h1);
        tree.h2 = Arc::new(h2);
        Ok(tree)
    }

    /// A tree given node by node. `costs[i]` is the cost of the edge into
    /// node `i` (ignored for the root). Heuristic tables must be admissible.
    pub fn explicit(
        branching: usize,
        costs: Vec<Cost>,
        goals: Vec<bool>,
        h1: Vec<Cost>,
        h2: Vec<Cost>,
    ) -> Result<Self, TreeError> {
        if branching == 0 || costs.is_empty() {
            return Err(TreeError::Degenerate);
        }
        let n = costs.len();
        for (name, len) in [("goals", goals.len()), ("h1", h1.len()), ("h2", h2.len())] {
            if len != n {
                return Err(TreeError::Length {
                    name,
                    expected: n,
                    found: len,
                });
            }
        }
        let mut tree = SyntheticTree::skeleton(branching, costs, goals);
        for (name, table) in [("h1", &h1), ("h2", &h2)] {
            if let Some(node) = (0..n).find(|&i| table[i] > tree.true_h[i]) {
                return Err(TreeError::Inadmissible { name, node });
            }
        }
        tree.h1 = Arc::new(h1);
        tree.h2 = Arc::new(h2);
        Ok(tree)
    }

    fn skeleton(branching: usize, mut costs: Vec<Cost>, goals: Vec<bool>) -> Self {
        let n = costs.len();
        costs[0] = 0;
        let mut depth_g = vec![0; n];
        for i in 1..n {
            depth_g[i] = depth_g[(i - 1) / branching] + costs[i];
        }
        let mut true_h = vec![DEAD; n];
        for i in (0..n).rev() {
            if goals[i] {
                true_h[i] = 0;
                continue;
            }
            let first = branching * i + 1;
            for c in first..(first + branching).min(n) {
                if true_h[c] != DEAD {
                    true_h[i] = true_h[i].min(costs[c] + true_h[c]);
                }
            }
        }
        SyntheticTree {
            branching,
            costs,
            goals,
            true_h,
            depth_g,
            h1: Arc::new(Vec::new()),
            h2: Arc::new(Vec::new()),
        }
    }

    fn noisy(&self, model: ErrorModel, dead: Cost, rng: &mut ChaCha8Rng) -> Vec<Cost> {
        self.true_h
            .iter()
            .map(|&t| {
                if t == DEAD {
                    return dead;
                }
                let base = (t as f64 * model.scale.clamp(0.0, 1.0)).floor() as Cost;
                let noise = if model.noise > 0 { rng.gen_range(0..=model.noise) } else { 0 };
                base.saturating_sub(noise)
            })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.costs.len()
    }

    pub fn children(&self, node: usize) -> std::ops::Range<usize> {
        let first = self.branching * node + 1;
        first.min(self.node_count())..(first + self.branching).min(self.node_count())
    }

    /// Distance from `node` to its nearest goal descendant, or [`DEAD`].
    pub fn true_distance(&self, node: usize) -> Cost {
        self.true_h[node]
    }

    /// Path cost from the root.
    pub fn g(&self, node: usize) -> Cost {
        self.depth_g[node]
    }

    pub fn optimal_cost(&self) -> Cost {
        self.true_h[0]
    }

    /// Ground truth: `h2` would prune a node that `h1` alone lets through,
    /// i.e. `f1(n) <= C* < f2(n)`.
    pub fn h2_helpful(&self, node: usize) -> bool {
        let c = self.optimal_cost();
        let g = self.depth_g[node];
        g + self.h1[node] <= c && g.saturating_add(self.h2[node]) > c
    }

    pub fn h1(&self) -> TreeHeuristic {
        TreeHeuristic {
            label: "tree-h1",
            values: Arc::clone(&self.h1),
        }
    }

    pub fn h2(&self) -> TreeHeuristic {
        TreeHeuristic {
            label: "tree-h2",
            values: Arc::clone(&self.h2),
        }
    }
}

impl Transitions for SyntheticTree {
    type State = usize;

    fn successors(&self, state: &usize, out: &mut Vec<Edge<usize>>) {
        for c in self.children(*state) {
            out.push(Edge {
                state: c,
                cost: self.costs[c],
                bidirectional: false,
            });
        }
    }

    fn is_goal(&self, state: &usize) -> bool {
        self.goals[*state]
    }

    fn branching_factor(&self, state: &usize) -> usize {
        self.children(*state).len()
    }
}

impl StateSpace for SyntheticTree {
    fn initial_state(&self) -> usize {
        0
    }
}

/// Table-backed heuristic of a [`SyntheticTree`].
#[derive(Debug, Clone)]
pub struct TreeHeuristic {
    label: &'static str,
    values: Arc<Vec<Cost>>,
}

impl Heuristic<usize> for TreeHeuristic {
    fn evaluate(&self, state: &usize) -> Cost {
        self.values[*state]
    }
    fn label(&self) -> String {
        self.label.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_tree_shape() {
        let t = SyntheticTree::generate(&TreeConfig::default()).unwrap();
        assert_eq!(t.node_count(), 15);
        assert_eq!(t.children(0), 1..3);
        assert_eq!(t.children(6), 13..15);
        assert!(t.children(7).is_empty());
        assert_eq!(t.optimal_cost(), 3);
        assert_eq!(t.h2().evaluate(&0), 3);
        assert_eq!(t.h1().evaluate(&0), 0);
    }

    #[test]
    fn chain() {
        let cfg = TreeConfig {
            branching: 1,
            depth: 5,
            ..TreeConfig::default()
        };
        let t = SyntheticTree::generate(&cfg).unwrap();
        assert_eq!(t.node_count(), 6);
        assert!(t.is_goal(&5));
        assert_eq!(t.optimal_cost(), 5);
    }

    #[test]
    fn seeded_heuristics_are_admissible_and_reproducible() {
        let cfg = TreeConfig {
            branching: 3,
            depth: 6,
            seed: 42,
            min_cost: 1,
            max_cost: 5,
            goal_prob: 0.2,
            h1: ErrorModel { scale: 0.5, noise: 2 },
            h2: ErrorModel { scale: 0.9, noise: 1 },
            dead_estimate: 50,
        };
        let a = SyntheticTree::generate(&cfg).unwrap();
        let b = SyntheticTree::generate(&cfg).unwrap();
        for n in 0..a.node_count() {
            assert_eq!(a.h1().evaluate(&n), b.h1().evaluate(&n));
            assert_eq!(a.h2().evaluate(&n), b.h2().evaluate(&n));
            if a.true_distance(n) != DEAD {
                assert!(a.h1().evaluate(&n) <= a.true_distance(n));
                assert!(a.h2().evaluate(&n) <= a.true_distance(n));
            }
        }
        assert!(a.optimal_cost() != DEAD);
    }

    #[test]
    fn explicit_rejects_overestimates() {
        let err = SyntheticTree::explicit(
            2,
            vec![0, 1, 1],
            vec![false, true, false],
            vec![0, 0, 0],
            vec![2, 0, 0],
        )
        .unwrap_err();
        assert_eq!(err, TreeError::Inadmissible { name: "h2", node: 0 });
    }
}
