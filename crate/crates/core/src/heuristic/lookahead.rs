//! Bounded-lookahead heuristic: a cost-bounded depth-first search below the
//! evaluated state, guided by a consistent base heuristic.

use crate::search::{Edge, Transitions};
use crate::Cost;

use super::Heuristic;

/// `lookahead(n)` explores every path from `n` whose `g + base` stays within
/// `base(n) + depth`. A state beyond that bound, or a goal, is a leaf with
/// value `g + base(leaf)`; the result is the smallest leaf value.
///
/// Immediate move reversals are pruned. With a consistent base the value is
/// admissible and at least `base(n)`.
#[derive(Debug, Clone)]
pub struct Lookahead<T, H> {
    rules: T,
    base: H,
    depth: Cost,
}

impl<T, H> Lookahead<T, H> {
    pub fn new(rules: T, base: H, depth: Cost) -> Self {
        Lookahead { rules, base, depth }
    }

    pub fn depth(&self) -> Cost {
        self.depth
    }
}

impl<T, H> Lookahead<T, H>
where
    T: Transitions,
    H: Heuristic<T::State>,
{
    fn search(
        &self,
        state: &T::State,
        parent: Option<&T::State>,
        g: Cost,
        bound: Cost,
        best: &mut Cost,
    ) {
        let mut edges: Vec<Edge<T::State>> = Vec::new();
        self.rules.successors(state, &mut edges);
        for edge in edges {
            if Some(&edge.state) == parent {
                continue;
            }
            let g_next = g + edge.cost;
            if g_next >= *best {
                continue;
            }
            if self.rules.is_goal(&edge.state) {
                *best = g_next;
                continue;
            }
            let f = g_next + self.base.evaluate(&edge.state);
            if f >= *best {
                continue;
            }
            if f > bound {
                *best = f;
            } else {
                self.search(&edge.state, Some(state), g_next, bound, best);
            }
        }
    }
}

impl<T, H> Heuristic<T::State> for Lookahead<T, H>
where
    T: Transitions + Send + Sync,
    H: Heuristic<T::State>,
{
    fn evaluate(&self, state: &T::State) -> Cost {
        if self.rules.is_goal(state) {
            return 0;
        }
        let bound = self.base.evaluate(state) + self.depth;
        let mut best = Cost::MAX;
        self.search(state, None, 0, bound, &mut best);
        best
    }

    fn label(&self) -> String {
        format!("lookahead:{}({})", self.depth, self.base.label())
    }

    fn dominates(&self) -> Option<String> {
        Some(self.base.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::tile::{random_instance, CostMode, TileRules, TileState};
    use crate::heuristic::manhattan::WeightedManhattan;
    use crate::oracle::DistanceTable;

    #[test]
    fn goal_is_zero() {
        let rules = TileRules::new(3, 3, CostMode::TileNumber);
        for d in [0, 3, 10] {
            let la = Lookahead::new(rules, WeightedManhattan::tile_number(3, 3), d);
            assert_eq!(la.evaluate(&TileState::goal(3, 3).unwrap()), 0);
        }
    }

    #[test]
    fn bounded_between_base_and_oracle() {
        let rules = TileRules::new(3, 3, CostMode::TileNumber);
        let exact = DistanceTable::to_goal(&rules, &TileState::goal(3, 3).unwrap());
        let base = WeightedManhattan::tile_number(3, 3);
        for d in [0, 2, 4] {
            let la = Lookahead::new(rules, base.clone(), d);
            for seed in 0..40 {
                let s = random_instance(3, 3, seed, 30).unwrap();
                let v = la.evaluate(&s);
                assert!(v >= base.evaluate(&s));
                assert!(v <= exact.distance(&s).unwrap());
            }
        }
    }

    #[test]
    fn large_bound_is_exact() {
        let rules = TileRules::new(2, 3, CostMode::Unit);
        let exact = DistanceTable::to_goal(&rules, &TileState::goal(2, 3).unwrap());
        let la = Lookahead::new(rules, WeightedManhattan::unit(2, 3), 40);
        for (s, d) in exact.iter() {
            assert_eq!(la.evaluate(s), d);
        }
    }
}
