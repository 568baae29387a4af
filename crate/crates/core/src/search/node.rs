use crate::strategy::HbpBounds;
use crate::Cost;

/// Evaluation phase of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Only `h1` (or a bound on `h2`) is known; `h2` is due on re-emergence.
    AwaitingH2,
    /// Every heuristic the strategy uses is known, evaluated or proven
    /// dominated by a bound.
    FullyEvaluated,
    /// The rational decision skipped `h2` and the node was expanded without it.
    BypassedH2,
}

/// Termination-time class of a generated node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeClass {
    /// Expanded after its heuristics were fully resolved (ER).
    ExpandedRegular,
    /// Expanded after the rational decision bypassed `h2`.
    ExpandedBypassed,
    /// Still in OPEN at termination with `h2` resolved (SR).
    SurplusRegular,
    /// Still in OPEN at termination with `h2` never computed (SG).
    SurplusGood,
    /// A goal state.
    Goal,
}

impl NodeClass {
    pub fn short(self) -> &'static str {
        match self {
            NodeClass::ExpandedRegular => "ER",
            NodeClass::ExpandedBypassed => "EB",
            NodeClass::SurplusRegular => "SR",
            NodeClass::SurplusGood => "SG",
            NodeClass::Goal => "Goal",
        }
    }
}

/// Classifies one node from its final status.
pub fn classify_node(is_goal: bool, in_open: bool, phase: Phase) -> NodeClass {
    match (is_goal, in_open, phase) {
        (true, _, _) => NodeClass::Goal,
        (false, true, Phase::FullyEvaluated) => NodeClass::SurplusRegular,
        (false, true, _) => NodeClass::SurplusGood,
        (false, false, Phase::BypassedH2) => NodeClass::ExpandedBypassed,
        (false, false, _) => NodeClass::ExpandedRegular,
    }
}

/// Search bookkeeping for one state.
#[derive(Debug, Clone)]
pub struct SearchNode<S> {
    pub state: S,
    pub g: Cost,
    pub parent: Option<usize>,
    /// Cost of the operator from `parent`.
    pub edge_cost: Cost,
    pub h1: Option<Cost>,
    pub h2: Option<Cost>,
    /// Bounds from heuristic bypassing; exact once a value is evaluated.
    pub bounds1: HbpBounds,
    pub bounds2: HbpBounds,
    pub phase: Phase,
    pub open_cycles: u32,
    /// Generation order, used for FIFO tie-breaking.
    pub seq: u64,
    pub is_goal: bool,
    pub closed: bool,
    pub(crate) expanded_once: bool,
}

impl<S> SearchNode<S> {
    pub(crate) fn new(state: S, g: Cost, parent: Option<usize>, edge_cost: Cost, seq: u64) -> Self {
        SearchNode {
            state,
            g,
            parent,
            edge_cost,
            h1: None,
            h2: None,
            bounds1: HbpBounds::UNKNOWN,
            bounds2: HbpBounds::UNKNOWN,
            phase: Phase::AwaitingH2,
            open_cycles: 0,
            seq,
            is_goal: false,
            closed: false,
            expanded_once: false,
        }
    }

    /// `h2_lower` when `h1` was skipped in favour of a bound on `h2`.
    pub fn h2_lower(&self) -> Option<Cost> {
        (self.h2.is_none() && self.bounds2.lower > 0).then_some(self.bounds2.lower)
    }

    /// Heuristic part of the OPEN key: the best known lower bound.
    pub fn h_key(&self) -> Cost {
        self.h1
            .unwrap_or(0)
            .max(self.h2.unwrap_or(0))
            .max(self.bounds1.lower)
            .max(self.bounds2.lower)
    }

    pub fn f_key(&self) -> Cost {
        self.g + self.h_key()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_table() {
        use NodeClass::*;
        assert_eq!(classify_node(false, true, Phase::AwaitingH2), SurplusGood);
        assert_eq!(classify_node(false, true, Phase::FullyEvaluated), SurplusRegular);
        assert_eq!(classify_node(false, false, Phase::FullyEvaluated), ExpandedRegular);
        assert_eq!(classify_node(false, false, Phase::BypassedH2), ExpandedBypassed);
        assert_eq!(classify_node(true, true, Phase::AwaitingH2), Goal);
        assert_eq!(classify_node(true, false, Phase::FullyEvaluated), Goal);
    }

    #[test]
    fn key_uses_best_known_bound() {
        let mut n = SearchNode::new((), 3, None, 0, 0);
        n.h1 = Some(4);
        assert_eq!(n.f_key(), 7);
        n.bounds2 = HbpBounds { lower: 6, upper: 9 };
        assert_eq!(n.f_key(), 9);
        n.h2 = Some(8);
        assert_eq!(n.f_key(), 11);
    }
}
