//! How the two heuristics are combined during search.

pub mod bypass;
pub mod cost;
pub mod decision;
pub mod ph;

use std::fmt;

pub use bypass::{
    hbp_apply_lazy, hbp_apply_max, hbp_bounds, ob_check, HbpBounds, LazyHbp, MaxHbp, ObDecision,
};
pub use cost::{predicted_overhead, Combination, CostMode, CostModel, MeasuredTimes, OverheadTerms};
pub use decision::{rational_decide, Decision, DecisionInput, DecisionPolicy, DecisionRule};
pub use ph::{update_ph, PhEstimator, PhModel};

use crate::search::Phase;

/// Parameters of the rational (value-of-information) variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalConfig {
    pub policy: DecisionPolicy,
    pub cost_model: CostModel,
    pub ph: PhModel,
}

impl RationalConfig {
    pub fn new(rule: DecisionRule) -> Self {
        RationalConfig {
            policy: DecisionPolicy::Rule(rule),
            cost_model: CostModel::default(),
            ph: PhModel::default(),
        }
    }

    pub fn with_policy(policy: DecisionPolicy) -> Self {
        RationalConfig {
            policy,
            ..RationalConfig::new(DecisionRule::General)
        }
    }

    pub fn cost_model(mut self, cost_model: CostModel) -> Self {
        self.cost_model = cost_model;
        self
    }

    pub fn ph(mut self, ph: PhModel) -> Self {
        self.ph = ph;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// A* guided by `h1` alone.
    AStarH1,
    /// A* guided by `h2` alone.
    AStarH2,
    /// Both heuristics on every generated node, keyed by their maximum.
    AStarMax,
    /// `h1` at generation, `h2` when the node first reaches the top of OPEN.
    Lazy,
    /// Lazy evaluation where each `h2` evaluation is subject to a decision.
    RationalLazy(RationalConfig),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::AStarH1 => "h1",
            Strategy::AStarH2 => "h2",
            Strategy::AStarMax => "max",
            Strategy::Lazy => "lazy",
            Strategy::RationalLazy(_) => "rational",
        }
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self, Strategy::Lazy | Strategy::RationalLazy(_))
    }

    pub fn uses_h1(&self) -> bool {
        !matches!(self, Strategy::AStarH2)
    }

    pub fn uses_h2(&self) -> bool {
        !matches!(self, Strategy::AStarH1)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::RationalLazy(cfg) => f.pad(&format!("rational-{}", cfg.policy.name())),
            other => f.pad(other.name()),
        }
    }
}

/// Optional enhancements to the basic loop.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Enhancements {
    /// Skip OPEN cycles for nodes that would be popped next anyway.
    pub open_bypass: bool,
    /// Skip heuristic evaluations proven redundant by parent bounds.
    pub heuristic_bypass: bool,
}

impl Enhancements {
    pub const NONE: Enhancements = Enhancements {
        open_bypass: false,
        heuristic_bypass: false,
    };

    pub fn ob() -> Self {
        Enhancements {
            open_bypass: true,
            ..Enhancements::NONE
        }
    }

    pub fn hbp() -> Self {
        Enhancements {
            heuristic_bypass: true,
            ..Enhancements::NONE
        }
    }

    pub fn suffix(&self) -> String {
        let mut s = String::new();
        if self.open_bypass {
            s.push_str("+ob");
        }
        if self.heuristic_bypass {
            s.push_str("+hbp");
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reemerge {
    EvaluateH2AndReinsert,
    Expand,
}

/// What to do with a node popped as best. `decide` is consulted only for a
/// node still awaiting `h2`; plain Lazy A* passes a closure returning
/// [`Decision::Compute`].
pub fn lazy_reemerge(phase: Phase, decide: impl FnOnce() -> Decision) -> Reemerge {
    match phase {
        Phase::AwaitingH2 => match decide() {
            Decision::Compute => Reemerge::EvaluateH2AndReinsert,
            Decision::Bypass => Reemerge::Expand,
        },
        Phase::FullyEvaluated | Phase::BypassedH2 => Reemerge::Expand,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reemerge_examples() {
        assert_eq!(
            lazy_reemerge(Phase::FullyEvaluated, || unreachable!()),
            Reemerge::Expand
        );
        assert_eq!(
            lazy_reemerge(Phase::AwaitingH2, || Decision::Compute),
            Reemerge::EvaluateH2AndReinsert
        );
        assert_eq!(
            lazy_reemerge(Phase::AwaitingH2, || Decision::Bypass),
            Reemerge::Expand
        );
    }

    #[test]
    fn display_names() {
        assert_eq!(Strategy::Lazy.to_string(), "lazy");
        let r = Strategy::RationalLazy(RationalConfig::new(DecisionRule::Ratio));
        assert_eq!(r.to_string(), "rational-ratio");
        assert_eq!(Enhancements { open_bypass: true, heuristic_bypass: true }.suffix(), "+ob+hbp");
    }
}
