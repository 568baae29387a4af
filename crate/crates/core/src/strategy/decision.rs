//! The compute-or-bypass decision for a node that re-emerges from OPEN with
//! `h2` not yet evaluated.
//!
//! Computing `h2` is wasted when it does not prune the node (regret `t_d`);
//! bypassing it is wasted when it would have pruned the node (regret
//! `t_e + (b - 1)·t_d`). With `p_h` the probability of pruning, `h2` is
//! evaluated iff
//!
//! ```text
//! (1 - p_h)·t_d < p_h·(t_e + (b - 1)·t_d)     ⇔     (1 - p_h·b)·t_d < p_h·t_e
//! ```
//!
//! and always when `p_h·b ≥ 1`. The three rules differ only in how `t_d`
//! and `t_e` are approximated. All comparisons are kept in multiplied-out
//! form so no division by `1 - p_h·b` is needed.

use std::fmt;
use std::str::FromStr;

use super::cost::CostModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Compute,
    Bypass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionRule {
    /// Full model: `t_d = t2 + t_o`, `t_e = t_o + t_c + b·t1 + b·t_o`.
    General,
    /// OPEN operations dominate `t_e`: `t2 < τ·p_h/(1 - p_h·b)·(b + 1)·ln N_o`.
    LogOpen,
    /// Heuristic times dominate: `t2/t1 < p_h·b/(1 - p_h·b)`.
    Ratio,
}

impl DecisionRule {
    pub fn name(self) -> &'static str {
        match self {
            DecisionRule::General => "general",
            DecisionRule::LogOpen => "logopen",
            DecisionRule::Ratio => "ratio",
        }
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecisionRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "general" => Ok(DecisionRule::General),
            "logopen" | "log-open" | "log_open" => Ok(DecisionRule::LogOpen),
            "ratio" => Ok(DecisionRule::Ratio),
            other => Err(format!("unknown decision rule `{other}`")),
        }
    }
}

/// How a rational search decides at re-emergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionPolicy {
    Rule(DecisionRule),
    /// Always evaluate `h2` (behaves exactly like Lazy A*).
    AlwaysCompute,
    /// Never evaluate `h2` at re-emergence.
    AlwaysBypass,
}

impl DecisionPolicy {
    pub fn name(self) -> &'static str {
        match self {
            DecisionPolicy::Rule(r) => r.name(),
            DecisionPolicy::AlwaysCompute => "compute",
            DecisionPolicy::AlwaysBypass => "bypass",
        }
    }
}

/// Local information available when the decision is made.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionInput {
    /// `b(n)`: number of successors of the node.
    pub branching: usize,
    /// `N_o`: OPEN size, counting the node just popped.
    pub open_size: usize,
}

/// Applies `rule` to one node.
pub fn rational_decide(
    input: DecisionInput,
    cost: &CostModel,
    ph: f64,
    rule: DecisionRule,
) -> Decision {
    let b = input.branching as f64;
    let slack = 1.0 - ph * b;
    if slack <= 0.0 {
        return Decision::Compute;
    }
    let compute = match rule {
        DecisionRule::General => {
            let t_d = cost.delay_time(input.open_size);
            let t_e = cost.expand_time(input.branching, input.open_size);
            slack * t_d < ph * t_e
        }
        DecisionRule::LogOpen => {
            let log_open = (input.open_size.max(1) as f64).ln();
            slack * cost.t2 < cost.tau * ph * (b + 1.0) * log_open
        }
        DecisionRule::Ratio => slack * cost.t2 < ph * b * cost.t1,
    };
    if compute {
        Decision::Compute
    } else {
        Decision::Bypass
    }
}

pub fn decide(policy: DecisionPolicy, input: DecisionInput, cost: &CostModel, ph: f64) -> Decision {
    match policy {
        DecisionPolicy::Rule(rule) => rational_decide(input, cost, ph, rule),
        DecisionPolicy::AlwaysCompute => Decision::Compute,
        DecisionPolicy::AlwaysBypass => Decision::Bypass,
    }
}

/// Expected regret of (computing, bypassing) `h2`.
pub fn expected_regret(ph: f64, branching: usize, t_d: f64, t_e: f64) -> (f64, f64) {
    let b = branching as f64;
    ((1.0 - ph) * t_d, ph * (t_e + (b - 1.0) * t_d))
}

/// Regret-minimising choice, straight from the regret table.
pub fn regret_decision(ph: f64, branching: usize, t_d: f64, t_e: f64) -> Decision {
    let (compute, bypass) = expected_regret(ph, branching, t_d, t_e);
    if compute < bypass {
        Decision::Compute
    } else {
        Decision::Bypass
    }
}

/// Rearranged form `(1 - b·p_h)·t_d < p_h·t_e`.
pub fn rearranged_decision(ph: f64, branching: usize, t_d: f64, t_e: f64) -> Decision {
    if (1.0 - branching as f64 * ph) * t_d < ph * t_e {
        Decision::Compute
    } else {
        Decision::Bypass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(b: usize, n: usize) -> DecisionInput {
        DecisionInput {
            branching: b,
            open_size: n,
        }
    }

    #[test]
    fn high_ph_times_b_always_computes() {
        let cost = CostModel::fixed(1.0, 1e9, 0.0, 0.0, 0.0);
        for rule in [DecisionRule::General, DecisionRule::LogOpen, DecisionRule::Ratio] {
            assert_eq!(rational_decide(input(2, 5), &cost, 0.6, rule), Decision::Compute);
        }
    }

    #[test]
    fn zero_ph_always_bypasses() {
        let cost = CostModel::fixed(1.0, 0.5, 0.3, 0.2, 1.0);
        for rule in [DecisionRule::General, DecisionRule::LogOpen, DecisionRule::Ratio] {
            assert_eq!(rational_decide(input(3, 50), &cost, 0.0, rule), Decision::Bypass);
        }
    }

    #[test]
    fn ratio_rule_with_measured_planning_ratio() {
        // threshold p·b/(1-p·b) = 0.5/0.5 = 1, and 8.36 < 1 is false
        let cost = CostModel::fixed(1.0, 8.36, 0.0, 0.0, 0.0);
        assert_eq!(
            rational_decide(input(2, 10), &cost, 0.25, DecisionRule::Ratio),
            Decision::Bypass
        );
        let cheap = CostModel::fixed(1.0, 0.9, 0.0, 0.0, 0.0);
        assert_eq!(
            rational_decide(input(2, 10), &cheap, 0.25, DecisionRule::Ratio),
            Decision::Compute
        );
    }

    #[test]
    fn log_open_rule_grows_with_open_size() {
        let cost = CostModel::fixed(0.0, 5.0, 0.0, 0.0, 1.0);
        // threshold τ·p/(1-pb)·(b+1)·ln N = 0.2/0.6·3·ln N = ln N
        let d = |n| rational_decide(input(2, n), &cost, 0.2, DecisionRule::LogOpen);
        assert_eq!(d(100), Decision::Bypass); // ln 100 ≈ 4.6
        assert_eq!(d(200), Decision::Compute); // ln 200 ≈ 5.3
    }

    #[test]
    fn general_rule_uses_expanded_times() {
        // t_d = 10 + 1 = 11, t_e = 1 + 2 + 2·1 + 2·1 = 7; (1 - 0.4)·11 = 6.6 vs 0.2·7 = 1.4
        let cost = CostModel::fixed(1.0, 10.0, 1.0, 2.0, 0.0);
        assert_eq!(
            rational_decide(input(2, 9), &cost, 0.2, DecisionRule::General),
            Decision::Bypass
        );
        // t2 = 0.5: t_d = 1.5, 0.6·1.5 = 0.9 < 1.4
        let cost = CostModel::fixed(1.0, 0.5, 1.0, 2.0, 0.0);
        assert_eq!(
            rational_decide(input(2, 9), &cost, 0.2, DecisionRule::General),
            Decision::Compute
        );
    }

    #[test]
    fn forced_policies() {
        let cost = CostModel::default();
        assert_eq!(decide(DecisionPolicy::AlwaysCompute, input(0, 1), &cost, 0.0), Decision::Compute);
        assert_eq!(decide(DecisionPolicy::AlwaysBypass, input(9, 1), &cost, 1.0), Decision::Bypass);
    }

    #[test]
    fn regret_table_entries() {
        let (c, b) = expected_regret(0.5, 3, 2.0, 10.0);
        assert_eq!(c, 1.0);
        assert_eq!(b, 0.5 * (10.0 + 2.0 * 2.0));
    }
}
