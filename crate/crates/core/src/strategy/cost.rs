use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::search::NodeClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostMode {
    /// Parameters are constants in abstract time units. Runs are deterministic.
    Fixed,
    /// `t1` and `t2` are replaced by the running means of observed evaluation
    /// times in microseconds as the search progresses; the configured values
    /// serve until the first observation.
    Measured,
}

/// Time parameters of the meta-reasoning model.
///
/// `t1`, `t2`: time per evaluation of `h1`, `h2`. `t_o`: constant part of an
/// OPEN operation. `tau`: scale of the logarithmic part, so one OPEN
/// operation costs `t_o + tau * ln(N_o)`. `t_c`: time to generate the
/// children of a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    pub mode: CostMode,
    pub t1: f64,
    pub t2: f64,
    pub t_o: f64,
    pub t_c: f64,
    pub tau: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::fixed(1.0, 10.0, 0.1, 0.0, 0.0)
    }
}

impl CostModel {
    pub fn fixed(t1: f64, t2: f64, t_o: f64, t_c: f64, tau: f64) -> Self {
        CostModel {
            mode: CostMode::Fixed,
            t1,
            t2,
            t_o,
            t_c,
            tau,
        }
    }

    pub fn measured(self) -> Self {
        CostModel {
            mode: CostMode::Measured,
            ..self
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.t1, self.t2, self.t_o, self.t_c, self.tau]
            .iter()
            .all(|v| v.is_finite() && *v >= 0.0)
    }

    /// Time of one OPEN insert or pop with `n_open` entries.
    pub fn open_op_time(&self, n_open: usize) -> f64 {
        self.t_o + self.tau * (n_open.max(1) as f64).ln()
    }

    /// `t_d`: evaluate `h2` and re-insert the node.
    pub fn delay_time(&self, n_open: usize) -> f64 {
        self.t2 + self.open_op_time(n_open)
    }

    /// `t_e`: pop the node, generate its `b` children, evaluate `h1` on each
    /// and insert them.
    pub fn expand_time(&self, branching: usize, n_open: usize) -> f64 {
        let b = branching as f64;
        let t_o = self.open_op_time(n_open);
        t_o + self.t_c + b * self.t1 + b * t_o
    }

    /// Abstract run time implied by a set of counters.
    pub fn model_time(&self, counters: &crate::search::Counters) -> f64 {
        self.t1 * counters.h1_evals as f64
            + self.t2 * counters.h2_evals as f64
            + self.t_o * (counters.open_pushes + counters.open_pops) as f64
            + self.t_c * counters.expanded as f64
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CostModelParseError {
    #[error("cost model must start with `fixed:` or `measured:`")]
    Mode,
    #[error("malformed cost model parameter `{0}`")]
    Parameter(String),
    #[error("unknown cost model parameter `{0}`")]
    Unknown(String),
    #[error("cost model parameters must be finite and non-negative")]
    Range,
}

impl FromStr for CostModel {
    type Err = CostModelParseError;

    /// Parses `fixed:t1=1,t2=10,to=0.1,tc=0,tau=0` (or `measured:...`).
    /// Omitted parameters keep their default values.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mode, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut model = CostModel::default();
        model.mode = match mode.trim() {
            "fixed" => CostMode::Fixed,
            "measured" => CostMode::Measured,
            _ => return Err(CostModelParseError::Mode),
        };
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| CostModelParseError::Parameter(part.to_string()))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CostModelParseError::Parameter(part.to_string()))?;
            match name.trim() {
                "t1" => model.t1 = value,
                "t2" => model.t2 = value,
                "to" | "t_o" => model.t_o = value,
                "tc" | "t_c" => model.t_c = value,
                "tau" => model.tau = value,
                other => return Err(CostModelParseError::Unknown(other.to_string())),
            }
        }
        if !model.is_valid() {
            return Err(CostModelParseError::Range);
        }
        Ok(model)
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            CostMode::Fixed => "fixed",
            CostMode::Measured => "measured",
        };
        write!(
            f,
            "{mode}:t1={},t2={},to={},tc={},tau={}",
            self.t1, self.t2, self.t_o, self.t_c, self.tau
        )
    }
}

/// Running means of observed heuristic evaluation times (microseconds).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeasuredTimes {
    pub h1_total_us: f64,
    pub h1_samples: u64,
    pub h2_total_us: f64,
    pub h2_samples: u64,
}

impl MeasuredTimes {
    pub fn record_h1(&mut self, micros: f64) {
        self.h1_total_us += micros;
        self.h1_samples += 1;
    }

    pub fn record_h2(&mut self, micros: f64) {
        self.h2_total_us += micros;
        self.h2_samples += 1;
    }

    pub fn mean_h1(&self) -> Option<f64> {
        (self.h1_samples > 0).then(|| self.h1_total_us / self.h1_samples as f64)
    }

    pub fn mean_h2(&self) -> Option<f64> {
        (self.h2_samples > 0).then(|| self.h2_total_us / self.h2_samples as f64)
    }

    /// The model with `t1`/`t2` replaced by the observed means, if any.
    pub fn apply(&self, base: &CostModel) -> CostModel {
        CostModel {
            t1: self.mean_h1().unwrap_or(base.t1),
            t2: self.mean_h2().unwrap_or(base.t2),
            ..*base
        }
    }
}

/// How two heuristics are combined in the overhead table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combination {
    Max,
    Lazy,
}

/// A linear combination `t1·a + t2·b + t_o·c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OverheadTerms {
    pub t1: u32,
    pub t2: u32,
    pub t_o: u32,
}

impl OverheadTerms {
    pub fn evaluate(&self, cost: &CostModel) -> f64 {
        self.t1 as f64 * cost.t1 + self.t2 as f64 * cost.t2 + self.t_o as f64 * cost.t_o
    }
}

/// Per-node time overhead of `A*max` and Lazy A* by node class.
///
/// Only the three classes of the table (ER, SR, SG) have an entry.
pub fn overhead_terms(class: NodeClass, combination: Combination) -> Option<OverheadTerms> {
    let terms = |t1, t2, t_o| Some(OverheadTerms { t1, t2, t_o });
    match (combination, class) {
        (Combination::Max, NodeClass::ExpandedRegular) => terms(1, 1, 2),
        (Combination::Max, NodeClass::SurplusRegular) => terms(1, 1, 1),
        (Combination::Max, NodeClass::SurplusGood) => terms(1, 1, 1),
        (Combination::Lazy, NodeClass::ExpandedRegular) => terms(1, 1, 4),
        (Combination::Lazy, NodeClass::SurplusRegular) => terms(1, 1, 3),
        (Combination::Lazy, NodeClass::SurplusGood) => terms(1, 0, 1),
        _ => None,
    }
}

/// Predicted time overhead of one node of `class`, in the model's units.
pub fn predicted_overhead(
    class: NodeClass,
    combination: Combination,
    cost: &CostModel,
) -> Option<f64> {
    overhead_terms(class, combination).map(|t| t.evaluate(cost))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_model() -> CostModel {
        CostModel::fixed(1.0, 10.0, 0.1, 0.0, 0.0)
    }

    #[test]
    fn overhead_examples() {
        let m = table_model();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(
            predicted_overhead(NodeClass::SurplusGood, Combination::Lazy, &m).unwrap(),
            1.1
        ));
        assert!(close(
            predicted_overhead(NodeClass::ExpandedRegular, Combination::Lazy, &m).unwrap(),
            11.4
        ));
        assert!(close(
            predicted_overhead(NodeClass::SurplusGood, Combination::Max, &m).unwrap(),
            11.1
        ));
        assert_eq!(predicted_overhead(NodeClass::Goal, Combination::Max, &m), None);
    }

    #[test]
    fn parse_cost_model() {
        let m: CostModel = "fixed:t1=1,t2=8.36,to=0.5,tc=2,tau=0.25".parse().unwrap();
        assert_eq!(m, CostModel::fixed(1.0, 8.36, 0.5, 2.0, 0.25));
        let round: CostModel = m.to_string().parse().unwrap();
        assert_eq!(round, m);
        let measured: CostModel = "measured:t2=3".parse().unwrap();
        assert_eq!(measured.mode, CostMode::Measured);
        assert_eq!(measured.t2, 3.0);
        assert_eq!("fixed:t1=-1".parse::<CostModel>(), Err(CostModelParseError::Range));
        assert_eq!("slow:t1=1".parse::<CostModel>(), Err(CostModelParseError::Mode));
        assert!(matches!(
            "fixed:t9=1".parse::<CostModel>(),
            Err(CostModelParseError::Unknown(_))
        ));
    }

    #[test]
    fn open_time_is_logarithmic_in_open_size() {
        let m = CostModel::fixed(0.0, 0.0, 0.0, 0.0, 2.0);
        assert_eq!(m.open_op_time(1), 0.0);
        assert!((m.open_op_time(100) - 2.0 * 100f64.ln()).abs() < 1e-12);
        // expand time: t_o + t_c + b t1 + b t_o
        let m = CostModel::fixed(3.0, 0.0, 0.5, 7.0, 0.0);
        assert_eq!(m.expand_time(2, 10), 0.5 + 7.0 + 6.0 + 1.0);
        assert_eq!(m.delay_time(10), 0.5);
    }

    #[test]
    fn measured_means_override_configured_times() {
        let base = CostModel::fixed(1.0, 2.0, 0.0, 0.0, 0.0).measured();
        let mut times = MeasuredTimes::default();
        assert_eq!(times.apply(&base), base);
        times.record_h2(4.0);
        times.record_h2(6.0);
        let m = times.apply(&base);
        assert_eq!((m.t1, m.t2), (1.0, 5.0));
    }
}
