use crate::Cost;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObDecision {
    /// The node would be the next one popped anyway; skip the OPEN cycle.
    BypassOpen,
    Insert,
}

/// OPEN bypassing test: `f_new ≤ f_best`, with an empty OPEN counting as
/// `f_best = ∞`.
pub fn ob_check(f_new: Cost, f_best: Option<Cost>) -> ObDecision {
    match f_best {
        Some(best) if f_new > best => ObDecision::Insert,
        _ => ObDecision::BypassOpen,
    }
}

/// Interval known to contain a heuristic value.
///
/// An evaluated value is the degenerate interval `[h, h]`; an unknown value
/// is `[0, ∞)` with `upper == Cost::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HbpBounds {
    pub lower: Cost,
    pub upper: Cost,
}

impl HbpBounds {
    pub const UNKNOWN: HbpBounds = HbpBounds {
        lower: 0,
        upper: Cost::MAX,
    };

    pub fn exact(value: Cost) -> Self {
        HbpBounds {
            lower: value,
            upper: value,
        }
    }

    pub fn contains(&self, value: Cost) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn intersect(&self, other: &HbpBounds) -> HbpBounds {
        let lower = self.lower.max(other.lower);
        let upper = self.upper.min(other.upper);
        if lower <= upper {
            HbpBounds { lower, upper }
        } else {
            *self
        }
    }
}

/// Bounds on a child's heuristic value from its parent's, across an operator
/// of cost `op_cost`: `[h(p) - C, h(p) + C]`, floored at zero.
///
/// Requires a bidirectional operator and a consistent heuristic; returns
/// `None` otherwise.
pub fn hbp_bounds(
    parent: HbpBounds,
    op_cost: Cost,
    bidirectional: bool,
    consistent: bool,
) -> Option<HbpBounds> {
    if !bidirectional || !consistent {
        return None;
    }
    Some(HbpBounds {
        lower: parent.lower.saturating_sub(op_cost),
        upper: parent.upper.saturating_add(op_cost),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LazyHbp {
    /// `upper(h1) < lower(h2)`: skip `h1`, enter OPEN with `g + lower(h2)`.
    SkipH1UseLowerH2 { h2_lower: Cost },
    EvaluateH1,
}

/// Heuristic bypassing at generation time under lazy evaluation.
pub fn hbp_apply_lazy(h1: Option<HbpBounds>, h2: Option<HbpBounds>) -> LazyHbp {
    match (h1, h2) {
        (Some(b1), Some(b2)) if b1.upper < b2.lower => LazyHbp::SkipH1UseLowerH2 {
            h2_lower: b2.lower,
        },
        _ => LazyHbp::EvaluateH1,
    }
}

/// After `h1` is known, `h2` is unnecessary when `upper(h2) ≤ h1`.
pub fn hbp_h2_redundant(h1_value: Cost, h2: Option<HbpBounds>) -> bool {
    h2.is_some_and(|b| b.upper <= h1_value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxHbp {
    /// `upper(h1) ≤ lower(h2)`: `h2` is surely the maximum.
    SkipH1,
    /// `upper(h2) ≤ lower(h1)`: `h1` is surely the maximum.
    SkipH2,
    EvaluateBoth,
}

/// Heuristic bypassing for eager maximisation.
pub fn hbp_apply_max(h1: Option<HbpBounds>, h2: Option<HbpBounds>) -> MaxHbp {
    match (h1, h2) {
        (Some(b1), Some(b2)) if b1.upper <= b2.lower => MaxHbp::SkipH1,
        (Some(b1), Some(b2)) if b2.upper <= b1.lower => MaxHbp::SkipH2,
        _ => MaxHbp::EvaluateBoth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ob_examples() {
        assert_eq!(ob_check(10, Some(10)), ObDecision::BypassOpen);
        assert_eq!(ob_check(11, Some(10)), ObDecision::Insert);
        assert_eq!(ob_check(11, None), ObDecision::BypassOpen);
    }

    #[test]
    fn unit_chain_example() {
        // a: h1 = 6, h2 = 10; all operators cost 1
        let b1 = hbp_bounds(HbpBounds::exact(6), 1, true, true).unwrap();
        let b2 = hbp_bounds(HbpBounds::exact(10), 1, true, true).unwrap();
        assert_eq!((b1.lower, b1.upper), (5, 7));
        assert_eq!((b2.lower, b2.upper), (9, 11));
        assert_eq!(hbp_apply_max(Some(b1), Some(b2)), MaxHbp::SkipH1);
        assert_eq!(
            hbp_apply_lazy(Some(b1), Some(b2)),
            LazyHbp::SkipH1UseLowerH2 { h2_lower: 9 }
        );

        // c: h1 bound carried from b (≤ 8), h2(c) = 8 evaluated
        let c1 = hbp_bounds(b1, 1, true, true).unwrap();
        assert_eq!(c1.upper, 8);
        assert_eq!(hbp_apply_max(Some(c1), Some(HbpBounds::exact(8))), MaxHbp::SkipH1);

        // d: h1 ≤ 9 but h2(d) = 8, so h1 could be the maximum
        let d1 = hbp_bounds(c1, 1, true, true).unwrap();
        assert_eq!(d1.upper, 9);
        assert_eq!(
            hbp_apply_max(Some(d1), Some(HbpBounds::exact(8))),
            MaxHbp::EvaluateBoth
        );
    }

    #[test]
    fn lazy_evaluates_h1_when_bounds_overlap() {
        let b1 = HbpBounds { lower: 7, upper: 9 };
        let b2 = HbpBounds { lower: 7, upper: 9 };
        assert_eq!(hbp_apply_lazy(Some(b1), Some(b2)), LazyHbp::EvaluateH1);
        assert_eq!(hbp_apply_lazy(None, Some(b2)), LazyHbp::EvaluateH1);
        // strict for lazy, non-strict for max
        let touching = HbpBounds { lower: 9, upper: 12 };
        assert_eq!(hbp_apply_lazy(Some(b1), Some(touching)), LazyHbp::EvaluateH1);
        assert_eq!(hbp_apply_max(Some(b1), Some(touching)), MaxHbp::SkipH1);
    }

    #[test]
    fn preconditions_and_degenerate_costs() {
        assert_eq!(hbp_bounds(HbpBounds::exact(4), 1, false, true), None);
        assert_eq!(hbp_bounds(HbpBounds::exact(4), 1, true, false), None);
        assert_eq!(
            hbp_bounds(HbpBounds::exact(4), 0, true, true),
            Some(HbpBounds::exact(4))
        );
        assert_eq!(
            hbp_bounds(HbpBounds::exact(2), 5, true, true),
            Some(HbpBounds { lower: 0, upper: 7 })
        );
        assert_eq!(
            hbp_bounds(HbpBounds::UNKNOWN, 5, true, true),
            Some(HbpBounds::UNKNOWN)
        );
    }

    #[test]
    fn redundant_h2_after_h1() {
        assert!(hbp_h2_redundant(9, Some(HbpBounds { lower: 3, upper: 9 })));
        assert!(!hbp_h2_redundant(8, Some(HbpBounds { lower: 3, upper: 9 })));
        assert!(!hbp_h2_redundant(8, None));
    }
}
