/// Smoothed estimate of `p_h`, the probability that evaluating `h2` on a
/// re-emerging node prunes it.
///
/// `(A + p_init·k) / (B + k)`, where `B` counts states whose `h2` was
/// computed and `A` those among them not expanded (yet).
pub fn update_ph(helpful: u64, computed: u64, k: f64, p_init: f64) -> f64 {
    if computed == 0 {
        return p_init;
    }
    (helpful as f64 + p_init * k) / (computed as f64 + k)
}

/// Adaptive `p_h` estimator state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhEstimator {
    helpful: u64,
    computed: u64,
    pub k: f64,
    pub p_init: f64,
}

impl Default for PhEstimator {
    fn default() -> Self {
        PhEstimator::new(1000.0, 0.5)
    }
}

impl PhEstimator {
    pub fn new(k: f64, p_init: f64) -> Self {
        PhEstimator {
            helpful: 0,
            computed: 0,
            k,
            p_init,
        }
    }

    /// `A`: states with `h2` computed that have not been expanded.
    pub fn helpful(&self) -> u64 {
        self.helpful
    }

    /// `B`: states with `h2` computed.
    pub fn computed(&self) -> u64 {
        self.computed
    }

    pub fn estimate(&self) -> f64 {
        update_ph(self.helpful, self.computed, self.k, self.p_init)
    }

    /// `h2` was computed for a state not yet expanded.
    pub fn on_h2_computed(&mut self) {
        self.computed += 1;
        self.helpful += 1;
    }

    /// A state whose `h2` was computed is expanded for the first time.
    pub fn on_expanded(&mut self) {
        debug_assert!(self.helpful > 0);
        self.helpful = self.helpful.saturating_sub(1);
    }
}

/// Where the rational decision takes `p_h` from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhModel {
    Fixed(f64),
    Adaptive(PhEstimator),
}

impl Default for PhModel {
    fn default() -> Self {
        PhModel::Adaptive(PhEstimator::default())
    }
}

impl PhModel {
    pub fn estimate(&self) -> f64 {
        match self {
            PhModel::Fixed(p) => *p,
            PhModel::Adaptive(est) => est.estimate(),
        }
    }

    pub(crate) fn on_h2_computed(&mut self) {
        if let PhModel::Adaptive(est) = self {
            est.on_h2_computed();
        }
    }

    pub(crate) fn on_expanded(&mut self) {
        if let PhModel::Adaptive(est) = self {
            est.on_expanded();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn no_observations_returns_prior() {
        assert_eq!(update_ph(0, 0, 1000.0, 0.5), 0.5);
        assert_eq!(update_ph(7, 0, 1000.0, 0.5), 0.5);
    }

    #[test]
    fn weighted_average_examples() {
        assert_eq!(update_ph(0, 1000, 1000.0, 0.5), 0.25);
        assert_eq!(update_ph(1000, 1000, 1000.0, 0.5), 0.75);
    }

    #[test]
    fn estimator_tracks_a_and_b() {
        let mut est = PhEstimator::default();
        est.on_h2_computed();
        est.on_h2_computed();
        est.on_expanded();
        assert_eq!((est.helpful(), est.computed()), (1, 2));
        assert_eq!(est.estimate(), (1.0 + 500.0) / 1002.0);
    }

    proptest! {
        #[test]
        fn helpful_observation_never_lowers_estimate(a in 0u64..5000, extra in 0u64..5000, k in 0.0f64..5000.0, p in 0.0f64..=1.0) {
            let b = a + extra;
            let before = update_ph(a, b, k, p);
            prop_assert!(update_ph(a + 1, b + 1, k, p) >= before - 1e-15);
            prop_assert!(update_ph(a, b + 1, k, p) <= before + 1e-15);
        }
    }
}
