//! Admissible heuristics and the evaluation abstraction shared by the search.

pub mod lookahead;
pub mod manhattan;
pub mod pdb;

use std::time::{Duration, Instant};

use crate::Cost;

/// An admissible estimate of the remaining cost from a state to a goal.
///
/// Implementations must return 0 on goal states. Heuristics are immutable
/// once built, so one instance may serve concurrent searches.
pub trait Heuristic<S>: Send + Sync {
    fn evaluate(&self, state: &S) -> Cost;

    /// `|h(s) - h(s')| ≤ c(s, s')` for every edge. Enables heuristic bypassing.
    fn is_consistent(&self) -> bool {
        false
    }

    fn label(&self) -> String;

    /// Label of a heuristic this one dominates (`self(s) ≥ other(s)` for all s).
    fn dominates(&self) -> Option<String> {
        None
    }

    /// Extra time charged to every evaluation when evaluation time is measured.
    fn synthetic_delay(&self) -> Duration {
        Duration::ZERO
    }
}

impl<S, H: Heuristic<S> + ?Sized> Heuristic<S> for &H {
    fn evaluate(&self, state: &S) -> Cost {
        (**self).evaluate(state)
    }
    fn is_consistent(&self) -> bool {
        (**self).is_consistent()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn dominates(&self) -> Option<String> {
        (**self).dominates()
    }
    fn synthetic_delay(&self) -> Duration {
        (**self).synthetic_delay()
    }
}

impl<S, H: Heuristic<S> + ?Sized> Heuristic<S> for Box<H> {
    fn evaluate(&self, state: &S) -> Cost {
        (**self).evaluate(state)
    }
    fn is_consistent(&self) -> bool {
        (**self).is_consistent()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn dominates(&self) -> Option<String> {
        (**self).dominates()
    }
    fn synthetic_delay(&self) -> Duration {
        (**self).synthetic_delay()
    }
}

impl<S, H: Heuristic<S> + ?Sized> Heuristic<S> for std::sync::Arc<H> {
    fn evaluate(&self, state: &S) -> Cost {
        (**self).evaluate(state)
    }
    fn is_consistent(&self) -> bool {
        (**self).is_consistent()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn dominates(&self) -> Option<String> {
        (**self).dominates()
    }
    fn synthetic_delay(&self) -> Duration {
        (**self).synthetic_delay()
    }
}

/// The zero heuristic. Turns A* into uniform-cost search.
#[derive(Debug, Clone, Copy, Default)]
pub struct Zero;

impl<S> Heuristic<S> for Zero {
    fn evaluate(&self, _: &S) -> Cost {
        0
    }
    fn is_consistent(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        "zero".into()
    }
}

/// Heuristic backed by a closure.
pub struct FnHeuristic<F> {
    label: String,
    consistent: bool,
    f: F,
}

impl<F> FnHeuristic<F> {
    pub fn new(label: impl Into<String>, consistent: bool, f: F) -> Self {
        FnHeuristic {
            label: label.into(),
            consistent,
            f,
        }
    }
}

impl<S, F> Heuristic<S> for FnHeuristic<F>
where
    F: Fn(&S) -> Cost + Send + Sync,
{
    fn evaluate(&self, state: &S) -> Cost {
        (self.f)(state)
    }
    fn is_consistent(&self) -> bool {
        self.consistent
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Wraps a heuristic with a synthetic evaluation delay.
///
/// By default the delay is only charged to measured evaluation times, so
/// runs stay fast and deterministic. With [`Timed::spinning`] every
/// evaluation also busy-waits for the delay, which makes wall-clock timings
/// reflect it.
#[derive(Debug, Clone)]
pub struct Timed<H> {
    inner: H,
    delay: Duration,
    spin: bool,
}

impl<H> Timed<H> {
    pub fn new(inner: H, delay: Duration) -> Self {
        Timed {
            inner,
            delay,
            spin: false,
        }
    }

    pub fn spinning(inner: H, delay: Duration) -> Self {
        Timed {
            inner,
            delay,
            spin: true,
        }
    }

    pub fn inner(&self) -> &H {
        &self.inner
    }
}

impl<S, H: Heuristic<S>> Heuristic<S> for Timed<H> {
    fn evaluate(&self, state: &S) -> Cost {
        if self.spin && !self.delay.is_zero() {
            let until = Instant::now() + self.delay;
            while Instant::now() < until {
                std::hint::spin_loop();
            }
        }
        self.inner.evaluate(state)
    }
    fn is_consistent(&self) -> bool {
        self.inner.is_consistent()
    }
    fn label(&self) -> String {
        self.inner.label()
    }
    fn dominates(&self) -> Option<String> {
        self.inner.dominates()
    }
    fn synthetic_delay(&self) -> Duration {
        // a spinning wrapper is already visible in the measured time
        let own = if self.spin { Duration::ZERO } else { self.delay };
        own + self.inner.synthetic_delay()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_delay_wrapper_is_transparent() {
        let base = FnHeuristic::new("sq", true, |x: &u32| (*x as Cost) * 2);
        let timed = Timed::new(&base, Duration::ZERO);
        for x in 0..20u32 {
            assert_eq!(timed.evaluate(&x), base.evaluate(&x));
        }
        assert_eq!(Heuristic::<u32>::label(&timed), "sq");
        assert!(Heuristic::<u32>::is_consistent(&timed));
        assert_eq!(Heuristic::<u32>::synthetic_delay(&timed), Duration::ZERO);
    }

    #[test]
    fn wrapper_preserves_flags_and_reports_delay() {
        let base = FnHeuristic::new("loose", false, |_: &u32| 0);
        let timed = Timed::new(base, Duration::from_micros(250));
        assert!(!Heuristic::<u32>::is_consistent(&timed));
        assert_eq!(Heuristic::<u32>::synthetic_delay(&timed), Duration::from_micros(250));
        let spin = Timed::spinning(Zero, Duration::from_micros(50));
        let t = Instant::now();
        assert_eq!(Heuristic::<u32>::evaluate(&spin, &3), 0);
        assert!(t.elapsed() >= Duration::from_micros(50));
        assert_eq!(Heuristic::<u32>::synthetic_delay(&spin), Duration::ZERO);
    }
}
