use std::ops::AddAssign;

/// Event counts collected by one search run.
///
/// `good1` is the number of surplus nodes whose `h2` was never computed
/// (filled in at classification time, equal to `sg`); `good2` counts
/// rational bypass decisions. `bad` counts nodes that went through at least
/// two OPEN cycles. `er`, `sr`, `sg`, `eb` and `goals` are the sizes of the
/// termination-time node classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Counters {
    pub generated: u64,
    pub expanded: u64,
    pub reopened: u64,
    pub h1_evals: u64,
    pub h2_evals: u64,
    pub good1: u64,
    pub good2: u64,
    pub bad: u64,
    pub ob_hits: u64,
    pub hbp1_skips: u64,
    pub hbp2_delays: u64,
    pub open_pushes: u64,
    pub open_pops: u64,
    pub er: u64,
    pub sr: u64,
    pub sg: u64,
    pub eb: u64,
    pub goals: u64,
}

impl Counters {
    /// Column names in the order used by [`Counters::values`].
    pub const NAMES: [&'static str; 18] = [
        "generated",
        "expanded",
        "reopened",
        "h1_evals",
        "h2_evals",
        "good1",
        "good2",
        "bad",
        "ob_hits",
        "hbp1",
        "hbp2",
        "open_pushes",
        "open_pops",
        "er",
        "sr",
        "sg",
        "eb",
        "goals",
    ];

    pub fn values(&self) -> [u64; 18] {
        [
            self.generated,
            self.expanded,
            self.reopened,
            self.h1_evals,
            self.h2_evals,
            self.good1,
            self.good2,
            self.bad,
            self.ob_hits,
            self.hbp1_skips,
            self.hbp2_delays,
            self.open_pushes,
            self.open_pops,
            self.er,
            self.sr,
            self.sg,
            self.eb,
            self.goals,
        ]
    }

    /// Fraction of generated nodes whose `h2` evaluation was saved by laziness.
    pub fn good1_fraction(&self) -> f64 {
        if self.generated == 0 {
            0.0
        } else {
            self.good1 as f64 / self.generated as f64
        }
    }
}

impl AddAssign<&Counters> for Counters {
    fn add_assign(&mut self, rhs: &Counters) {
        self.generated += rhs.generated;
        self.expanded += rhs.expanded;
        self.reopened += rhs.reopened;
        self.h1_evals += rhs.h1_evals;
        self.h2_evals += rhs.h2_evals;
        self.good1 += rhs.good1;
        self.good2 += rhs.good2;
        self.bad += rhs.bad;
        self.ob_hits += rhs.ob_hits;
        self.hbp1_skips += rhs.hbp1_skips;
        self.hbp2_delays += rhs.hbp2_delays;
        self.open_pushes += rhs.open_pushes;
        self.open_pops += rhs.open_pops;
        self.er += rhs.er;
        self.sr += rhs.sr;
        self.sg += rhs.sg;
        self.eb += rhs.eb;
        self.goals += rhs.goals;
    }
}
