//! Best-first heuristic search that combines two admissible heuristics.
//!
//! The crate provides an A* engine whose evaluation of the second, more
//! expensive heuristic can be eager (`A*max`), lazy (evaluated only when a
//! node reaches the top of OPEN) or rationally controlled (a myopic
//! value-of-information test decides whether the evaluation is worth its
//! time). OPEN bypassing and heuristic bypassing are available as
//! enhancements, and every decision is counted.
//!
//! Modules:
//!
//! * [`search`]: the generic search loop, OPEN list, tie-breaking, counters
//!   and termination-time node classification.
//! * [`strategy`]: evaluation strategies, decision rules, cost model,
//!   helpfulness estimator and the bypassing checks.
//! * [`heuristic`]: Manhattan-family heuristics, bounded lookahead and
//!   pattern databases.
//! * [`domain`]: sliding-tile puzzles (unit and weighted) and a synthetic
//!   tree with ground-truth distances.
//! * [`oracle`]: a heuristic-free uniform-cost solver and result comparison.
//! * [`bench`]: config-driven experiments with CSV and markdown output.
//!
//! ```
//! use lazy_astar::domain::tile::{CostMode, TilePuzzle, TileState};
//! use lazy_astar::heuristic::manhattan::AxisDistance;
//! use lazy_astar::search::{solve, SearchOptions};
//! use lazy_astar::strategy::Strategy;
//!
//! let start = TileState::from_tiles(3, 3, &[1, 4, 2, 3, 0, 5, 6, 7, 8]).unwrap();
//! let puzzle = TilePuzzle::new(start, CostMode::Unit);
//! let dx = AxisDistance::columns(3, 3);
//! let dy = AxisDistance::rows(3, 3);
//! let result = solve(&puzzle, &dx, &dy, &Strategy::Lazy, &SearchOptions::default()).unwrap();
//! assert_eq!(result.cost, 2);
//! ```

pub mod bench;
pub mod domain;
pub mod heuristic;
pub mod oracle;
pub mod search;
pub mod strategy;

/// Path and heuristic costs. All operator costs are non-negative integers.
pub type Cost = u64;
