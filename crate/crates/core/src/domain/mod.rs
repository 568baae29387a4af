//! Benchmark state spaces.

pub mod instances;
pub mod tile;
pub mod tree;

pub use instances::{format_instances, parse_instances, ParseError};
pub use tile::{CostMode, TileError, TilePuzzle, TileRules, TileState};
pub use tree::{ErrorModel, SyntheticTree, TreeConfig, TreeError, TreeHeuristic};
