//! Solve one 8-puzzle with Lazy A* and print the path and counters.

use lazy_astar::domain::tile::{CostMode, TilePuzzle, TileState};
use lazy_astar::heuristic::manhattan::AxisDistance;
use lazy_astar::search::{solve, Counters, SearchOptions};
use lazy_astar::strategy::Strategy;

fn main() {
    let start = TileState::from_tiles(3, 3, &[7, 2, 4, 5, 0, 6, 8, 3, 1]).expect("solvable board");
    let puzzle = TilePuzzle::new(start, CostMode::Unit);
    let dx = AxisDistance::columns(3, 3);
    let dy = AxisDistance::rows(3, 3);

    let result = solve(&puzzle, &dx, &dy, &Strategy::Lazy, &SearchOptions::default()).expect("solvable");
    println!("optimal cost {} in {} moves", result.cost, result.path.len() - 1);
    for (i, state) in result.path.iter().enumerate() {
        println!("{i:>3}: {state}");
    }
    for (name, value) in Counters::NAMES.iter().zip(result.counters.values()) {
        println!("{name:>12} {value}");
    }
}
