//! Lazy A* expands the same nodes as A*max but skips h2 on nodes that never
//! reach the top of OPEN.

use lazy_astar::domain::tile::{random_instances, CostMode, TilePuzzle};
use lazy_astar::heuristic::manhattan::WeightedManhattan;
use lazy_astar::heuristic::lookahead::Lookahead;
use lazy_astar::domain::tile::TileRules;
use lazy_astar::search::{solve, SearchOptions};
use lazy_astar::strategy::Strategy;

fn main() {
    let mode = CostMode::TileNumber;
    let h1 = WeightedManhattan::tile_number(3, 3);
    let h2 = Lookahead::new(TileRules::new(3, 3, mode), h1.clone(), 4);
    println!("{:>4} {:>6} {:>9} {:>9} {:>9} {:>6}", "inst", "cost", "expanded", "h2(max)", "h2(lazy)", "sg");
    for (i, state) in random_instances(3, 3, 7, 10, 80).unwrap().into_iter().enumerate() {
        let puzzle = TilePuzzle::new(state, mode);
        let opts = SearchOptions::default();
        let max = solve(&puzzle, &h1, &h2, &Strategy::AStarMax, &opts).unwrap();
        let lazy = solve(&puzzle, &h1, &h2, &Strategy::Lazy, &opts).unwrap();
        assert_eq!(lazy.counters.h2_evals + lazy.counters.sg, max.counters.h2_evals);
        println!(
            "{i:>4} {:>6} {:>9} {:>9} {:>9} {:>6}",
            lazy.cost, lazy.counters.expanded, max.counters.h2_evals, lazy.counters.h2_evals, lazy.counters.sg
        );
    }
}
