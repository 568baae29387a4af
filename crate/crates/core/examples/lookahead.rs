//! Bounded lookahead over weighted Manhattan distance: deeper lookahead
//! gives larger values and fewer expansions, at a higher cost per call.

use std::time::Instant;

use lazy_astar::domain::tile::{random_instances, CostMode, TilePuzzle, TileRules};
use lazy_astar::heuristic::lookahead::Lookahead;
use lazy_astar::heuristic::manhattan::WeightedManhattan;
use lazy_astar::heuristic::Heuristic;
use lazy_astar::search::{solve, SearchOptions};
use lazy_astar::strategy::Strategy;

fn main() {
    let mode = CostMode::TileNumber;
    let wmd = WeightedManhattan::tile_number(3, 3);
    let states = random_instances(3, 3, 17, 10, 80).unwrap();
    println!("{:>3} {:>10} {:>10} {:>10} {:>8}", "d", "mean h", "expanded", "h evals", "ms");
    for d in [0, 2, 4, 6, 8] {
        let la = Lookahead::new(TileRules::new(3, 3, mode), wmd.clone(), d);
        let mean = states.iter().map(|s| la.evaluate(s) as f64).sum::<f64>() / states.len() as f64;
        let start = Instant::now();
        let (mut expanded, mut evals) = (0, 0);
        for s in &states {
            let r = solve(&TilePuzzle::new(*s, mode), &wmd, &la, &Strategy::AStarH2, &SearchOptions::default()).unwrap();
            expanded += r.counters.expanded;
            evals += r.counters.h2_evals;
        }
        println!("{d:>3} {mean:>10.1} {expanded:>10} {evals:>10} {:>8.1}", start.elapsed().as_secs_f64() * 1e3);
    }
}
