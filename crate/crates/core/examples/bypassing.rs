//! OPEN bypassing and heuristic bypassing on the unit 8-puzzle with the
//! column/row split of Manhattan distance.

use lazy_astar::domain::tile::{random_instances, CostMode, TilePuzzle};
use lazy_astar::heuristic::manhattan::AxisDistance;
use lazy_astar::search::{solve, Counters, SearchOptions};
use lazy_astar::strategy::{Enhancements, Strategy};

fn main() {
    let dx = AxisDistance::columns(3, 3);
    let dy = AxisDistance::rows(3, 3);
    let puzzles: Vec<TilePuzzle> = random_instances(3, 3, 5, 30, 80)
        .unwrap()
        .into_iter()
        .map(|s| TilePuzzle::new(s, CostMode::Unit))
        .collect();
    let variants = [
        Enhancements::NONE,
        Enhancements::ob(),
        Enhancements::hbp(),
        Enhancements { open_bypass: true, heuristic_bypass: true },
    ];
    println!("{:<14} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "strategy", "pushes", "h1", "h2", "ob", "hbp1", "hbp2");
    for strategy in [Strategy::AStarMax, Strategy::Lazy] {
        for e in variants {
            let mut t = Counters::default();
            for p in &puzzles {
                t += &solve(p, &dx, &dy, &strategy, &SearchOptions::with_enhancements(e)).unwrap().counters;
            }
            let label = format!("{strategy}{}", e.suffix());
            println!(
                "{label:<14} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
                t.open_pushes, t.h1_evals, t.h2_evals, t.ob_hits, t.hbp1_skips, t.hbp2_delays
            );
        }
    }
}
