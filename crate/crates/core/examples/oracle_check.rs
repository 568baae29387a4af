//! Check every strategy against the heuristic-free uniform-cost oracle.

use lazy_astar::domain::tile::{random_instances, CostMode, TilePuzzle};
use lazy_astar::heuristic::manhattan::WeightedManhattan;
use lazy_astar::heuristic::pdb::{default_partition, AdditivePdb, PdbOptions};
use lazy_astar::oracle::uniform_cost_optimal;
use lazy_astar::search::{solve, SearchOptions};
use lazy_astar::strategy::{DecisionRule, Enhancements, RationalConfig, Strategy};

fn main() {
    let mode = CostMode::TileNumber;
    let h1 = WeightedManhattan::tile_number(3, 3);
    let h2 = AdditivePdb::build(3, 3, mode, &default_partition(3, 3), &PdbOptions::default()).unwrap();
    let strategies = [
        Strategy::AStarH1,
        Strategy::AStarH2,
        Strategy::AStarMax,
        Strategy::Lazy,
        Strategy::RationalLazy(RationalConfig::new(DecisionRule::General)),
        Strategy::RationalLazy(RationalConfig::new(DecisionRule::LogOpen)),
        Strategy::RationalLazy(RationalConfig::new(DecisionRule::Ratio)),
    ];
    let mut runs = 0;
    for state in random_instances(3, 3, 99, 25, 80).unwrap() {
        let puzzle = TilePuzzle::new(state, mode);
        let optimal = uniform_cost_optimal(&puzzle, None).unwrap();
        for s in &strategies {
            for e in [Enhancements::NONE, Enhancements::ob(), Enhancements::hbp()] {
                let r = solve(&puzzle, &h1, &h2, s, &SearchOptions::with_enhancements(e)).unwrap();
                assert_eq!(r.cost, optimal, "{s}{} on {state}", e.suffix());
                runs += 1;
            }
        }
    }
    println!("{runs} searches matched the oracle");
}
