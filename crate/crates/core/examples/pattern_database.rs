//! Build pattern databases, save and reload one, and compare an additive
//! database with Manhattan distance.

use lazy_astar::domain::tile::{random_instances, CostMode};
use lazy_astar::heuristic::manhattan::WeightedManhattan;
use lazy_astar::heuristic::pdb::{default_partition, AdditivePdb, PatternDb, PdbOptions};
use lazy_astar::heuristic::Heuristic;

fn main() {
    let opts = PdbOptions::default();
    let single = PatternDb::build(3, 3, CostMode::Unit, &[1, 2, 3, 4], &opts).unwrap();
    let path = std::env::temp_dir().join("lazy-astar-example.pdb");
    single.save(&path).unwrap();
    let reloaded = PatternDb::load_for(&path, 3, 3).unwrap();
    println!("{}: {} entries, saved to {}", reloaded.label(), reloaded.len(), path.display());

    let additive = AdditivePdb::build(3, 3, CostMode::Unit, &default_partition(3, 3), &opts).unwrap();
    let md = WeightedManhattan::unit(3, 3);
    println!("{:<30} {:>4} {:>4} {:>4}", "state", "md", "1234", "add");
    for s in random_instances(3, 3, 3, 8, 60).unwrap() {
        println!(
            "{:<30} {:>4} {:>4} {:>4}",
            s.to_string(),
            md.evaluate(&s),
            reloaded.evaluate(&s),
            additive.evaluate(&s)
        );
    }
    std::fs::remove_file(path).ok();
}
