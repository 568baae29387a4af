//! A random tree with known distances: count how often h2 was really
//! needed and how each strategy spends its h2 evaluations.

use lazy_astar::domain::tree::{ErrorModel, SyntheticTree, TreeConfig};
use lazy_astar::search::{solve, SearchOptions};
use lazy_astar::strategy::{CostModel, DecisionRule, RationalConfig, Strategy};

fn main() {
    let tree = SyntheticTree::generate(&TreeConfig {
        branching: 3,
        depth: 9,
        seed: 4,
        min_cost: 1,
        max_cost: 6,
        goal_prob: 0.02,
        h1: ErrorModel { scale: 0.4, noise: 1 },
        h2: ErrorModel { scale: 0.9, noise: 2 },
        ..TreeConfig::default()
    })
    .unwrap();
    let helpful = (0..tree.node_count()).filter(|&n| tree.h2_helpful(n)).count();
    println!("{} nodes, C* = {}, h2 helpful at {helpful}", tree.node_count(), tree.optimal_cost());

    let (h1, h2) = (tree.h1(), tree.h2());
    let model = CostModel::fixed(1.0, 25.0, 0.1, 0.2, 0.0);
    let rational = RationalConfig::new(DecisionRule::Ratio).cost_model(model);
    for strategy in [Strategy::AStarH1, Strategy::AStarMax, Strategy::Lazy, Strategy::RationalLazy(rational)] {
        let r = solve(&tree, &h1, &h2, &strategy, &SearchOptions::default()).unwrap();
        assert_eq!(r.cost, tree.optimal_cost());
        println!(
            "{strategy:<14} generated {:>6} expanded {:>6} h2 {:>6} model time {:>9.1}",
            r.counters.generated,
            r.counters.expanded,
            r.counters.h2_evals,
            model.model_time(&r.counters)
        );
    }
}
