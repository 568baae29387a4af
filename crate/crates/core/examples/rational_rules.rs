//! Rational Lazy A* under each decision rule, on weighted 8-puzzles with an
//! expensive lookahead h2, scored with a fixed cost model.

use lazy_astar::domain::tile::{random_instances, CostMode, TilePuzzle, TileRules};
use lazy_astar::heuristic::lookahead::Lookahead;
use lazy_astar::heuristic::manhattan::WeightedManhattan;
use lazy_astar::search::{solve, Counters, SearchOptions};
use lazy_astar::strategy::{CostModel, DecisionPolicy, DecisionRule, RationalConfig, Strategy};

fn main() {
    let mode = CostMode::TileNumber;
    let h1 = WeightedManhattan::tile_number(3, 3);
    let h2 = Lookahead::new(TileRules::new(3, 3, mode), h1.clone(), 6);
    let model: CostModel = "fixed:t1=1,t2=12,to=0.1,tc=0.2,tau=0.3".parse().unwrap();
    let puzzles: Vec<TilePuzzle> = random_instances(3, 3, 21, 15, 80)
        .unwrap()
        .into_iter()
        .map(|s| TilePuzzle::new(s, mode))
        .collect();

    let mut strategies = vec![("max".to_string(), Strategy::AStarMax), ("lazy".to_string(), Strategy::Lazy)];
    for policy in [
        DecisionPolicy::Rule(DecisionRule::General),
        DecisionPolicy::Rule(DecisionRule::LogOpen),
        DecisionPolicy::Rule(DecisionRule::Ratio),
        DecisionPolicy::AlwaysBypass,
    ] {
        let cfg = RationalConfig::with_policy(policy).cost_model(model);
        strategies.push((format!("rational-{}", policy.name()), Strategy::RationalLazy(cfg)));
    }
    println!("{:<18} {:>9} {:>9} {:>7} {:>7} {:>12}", "strategy", "generated", "h2_evals", "good1", "good2", "model_time");
    for (label, strategy) in &strategies {
        let mut total = Counters::default();
        for p in &puzzles {
            total += &solve(p, &h1, &h2, strategy, &SearchOptions::default()).unwrap().counters;
        }
        println!(
            "{label:<18} {:>9} {:>9} {:>7} {:>7} {:>12.1}",
            total.generated,
            total.h2_evals,
            total.good1,
            total.good2,
            model.model_time(&total)
        );
    }
}
