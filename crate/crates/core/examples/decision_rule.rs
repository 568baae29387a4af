//! The compute-or-bypass decision and the helpfulness estimate behind it.

use lazy_astar::strategy::decision::expected_regret;
use lazy_astar::strategy::{rational_decide, update_ph, CostModel, DecisionInput, DecisionRule};

fn main() {
    println!("p_h after A helpful of B computed (k = 1000, prior 0.5):");
    for (a, b) in [(0, 0), (0, 1000), (1000, 1000), (50, 400), (300, 4000)] {
        println!("  A = {a:>4}, B = {b:>4}: {:.4}", update_ph(a, b, 1000.0, 0.5));
    }

    let model = CostModel::fixed(1.0, 8.0, 0.2, 0.5, 0.3);
    let input = DecisionInput { branching: 3, open_size: 5000 };
    println!("\nb = 3, N_o = 5000, {model}");
    println!("{:>6} {:>10} {:>10} {:>9} {:>9} {:>9}", "p_h", "R(comp)", "R(bypass)", "general", "logopen", "ratio");
    for ph in [0.0, 0.05, 0.1, 0.2, 0.3, 0.34] {
        let (c, b) = expected_regret(ph, 3, model.delay_time(5000), model.expand_time(3, 5000));
        let d = |rule| format!("{:?}", rational_decide(input, &model, ph, rule));
        println!(
            "{ph:>6.2} {c:>10.3} {b:>10.3} {:>9} {:>9} {:>9}",
            d(DecisionRule::General),
            d(DecisionRule::LogOpen),
            d(DecisionRule::Ratio)
        );
    }
}
