//! Run a config-driven experiment and print the markdown report. Pass a
//! config path, or run the built-in sweep over lookahead depths.

use lazy_astar::bench::report::report_markdown;
use lazy_astar::bench::{run_experiment, ExperimentConfig, HeuristicSpec};

fn main() {
    let base = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::load(path).expect("valid config"),
        None => ExperimentConfig::parse(
            "
[domain]
cost = weighted
[instances]
seed = 2
count = 10
walk = 80
[heuristics]
h1 = wmd
[search]
strategies = max, lazy, rational-ratio
[cost_model]
spec = fixed:t1=1,t2=10,to=0.1,tc=0.2,tau=0.2
",
        )
        .expect("valid config"),
    };
    for d in [2, 4] {
        let cfg = ExperimentConfig {
            h2: HeuristicSpec::Lookahead(d),
            ..base.clone()
        };
        let report = run_experiment(&cfg).expect("experiment runs");
        println!("# h2 = lookahead:{d}\n");
        let md = report_markdown(&report.rows, &report.aggregates, &report.baseline).unwrap();
        println!("{}", md.split("## Instances").next().unwrap());
    }
}
