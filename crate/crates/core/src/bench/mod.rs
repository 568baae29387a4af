//! Config-driven experiments: every strategy on every instance, with
//! per-instance rows, per-strategy aggregates and CSV/markdown output.

pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigError, DomainSpec, ExperimentConfig, HeuristicSpec, InstanceSource, StrategySpec};
pub use report::{csv_string, emit_markdown, parse_markdown, read_csv, strip_wall_column, write_csv};
pub use run::{run_experiment, Aggregate, BenchError, ExperimentReport, Row, RowStatus};
