//! Monte Carlo harness: random placements, load sweeps, output files.

pub mod config;
pub mod output;
pub mod params;
pub mod sweep;
pub mod topology;

pub use config::{ModelKind, OutputFormat, ScenarioConfig, SpConfig};
pub use output::{emit, read, read_csv, read_json, CSV_HEADER};
pub use params::ClassifyParams;
pub use sweep::{run_sweep, run_sweep_with_stats, run_trial, single_game, Scenario, SweepReport, SweepRow, TrialMetrics};
pub use topology::{generate_topology, Topology};
