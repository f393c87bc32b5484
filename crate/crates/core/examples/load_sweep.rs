//! Load sweep over the three scenarios with a per-load summary.
//!
//! `cargo run --release --example load_sweep [config.toml]`

use std::path::Path;

use hetnet::sim::{run_sweep_with_stats, Scenario, ScenarioConfig};

fn main() -> hetnet::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => ScenarioConfig::load(Path::new(&path))?,
        None => ScenarioConfig::default(),
    };
    let report = run_sweep_with_stats(&cfg)?;
    let scenarios = Scenario::enabled(&cfg);

    println!(
        "{:>5} {:>8} | {:>10} {:>10} {:>10} | {:>6} {:>6} {:>6} | {:>9}",
        "N", "max F", "sp EUT", "sp PT", "sp PT+X", "as EUT", "as PT", "as X", "extra bw"
    );
    for (k, (n, top)) in report.max_guarantee.iter().enumerate() {
        let block = &report.rows[k * scenarios.len()..(k + 1) * scenarios.len()];
        let get = |s: Scenario| block.iter().find(|r| r.scenario == s);
        let sp = |s| get(s).map_or(f64::NAN, |r| r.sum_sp_utility);
        let assoc = |s| get(s).map_or(f64::NAN, |r| r.association_rate);
        let bw = |s| get(s).map_or(f64::NAN, |r| r.avg_bw_per_user);
        println!(
            "{n:>5} {top:>8.4} | {:>10.2} {:>10.2} {:>10.2} | {:>6.3} {:>6.3} {:>6.3} | {:>9.5}",
            sp(Scenario::Eut),
            sp(Scenario::Pt),
            sp(Scenario::PtExpansion),
            assoc(Scenario::Eut),
            assoc(Scenario::Pt),
            assoc(Scenario::PtExpansion),
            bw(Scenario::PtExpansion) - bw(Scenario::Eut),
        );
    }
    Ok(())
}
