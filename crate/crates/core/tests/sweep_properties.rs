use hetnet::sim::{emit, run_sweep, run_sweep_with_stats, run_trial, OutputFormat, Scenario, ScenarioConfig};
use proptest::prelude::*;

fn small(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        seed,
        trials: 2,
        sweep: vec![100, 400],
        ..ScenarioConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn no_provider_hands_out_more_than_its_band(seed in any::<u64>(), n in 20usize..500, trial in 0usize..4) {
        let cfg = ScenarioConfig { seed, ..ScenarioConfig::default() };
        let cell_band = cfg.cellular.g_ba * cfg.cellular.bw_total_mhz;
        let wifi_band = cfg.wifi.g_ba * cfg.wifi.bw_total_mhz;
        for (_, _, outcomes) in run_trial(&cfg, n, trial).unwrap() {
            let mut used = vec![0.0; cfg.n_wifi + 1];
            for o in &outcomes {
                if o.strategy_draw.cellular {
                    used[0] += o.bid_c.offer().unwrap().bandwidth;
                }
                if o.strategy_draw.wifi {
                    used[o.wifi_sp.unwrap()] += o.bid_w.offer().unwrap().bandwidth;
                }
            }
            prop_assert!(used[0] <= cell_band + 1e-9);
            for u in &used[1..] {
                prop_assert!(*u <= wifi_band + 1e-9);
            }
        }
    }

    #[test]
    fn expansion_never_loses_users(seed in any::<u64>(), n in 50usize..500) {
        let cfg = ScenarioConfig { seed, ..ScenarioConfig::default() };
        let trial = run_trial(&cfg, n, 0).unwrap();
        let rate = |s: Scenario| trial.iter().find(|(x, _, _)| *x == s).unwrap().1.association_rate;
        prop_assert!(rate(Scenario::PtExpansion) >= rate(Scenario::Pt));
    }

    #[test]
    fn rows_are_well_formed(seed in any::<u64>()) {
        for row in run_sweep(&small(seed)).unwrap() {
            prop_assert!((0.0..=1.0).contains(&row.association_rate));
            prop_assert!(row.stderr_sp >= 0.0 && row.stderr_user >= 0.0);
            prop_assert_eq!(row.trials, 2);
        }
    }
}

#[test]
fn same_config_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(9);
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        emit(&run_sweep(&cfg).unwrap(), format, &a).unwrap();
        emit(&run_sweep(&cfg).unwrap(), format, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn seed_changes_placements() {
    assert_ne!(run_sweep(&small(1)).unwrap(), run_sweep(&small(2)).unwrap());
}

#[test]
fn sp_utility_peaks_no_later_under_pt() {
    let cfg = ScenarioConfig::default();
    let report = run_sweep_with_stats(&cfg).unwrap();
    let series = |s: Scenario| -> Vec<(f64, f64)> {
        report
            .rows
            .iter()
            .filter(|r| r.scenario == s)
            .map(|r| (r.sum_sp_utility, r.stderr_sp))
            .collect()
    };
    let peak = |v: &[(f64, f64)]| (0..v.len()).max_by(|&i, &j| v[i].0.total_cmp(&v[j].0)).unwrap();
    let (eut, pt) = (series(Scenario::Eut), series(Scenario::Pt));
    let top = peak(&eut);
    assert!(peak(&pt) <= top);
    assert!(eut.last().unwrap().0 < eut[top].0);
    // past the peak, any rise stays within two standard errors
    for w in eut[top..].windows(2) {
        assert!(w[1].0 - w[0].0 <= 2.0 * (w[0].1 + w[1].1));
    }
}
