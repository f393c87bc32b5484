//! Load sweeps: many random placements per load, three user models each.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::LinkState;
use crate::equilibrium::{commit_bids, leader_bids, play, Provider};
use crate::error::Result;
use crate::leader::optimize_bid;
use crate::model::{Bid, GameOutcome, SpKind};
use crate::prospect::DecisionModel;
use crate::sim::config::ScenarioConfig;
use crate::sim::topology::{generate_topology, Topology, CELLULAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    #[serde(rename = "EUT")]
    Eut,
    #[serde(rename = "PT")]
    Pt,
    #[serde(rename = "PT_EXPANSION")]
    PtExpansion,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::Eut, Scenario::Pt, Scenario::PtExpansion];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Eut => "EUT",
            Scenario::Pt => "PT",
            Scenario::PtExpansion => "PT_EXPANSION",
        }
    }

    pub fn model(&self, cfg: &ScenarioConfig) -> Result<DecisionModel> {
        cfg.decision_model(*self != Scenario::Eut)
    }

    pub fn expansion(&self) -> bool {
        *self == Scenario::PtExpansion
    }

    /// The scenarios a config asks for, in output order.
    pub fn enabled(cfg: &ScenarioConfig) -> Vec<Scenario> {
        Self::ALL
            .into_iter()
            .filter(|s| cfg.expansion_enabled || !s.expansion())
            .collect()
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Totals of one placement under one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrialMetrics {
    pub sum_sp_utility: f64,
    pub sum_user_utility: f64,
    /// Bandwidth consumed per associated user (0 if nobody associated).
    pub avg_bw_per_user: f64,
    pub association_rate: f64,
    /// Highest guarantee on any offer put to a user.
    pub max_guarantee: f64,
}

/// One output record: a scenario at one load, averaged over trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub scenario: Scenario,
    pub sum_sp_utility: f64,
    pub sum_user_utility: f64,
    pub avg_bw_per_user: f64,
    pub association_rate: f64,
    pub trials: usize,
    pub stderr_sp: f64,
    pub stderr_user: f64,
}

/// Rows plus the largest advertised guarantee seen at each load.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub max_guarantee: Vec<(usize, f64)>,
}

/// Generator for one `(load, trial)` cell; independent of execution order.
pub fn trial_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng
}

fn offer_guarantee(bid: &Bid) -> f64 {
    bid.offer().map_or(0.0, |o| o.guarantee)
}

/// Plays every user of one placement under each scenario.
///
/// Users are served in index order; an accepted offer is debited from its
/// provider's band, and an offer (expanded or not) must fit in what is left.
pub fn run_trial(cfg: &ScenarioConfig, n: usize, trial: usize) -> Result<Vec<(Scenario, TrialMetrics, Vec<GameOutcome>)>> {
    let mut rng = trial_rng(cfg.seed, n, trial);
    let topo = generate_topology(cfg, n, &mut rng)?;
    let links = topo.links(cfg)?;
    let raw = raw_bids(&topo, &links);
    let mut out = Vec::new();
    for scenario in Scenario::enabled(cfg) {
        let mut draws = ChaCha8Rng::seed_from_u64(rng.random());
        let (metrics, outcomes) = play_scenario(cfg, &topo, &links, &raw, scenario, &mut draws)?;
        out.push((scenario, metrics, outcomes));
    }
    Ok(out)
}

/// Each covering provider's optimized bid for each user; these do not
/// depend on how users perceive them.
fn raw_bids(topo: &Topology, links: &[Vec<LinkState>]) -> Vec<Vec<Option<Bid>>> {
    topo.users
        .iter()
        .zip(links)
        .map(|(user, row)| {
            topo.sps
                .iter()
                .zip(row)
                .map(|(sp, link)| link.covered.then(|| optimize_bid(sp, link, user.b_min)))
                .collect()
        })
        .collect()
}

fn play_scenario(
    cfg: &ScenarioConfig,
    topo: &Topology,
    links: &[Vec<LinkState>],
    raw: &[Vec<Option<Bid>>],
    scenario: Scenario,
    rng: &mut ChaCha8Rng,
) -> Result<(TrialMetrics, Vec<GameOutcome>)> {
    let model = scenario.model(cfg)?;
    let mut pools: Vec<f64> = topo.sps.iter().map(|sp| sp.usable_bandwidth()).collect();
    let mut m = TrialMetrics::default();
    let (mut associated, mut consumed) = (0usize, 0.0);
    let mut outcomes = Vec::with_capacity(topo.users.len());
    for (i, user) in topo.users.iter().enumerate() {
        let provider = |j: usize| Provider {
            id: j,
            profile: &topo.sps[j],
            link: links[i][j],
            budget: pools[j],
        };
        let cellular = raw[i][CELLULAR].map(|bid| (provider(CELLULAR), bid));
        let wifi: Vec<(Provider<'_>, Bid)> = (0..topo.sps.len())
            .filter(|&j| topo.sps[j].kind == SpKind::WiFi)
            .filter_map(|j| raw[i][j].map(|bid| (provider(j), bid)))
            .collect();
        let bids = commit_bids(user, cellular, &wifi, model, scenario.expansion());
        let wifi_sp = bids.wifi_sp.map(|j| &topo.sps[j]);
        let outcome = play(user, bids, Some(&topo.sps[CELLULAR]), wifi_sp, model, rng);

        m.max_guarantee = m
            .max_guarantee
            .max(offer_guarantee(&bids.bid_c))
            .max(offer_guarantee(&bids.bid_w));
        m.sum_sp_utility += outcome.u_sp_c + outcome.u_sp_w;
        m.sum_user_utility += outcome.u_user;
        let take = |accepted: bool, bid: &Bid| if accepted { bid.offer().map_or(0.0, |o| o.bandwidth) } else { 0.0 };
        pools[CELLULAR] -= take(outcome.strategy_draw.cellular, &outcome.bid_c);
        if let Some(j) = outcome.wifi_sp {
            pools[j] -= take(outcome.strategy_draw.wifi, &outcome.bid_w);
        }
        if outcome.associated() {
            associated += 1;
            consumed += outcome.consumed_bandwidth();
        }
        outcomes.push(outcome);
    }
    m.association_rate = associated as f64 / topo.users.len().max(1) as f64;
    m.avg_bw_per_user = if associated > 0 { consumed / associated as f64 } else { 0.0 };
    Ok((m, outcomes))
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn run_sweep(cfg: &ScenarioConfig) -> Result<Vec<SweepRow>> {
    Ok(run_sweep_with_stats(cfg)?.rows)
}

/// Runs every `(load, trial)` cell in parallel and averages per load and
/// scenario. Results do not depend on thread scheduling.
pub fn run_sweep_with_stats(cfg: &ScenarioConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let cells: Vec<(usize, usize)> = cfg
        .sweep
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let results: Vec<Vec<(Scenario, TrialMetrics)>> = cells
        .par_iter()
        .map(|&(n, t)| {
            run_trial(cfg, n, t).map(|v| v.into_iter().map(|(s, m, _)| (s, m)).collect())
        })
        .collect::<Result<_>>()?;

    let scenarios = Scenario::enabled(cfg);
    let mut rows = Vec::new();
    let mut max_guarantee = Vec::new();
    for (k, &n) in cfg.sweep.iter().enumerate() {
        let block = &results[k * cfg.trials..(k + 1) * cfg.trials];
        let top = block
            .iter()
            .flatten()
            .map(|(_, m)| m.max_guarantee)
            .fold(0.0, f64::max);
        max_guarantee.push((n, top));
        for (si, &scenario) in scenarios.iter().enumerate() {
            let pick = |f: fn(&TrialMetrics) -> f64| block.iter().map(|r| f(&r[si].1)).collect::<Vec<f64>>();
            let (sp, stderr_sp) = mean_and_stderr(&pick(|m| m.sum_sp_utility));
            let (user, stderr_user) = mean_and_stderr(&pick(|m| m.sum_user_utility));
            rows.push(SweepRow {
                n,
                scenario,
                sum_sp_utility: sp,
                sum_user_utility: user,
                avg_bw_per_user: mean_and_stderr(&pick(|m| m.avg_bw_per_user)).0,
                association_rate: mean_and_stderr(&pick(|m| m.association_rate)).0,
                trials: cfg.trials,
                stderr_sp,
                stderr_user,
            });
        }
    }
    Ok(SweepReport { rows, max_guarantee })
}

/// One user's game from the single-game query: the placement of trial 0
/// at load `cfg.n_users`, as if this user were served first.
pub fn single_game(
    cfg: &ScenarioConfig,
    user_index: usize,
    model: DecisionModel,
    expansion: bool,
) -> Result<GameOutcome> {
    let mut rng = trial_rng(cfg.seed, cfg.n_users, 0);
    let topo = generate_topology(cfg, cfg.n_users, &mut rng)?;
    let user = topo.users.get(user_index).ok_or_else(|| {
        crate::error::Error::invalid(
            "user_index",
            format!("must be below n_users = {}, got {user_index}", cfg.n_users),
        )
    })?;
    let links = topo.links(cfg)?;
    let mut draws = ChaCha8Rng::seed_from_u64(rng.random());
    let provider = |j: usize| Provider {
        id: j,
        profile: &topo.sps[j],
        link: links[user_index][j],
        budget: topo.sps[j].usable_bandwidth(),
    };
    let wifi: Vec<Provider<'_>> = (0..topo.sps.len())
        .filter(|&j| topo.sps[j].kind == SpKind::WiFi)
        .map(provider)
        .collect();
    let cellular = provider(CELLULAR);
    let cellular = cellular.link.covered.then_some(cellular);
    let bids = leader_bids(user, cellular.as_ref(), &wifi, model, expansion);
    let wifi_sp = bids.wifi_sp.map(|j| &topo.sps[j]);
    let cellular_sp = cellular.map(|p| p.profile);
    Ok(play(user, bids, cellular_sp, wifi_sp, model, &mut draws))
}
