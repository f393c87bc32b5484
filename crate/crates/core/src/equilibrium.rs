//! Equilibrium labels for the user's side of the game and the full
//! leader/follower pipeline for one user.
//!
//! The classifiers below evaluate closed-form thresholds. They are a fast
//! path that must agree with the brute-force follower in [`crate::follower`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::LinkState;
use crate::follower::{best_response, perceived_guarantee, select_wifi_sp, RATE_TOL};
use crate::leader::{expand_bw_pt_within, optimize_bid, participation_check};
use crate::model::{
    sp_utility, user_benefit, user_utility, Bid, GameOutcome, NeClass, NoBidReason, SpKind, SpProfile, Strategy,
    UserProfile,
};
use crate::prospect::DecisionModel;

/// The quantities an equilibrium label was decided on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Thresholds {
    Eut {
        /// `H(b_min)`, the worth of one marginal offer.
        single_benefit: f64,
        /// `H(2·b_min) − H(b_min)`, the worth of a second one.
        increment: f64,
        cheaper_price: f64,
        dearer_price: f64,
    },
    Pt {
        /// Expected rate of each offer as the user perceives it.
        perceived_rate_c: f64,
        perceived_rate_w: f64,
        /// Perceived benefit of taking both.
        joint_benefit: f64,
        total_price: f64,
    },
    /// Nothing on the table.
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: NeClass,
    pub thresholds: Thresholds,
}

impl Classification {
    fn empty() -> Self {
        Classification {
            class: NeClass::Infeasible,
            thresholds: Thresholds::Empty,
        }
    }
}

fn eut_levels(user: &UserProfile) -> (f64, f64) {
    let single = user_benefit(user.b_min, user);
    let doubled = user_benefit(2.0 * user.b_min, user);
    (single, doubled - single)
}

/// Both providers post the same marginal bid.
pub fn classify_eut_symmetric(bid: &Bid, user: &UserProfile) -> Classification {
    let Some(offer) = bid.offer() else {
        return Classification::empty();
    };
    let (single, increment) = eut_levels(user);
    let class = if single < offer.price {
        NeClass::Reject00
    } else if increment >= offer.price {
        NeClass::Both11
    } else {
        NeClass::Mixed0110
    };
    Classification {
        class,
        thresholds: Thresholds::Eut {
            single_benefit: single,
            increment,
            cheaper_price: offer.price,
            dearer_price: offer.price,
        },
    }
}

/// Marginal bids at different prices. The cheaper provider is the one the
/// user takes alone; if that is cellular the result is labelled accordingly.
pub fn classify_eut_asymmetric(bid_w: &Bid, bid_c: &Bid, user: &UserProfile) -> Classification {
    let (single, increment) = eut_levels(user);
    let (cheap, dear, lone) = match (bid_w.offer(), bid_c.offer()) {
        (None, None) => return Classification::empty(),
        (Some(w), None) => (w.price, f64::INFINITY, NeClass::WifiOnly01),
        (None, Some(c)) => (c.price, f64::INFINITY, NeClass::CellOnly10),
        (Some(w), Some(c)) if w.price <= c.price => (w.price, c.price, NeClass::WifiOnly01),
        (Some(w), Some(c)) => (c.price, w.price, NeClass::CellOnly10),
    };
    let class = if single < cheap {
        NeClass::Reject00
    } else if increment >= dear {
        NeClass::Both11
    } else {
        lone
    };
    Classification {
        class,
        thresholds: Thresholds::Eut {
            single_benefit: single,
            increment,
            cheaper_price: cheap,
            dearer_price: dear,
        },
    }
}

/// Prospect-theory user, arbitrary bids (expanded or not).
///
/// Each acceptance pattern is checked against the perceived minimum rate and
/// non-negative surplus, then the best surplus wins with ties going to fewer
/// acceptances and WiFi before cellular.
pub fn classify_pt(bid_w: &Bid, bid_c: &Bid, user: &UserProfile, model: DecisionModel) -> Classification {
    let rate = |bid: &Bid| {
        bid.offer()
            .map(|o| o.rate * perceived_guarantee(bid, model))
    };
    let price = |bid: &Bid| bid.offer().map(|o| o.price);
    let (rc, rw) = (rate(bid_c), rate(bid_w));
    if rc.is_none() && rw.is_none() {
        return Classification::empty();
    }
    let floor = user.b_min * (1.0 - RATE_TOL);
    let surplus = |r: f64, p: f64| {
        let benefit = user_benefit(r, user);
        (r >= floor && benefit >= p).then_some(benefit - p)
    };
    let both = match (rc, rw) {
        (Some(c), Some(w)) => surplus(c + w, price(bid_c).unwrap() + price(bid_w).unwrap()),
        _ => None,
    };
    let options = [
        (NeClass::WifiOnly01, rw.and_then(|r| surplus(r, price(bid_w).unwrap()))),
        (NeClass::CellOnly10, rc.and_then(|r| surplus(r, price(bid_c).unwrap()))),
        (NeClass::Both11, both),
    ];
    let mut class = NeClass::Reject00;
    let mut best = 0.0;
    for (c, s) in options {
        if let Some(s) = s {
            if s > best {
                best = s;
                class = c;
            }
        }
    }
    let rc = rc.unwrap_or(0.0);
    let rw = rw.unwrap_or(0.0);
    Classification {
        class,
        thresholds: Thresholds::Pt {
            perceived_rate_c: rc,
            perceived_rate_w: rw,
            joint_benefit: user_benefit(rc + rw, user),
            total_price: price(bid_c).unwrap_or(0.0) + price(bid_w).unwrap_or(0.0),
        },
    }
}

/// Picks the classifier that fits the model and the bids.
pub fn classify(bid_c: &Bid, bid_w: &Bid, user: &UserProfile, model: DecisionModel) -> Classification {
    match model {
        DecisionModel::Pt { .. } => classify_pt(bid_w, bid_c, user, model),
        DecisionModel::Eut => match (bid_c, bid_w) {
            (Bid::Offer(c), Bid::Offer(w)) if c.price == w.price => classify_eut_symmetric(bid_w, user),
            _ => classify_eut_asymmetric(bid_w, bid_c, user),
        },
    }
}

/// One base station as seen by one user.
#[derive(Debug, Clone, Copy)]
pub struct Provider<'a> {
    pub id: usize,
    pub profile: &'a SpProfile,
    pub link: LinkState,
    /// Bandwidth the provider can still commit to this user (MHz).
    pub budget: f64,
}

impl<'a> Provider<'a> {
    /// A provider whose budget is the link's per-user share.
    pub fn new(id: usize, profile: &'a SpProfile, link: LinkState) -> Self {
        Provider {
            id,
            profile,
            link,
            budget: link.bw_max,
        }
    }
}

/// Bids in force after the leaders move.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeaderBids {
    pub bid_c: Bid,
    pub bid_w: Bid,
    /// The WiFi provider the user kept, if any made an offer.
    pub wifi_sp: Option<usize>,
}

fn finalize(bid: Bid, provider: &Provider<'_>, model: DecisionModel, expansion: bool) -> Bid {
    let bid = if expansion {
        expand_bw_pt_within(&bid, model, &provider.link, provider.budget)
    } else {
        bid
    };
    match bid {
        Bid::Offer(o) if o.bandwidth > provider.budget => Bid::none(NoBidReason::BudgetExhausted),
        Bid::Offer(_) if !participation_check(&bid, 1.0, provider.profile) => Bid::none(NoBidReason::Unprofitable),
        other => other,
    }
}

/// Leader stage: every covering provider bids, the user keeps its favourite
/// WiFi offer, bids are optionally expanded and unprofitable ones withdrawn.
pub fn leader_bids(
    user: &UserProfile,
    cellular: Option<&Provider<'_>>,
    wifi: &[Provider<'_>],
    model: DecisionModel,
    expansion: bool,
) -> LeaderBids {
    let raw = |p: &Provider<'_>| optimize_bid(p.profile, &p.link, user.b_min);
    let cellular = cellular.map(|p| (*p, raw(p)));
    let wifi: Vec<(Provider<'_>, Bid)> = wifi.iter().filter(|p| p.link.covered).map(|p| (*p, raw(p))).collect();
    commit_bids(user, cellular, &wifi, model, expansion)
}

/// Leader stage from bids already optimized for this user.
pub fn commit_bids(
    user: &UserProfile,
    cellular: Option<(Provider<'_>, Bid)>,
    wifi: &[(Provider<'_>, Bid)],
    model: DecisionModel,
    expansion: bool,
) -> LeaderBids {
    let bid_c = match cellular {
        Some((p, bid)) => finalize(bid, &p, model, expansion),
        None => Bid::none(NoBidReason::NotCovered),
    };
    let offers: Vec<(usize, Bid)> = wifi.iter().map(|(p, bid)| (p.id, *bid)).collect();
    let wifi_sp = select_wifi_sp(&offers, user, model);
    let bid_w = match wifi_sp.and_then(|id| wifi.iter().find(|(p, _)| p.id == id)) {
        Some((p, bid)) => finalize(*bid, p, model, expansion),
        None => Bid::none(NoBidReason::NotCovered),
    };
    LeaderBids { bid_c, bid_w, wifi_sp }
}

/// Follower stage and payoffs for bids already in force.
pub fn play<R: Rng + ?Sized>(
    user: &UserProfile,
    bids: LeaderBids,
    cellular: Option<&SpProfile>,
    wifi: Option<&SpProfile>,
    model: DecisionModel,
    rng: &mut R,
) -> GameOutcome {
    let LeaderBids {
        mut bid_c,
        mut bid_w,
        wifi_sp,
    } = bids;
    let class = classify(&bid_c, &bid_w, user, model).class;
    let strategy = if class == NeClass::Mixed0110 {
        if rng.random_bool(0.5) {
            bid_c = Bid::none(NoBidReason::StaySilent);
            Strategy::WIFI_ONLY
        } else {
            bid_w = Bid::none(NoBidReason::StaySilent);
            Strategy::CELL_ONLY
        }
    } else {
        best_response(&bid_c, &bid_w, user, model).0
    };
    let gc = perceived_guarantee(&bid_c, model);
    let gw = perceived_guarantee(&bid_w, model);
    let u_sp = |accepted: bool, bid: &Bid, sp: Option<&SpProfile>| sp.map_or(0.0, |sp| sp_utility(accepted, bid, sp));
    GameOutcome {
        ne_class: class,
        strategy_draw: strategy,
        u_user: user_utility(strategy, &bid_c, &bid_w, user, gc, gw),
        u_sp_w: u_sp(strategy.wifi, &bid_w, wifi),
        u_sp_c: u_sp(strategy.cellular, &bid_c, cellular),
        bid_w,
        bid_c,
        wifi_sp,
    }
}

/// Full game for one user against a set of providers with their links.
/// The first cellular profile is the cellular provider; every WiFi profile
/// competes for the WiFi slot under its index in `sps`.
pub fn solve_game<R: Rng + ?Sized>(
    user: &UserProfile,
    sps: &[SpProfile],
    links: &[LinkState],
    model: DecisionModel,
    expansion: bool,
    rng: &mut R,
) -> GameOutcome {
    let providers: Vec<Provider<'_>> = sps
        .iter()
        .zip(links)
        .enumerate()
        .map(|(id, (sp, link))| Provider::new(id, sp, *link))
        .collect();
    let cellular = providers
        .iter()
        .find(|p| p.profile.kind == SpKind::Cellular && p.link.covered);
    let wifi: Vec<Provider<'_>> = providers
        .iter()
        .filter(|p| p.profile.kind == SpKind::WiFi)
        .copied()
        .collect();
    let bids = leader_bids(user, cellular, &wifi, model, expansion);
    let wifi_profile = bids.wifi_sp.map(|id| &sps[id]);
    play(user, bids, cellular.map(|p| p.profile), wifi_profile, model, rng)
}
