//! The user's side of the game: pick a WiFi provider, then choose which of
//! the two offers in hand to accept.

use crate::model::{joint_rate, total_price, user_benefit, user_utility, Bid, Strategy, UserProfile};
use crate::prospect::DecisionModel;

/// Relative slack on the minimum-rate constraint. Optimal bids sit exactly
/// on it, so a strict comparison would reject them on rounding noise.
pub const RATE_TOL: f64 = 1e-9;

/// The guarantee of `bid` as the user perceives it; zero for a missing bid.
pub fn perceived_guarantee(bid: &Bid, model: DecisionModel) -> f64 {
    match bid {
        Bid::Offer(o) => model.weight(o.guarantee.clamp(0.0, 1.0)).unwrap_or(0.0),
        Bid::NoBid { .. } => 0.0,
    }
}

/// Utility of accepting `bid` alone, ignoring the constraints.
pub fn single_offer_utility(bid: &Bid, user: &UserProfile, model: DecisionModel) -> Option<f64> {
    let offer = bid.offer()?;
    let rate = offer.perceived_rate(perceived_guarantee(bid, model));
    Some(user_benefit(rate, user) - offer.price)
}

/// The WiFi provider whose offer alone gives the user the most utility.
/// Ties go to the lowest id; providers without an offer are skipped.
pub fn select_wifi_sp(offers: &[(usize, Bid)], user: &UserProfile, model: DecisionModel) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (id, bid) in offers {
        let Some(u) = single_offer_utility(bid, user, model) else {
            continue;
        };
        best = match best {
            Some((bid_id, bu)) if bu > u || (bu == u && bid_id < *id) => Some((bid_id, bu)),
            _ => Some((*id, u)),
        };
    }
    best.map(|(id, _)| id)
}

fn accepts_missing_offer(s: Strategy, bid_c: &Bid, bid_w: &Bid) -> bool {
    (s.cellular && !bid_c.is_offer()) || (s.wifi && !bid_w.is_offer())
}

/// Whether strategy `s` meets the minimum-rate and non-negative-surplus
/// constraints. Rejecting both offers is always allowed.
pub fn is_feasible(s: Strategy, bid_c: &Bid, bid_w: &Bid, user: &UserProfile, model: DecisionModel) -> bool {
    if s == Strategy::REJECT {
        return true;
    }
    if accepts_missing_offer(s, bid_c, bid_w) {
        return false;
    }
    let gc = perceived_guarantee(bid_c, model);
    let gw = perceived_guarantee(bid_w, model);
    let rate = joint_rate(s, bid_c, bid_w, gc, gw);
    if rate < user.b_min * (1.0 - RATE_TOL) {
        return false;
    }
    user_benefit(rate, user) >= total_price(s, bid_c, bid_w)
}

/// Feasible strategies in tie-break order.
pub fn feasible_set(bid_c: &Bid, bid_w: &Bid, user: &UserProfile, model: DecisionModel) -> Vec<Strategy> {
    Strategy::ALL
        .into_iter()
        .filter(|s| is_feasible(*s, bid_c, bid_w, user, model))
        .collect()
}

/// Utility-maximizing feasible strategy and its (perceived) utility.
pub fn best_response(bid_c: &Bid, bid_w: &Bid, user: &UserProfile, model: DecisionModel) -> (Strategy, f64) {
    let gc = perceived_guarantee(bid_c, model);
    let gw = perceived_guarantee(bid_w, model);
    let mut best = (Strategy::REJECT, 0.0);
    for s in feasible_set(bid_c, bid_w, user, model) {
        let u = user_utility(s, bid_c, bid_w, user, gc, gw);
        if u > best.1 {
            best = (s, u);
        }
    }
    best
}
