//! Reference implementations written from the model's definitions, kept
//! apart from the library so that tests compare two independent codings.

#![allow(dead_code)]

use hetnet::model::{Bid, Offer, Point, SpKind, SpProfile, Strategy, UserProfile};
use rand::Rng;

pub const ORDER: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

/// Probability that `bw·log2(1 + g) ≥ b` for an exponential gain of mean `snr`.
pub fn guarantee(b: f64, bw: f64, snr: f64) -> f64 {
    (-(2f64.powf(b / bw) - 1.0) / snr).exp()
}

pub fn prelec(p: f64, alpha: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    (-(-p.ln()).powf(alpha)).exp()
}

/// Increasing `f` on [lo, hi], solve `f(x) = y`.
pub fn bisect(mut lo: f64, mut hi: f64, y: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn prelec_inverse(q: f64, alpha: f64) -> f64 {
    bisect(0.0, 1.0, q, |p| prelec(p, alpha))
}

/// Bandwidth that puts the expected rate `b·F̄` exactly at `b_min`.
pub fn marginal_bandwidth(b: f64, b_min: f64, snr: f64) -> f64 {
    b * std::f64::consts::LN_2 / (1.0 + snr * (b / b_min).ln()).ln()
}

pub fn sp_utility(b: f64, bw: f64, sp: &SpProfile) -> f64 {
    sp.alpha * b.powf(sp.beta) - sp.cost_rate * b - sp.cost_bw * bw
}

/// `None` stands for expected utility.
pub type Alpha = Option<f64>;

fn perceived(g: f64, alpha: Alpha) -> f64 {
    match alpha {
        None => g,
        Some(a) => prelec(g.clamp(0.0, 1.0), a),
    }
}

/// Exhaustive follower: feasible strategies in order, the first strictly
/// better utility wins, rejecting both (utility 0) is the starting point.
pub fn enumerate(bid_c: &Bid, bid_w: &Bid, user: &UserProfile, alpha: Alpha) -> (Vec<(bool, bool)>, (bool, bool), f64) {
    let mut feasible = Vec::new();
    let mut best = ((false, false), 0.0);
    for (c, w) in ORDER {
        let mut rate = 0.0;
        let mut price = 0.0;
        let mut ok = true;
        for (take, bid) in [(c, bid_c), (w, bid_w)] {
            if !take {
                continue;
            }
            match bid {
                Bid::Offer(o) => {
                    rate += o.rate * perceived(o.guarantee, alpha);
                    price += o.price;
                }
                Bid::NoBid { .. } => ok = false,
            }
        }
        let any = c || w;
        let benefit = user.delta * rate.powf(1.0 / user.theta);
        if any && (!ok || rate < user.b_min * (1.0 - 1e-9) || benefit < price) {
            continue;
        }
        feasible.push((c, w));
        let u = if any { benefit - price } else { 0.0 };
        if u > best.1 {
            best = ((c, w), u);
        }
    }
    (feasible, best.0, best.1)
}

pub fn pair(s: Strategy) -> (bool, bool) {
    (s.cellular, s.wifi)
}

pub fn random_sp<R: Rng>(rng: &mut R, kind: SpKind) -> SpProfile {
    SpProfile {
        kind,
        alpha: rng.random_range(0.2..2.0),
        beta: rng.random_range(1.0..1.5),
        cost_rate: rng.random_range(0.0..0.3),
        cost_bw: rng.random_range(0.0..1.0),
        bw_total: 20.0,
        tx_power_dbm: 30.0,
        g_ba: 0.9,
        position: Point::default(),
        frequency_mhz: 900.0,
        antenna_height_m: 30.0,
        coverage_snr_threshold_db: 0.0,
        coverage_radius_m: None,
    }
}

pub fn random_user<R: Rng>(rng: &mut R) -> UserProfile {
    UserProfile::new(
        rng.random_range(0.1..20.0),
        rng.random_range(1.2..4.0),
        rng.random_range(0.2..3.0),
    )
    .unwrap()
}

pub fn offer(rate: f64, price: f64, guarantee: f64) -> Bid {
    Bid::Offer(Offer {
        rate,
        price,
        bandwidth: 1.0,
        guarantee,
    })
}
