//! Provider side: the marginal-bandwidth bid, its one-dimensional rate
//! optimization, and bandwidth expansion for users who underweight the
//! advertised guarantee.
//!
//! A provider never gives more bandwidth than it takes to make the user's
//! expected rate `b·F̄(b, bw)` equal `b_min`; extra bandwidth only adds cost.
//! That pins `bw` as a function of `b`, leaving a scalar problem in `b`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::channel::{guarantee_inverse_bw, LinkState};
use crate::error::{Error, Result};
use crate::model::{sp_cost, sp_price, Bid, NoBidReason, Offer, SpProfile};
use crate::prospect::{DecisionModel, PRELEC_FIXED_POINT};

pub const GRID_POINTS: usize = 1024;

/// Relative tolerance of the golden-section refinement on the rate.
pub const RATE_TOLERANCE: f64 = 1e-9;

/// Offset of the first grid point above `b_min`; the bandwidth diverges at
/// `b_min` itself.
const LOWER_OFFSET: f64 = 1e-6;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bandwidth at which `b·F̄(b, bw) = b_min`:
/// `b / log2(1 + γ̄·ln(b/b_min))`.
pub fn marginal_bw(b: f64, b_min: f64, link: &LinkState) -> Result<f64> {
    if !(b > b_min) {
        return Err(Error::RateNotAboveMinimum { rate: b, b_min });
    }
    if !(link.mean_snr > 0.0) {
        return Err(Error::invalid("mean_snr", format!("must be positive, got {}", link.mean_snr)));
    }
    let spectral = (link.mean_snr * (b / b_min).ln()).ln_1p() / LN_2;
    Ok(b / spectral)
}

/// Provider utility of the marginal bid at rate `b` if accepted, or
/// `-inf` when the bid breaks the bandwidth or rate cap.
pub fn bid_objective(b: f64, sp: &SpProfile, link: &LinkState, b_min: f64) -> f64 {
    if b > link.b_max {
        return f64::NEG_INFINITY;
    }
    match marginal_bw(b, b_min, link) {
        Ok(bw) if bw <= link.bw_max => sp_price(b, sp) - sp_cost(b, bw, sp),
        _ => f64::NEG_INFINITY,
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, z) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                (a + (z - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Last feasible point between a feasible `inside` and an infeasible `outside`.
fn feasibility_edge(inside: f64, outside: f64, f: &impl Fn(f64) -> f64) -> f64 {
    let (mut good, mut bad) = (inside, outside);
    for _ in 0..200 {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if f(mid).is_finite() {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Golden-section maximization on `[lo, hi]`.
pub fn golden_section_max(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol * hi.abs().max(1.0) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

fn marginal_offer(b: f64, sp: &SpProfile, link: &LinkState, b_min: f64) -> Option<Offer> {
    let bw = marginal_bw(b, b_min, link).ok()?;
    Some(Offer {
        rate: b,
        price: sp_price(b, sp),
        bandwidth: bw,
        guarantee: b_min / b,
    })
}

/// Profit-maximizing marginal bid over `b ∈ (b_min, b_max]`, or the reason
/// the provider stays out.
///
/// A log-spaced grid locates the best region (the objective need not be
/// unimodal); golden-section search then refines between the neighbours of
/// the best grid point, with the bandwidth cap located by bisection when a
/// neighbour falls outside it.
pub fn optimize_bid(sp: &SpProfile, link: &LinkState, b_min: f64) -> Bid {
    if !link.covered {
        return Bid::none(NoBidReason::NotCovered);
    }
    let lo = b_min * (1.0 + LOWER_OFFSET);
    if !(link.bw_max > 0.0 && link.mean_snr > 0.0 && link.b_max > lo) {
        return Bid::none(NoBidReason::Infeasible);
    }
    let f = |b: f64| bid_objective(b, sp, link, b_min);
    let grid = log_grid(lo, link.b_max, GRID_POINTS);
    let values: Vec<f64> = grid.iter().map(|&b| f(b)).collect();
    let Some(best) = (0..grid.len())
        .filter(|&i| values[i].is_finite())
        .max_by(|&i, &j| values[i].total_cmp(&values[j]).then(j.cmp(&i)))
    else {
        return match thin_feasible_point(lo, link.b_max, sp, link, b_min) {
            Some(b) => finish(b, f(b), sp, link, b_min),
            None => Bid::none(NoBidReason::Infeasible),
        };
    };

    let left = match best.checked_sub(1) {
        Some(i) if values[i].is_finite() => grid[i],
        Some(i) => feasibility_edge(grid[best], grid[i], &f),
        None => grid[best],
    };
    let right = match grid.get(best + 1) {
        Some(&b) if values[best + 1].is_finite() => b,
        Some(&b) => feasibility_edge(grid[best], b, &f),
        None => grid[best],
    };
    let mut candidates = vec![(grid[best], values[best]), (left, f(left)), (right, f(right))];
    if right > left {
        candidates.push(golden_section_max(left, right, RATE_TOLERANCE, f));
    }
    let (b, v) = candidates
        .into_iter()
        .filter(|(_, v)| v.is_finite())
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
    finish(b, v, sp, link, b_min)
}

fn finish(b: f64, value: f64, sp: &SpProfile, link: &LinkState, b_min: f64) -> Bid {
    if !value.is_finite() {
        return Bid::none(NoBidReason::Infeasible);
    }
    if value < 0.0 {
        return Bid::none(NoBidReason::Unprofitable);
    }
    match marginal_offer(b, sp, link, b_min) {
        Some(o) => Bid::Offer(o),
        None => Bid::none(NoBidReason::Infeasible),
    }
}

/// When no grid point fits the bandwidth cap the feasible set, if any, is a
/// sliver around the bandwidth minimum; find that minimum directly.
fn thin_feasible_point(lo: f64, hi: f64, sp: &SpProfile, link: &LinkState, b_min: f64) -> Option<f64> {
    let neg_bw = |b: f64| marginal_bw(b, b_min, link).map_or(f64::NEG_INFINITY, |bw| -bw);
    let (b, _) = golden_section_max(lo, hi, RATE_TOLERANCE, neg_bw);
    bid_objective(b, sp, link, b_min).is_finite().then_some(b)
}

/// Expansion with the link's own per-user budget as the cap.
pub fn expand_bw_pt(bid_eut: &Bid, model: DecisionModel, link: &LinkState) -> Bid {
    expand_bw_pt_within(bid_eut, model, link, link.bw_max)
}

/// Guarantee and bandwidth a provider must deliver at `rate` so that a user
/// perceives the advertised `guarantee`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTarget {
    pub lambda: f64,
    pub bandwidth: f64,
    /// Bandwidth behind the advertised guarantee itself.
    pub eut_bandwidth: f64,
    pub expanded: bool,
}

/// Guarantees at or below `1/e` are already overweighted and keep their
/// bandwidth; above it the target is `λ = w⁻¹(F̄)`.
pub fn expansion_target(rate: f64, guarantee: f64, model: DecisionModel, link: &LinkState) -> Result<ExpansionTarget> {
    let eut_bandwidth = guarantee_inverse_bw(rate, guarantee, link)?;
    if !model.is_prospect() || guarantee <= PRELEC_FIXED_POINT {
        return Ok(ExpansionTarget {
            lambda: guarantee,
            bandwidth: eut_bandwidth,
            eut_bandwidth,
            expanded: false,
        });
    }
    let lambda = model.weight_inverse(guarantee)?;
    if lambda >= 1.0 {
        return Err(Error::GuaranteeUnreachable(guarantee));
    }
    Ok(ExpansionTarget {
        lambda,
        bandwidth: guarantee_inverse_bw(rate, lambda, link)?,
        eut_bandwidth,
        expanded: true,
    })
}

/// Re-targets the bid at [`expansion_target`], keeping rate and price and
/// paying for the extra bandwidth.
pub fn expand_bw_pt_within(bid_eut: &Bid, model: DecisionModel, link: &LinkState, cap: f64) -> Bid {
    let Bid::Offer(offer) = bid_eut else {
        return *bid_eut;
    };
    if !model.is_prospect() || offer.guarantee <= PRELEC_FIXED_POINT {
        return *bid_eut;
    }
    let target = match expansion_target(offer.rate, offer.guarantee.min(1.0), model, link) {
        Ok(t) => t,
        Err(_) => return Bid::none(NoBidReason::GuaranteeUnreachable),
    };
    if target.bandwidth > cap {
        return Bid::none(NoBidReason::BudgetExhausted);
    }
    Bid::Offer(Offer {
        bandwidth: target.bandwidth,
        guarantee: target.lambda,
        ..*offer
    })
}

/// Whether the bid pays for itself when accepted with `acceptance_prob`.
pub fn participation_check(bid: &Bid, acceptance_prob: f64, sp: &SpProfile) -> bool {
    match bid {
        Bid::Offer(o) => acceptance_prob * o.price - sp_cost(o.rate, o.bandwidth, sp) >= 0.0,
        Bid::NoBid { .. } => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::service_guarantee;
    use crate::model::fixtures::{offer, sp};
    use crate::model::SpKind;
    use proptest::prelude::*;

    fn link(snr: f64, bw_max: f64, b_max: f64) -> LinkState {
        LinkState {
            b_max,
            ..LinkState::from_snr(snr, bw_max)
        }
    }

    #[test]
    fn marginal_bw_examples() {
        let l = link(10.0, 5.0, 10.0);
        assert!(matches!(marginal_bw(1.0, 1.0, &l), Err(Error::RateNotAboveMinimum { .. })));
        let bw = marginal_bw(2.0, 1.0, &l).unwrap();
        assert!((bw - 0.6694).abs() < 1e-4, "{bw}");
        assert!((2.0 * service_guarantee(2.0, bw, &l) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn optimal_bid_perturbations() {
        let p = sp(SpKind::WiFi, 1.0, 1.2, 0.1, 0.5);
        let l = link(10.0, 5.0, 10.0);
        let o = *optimize_bid(&p, &l, 1.0).offer().unwrap();
        assert!((o.rate * service_guarantee(o.rate, o.bandwidth, &l) - 1.0).abs() < 1e-6);
        let short = o.bandwidth * 0.99;
        assert!(o.rate * service_guarantee(o.rate, short, &l) < 1.0);
        let extra = Offer { bandwidth: o.bandwidth * 1.01, ..o };
        assert!(sp_price(o.rate, &p) - sp_cost(o.rate, extra.bandwidth, &p) < sp_price(o.rate, &p) - sp_cost(o.rate, o.bandwidth, &p));
    }

    #[test]
    fn matches_fine_grid() {
        let p = sp(SpKind::WiFi, 1.0, 1.2, 0.1, 0.5);
        let l = link(10.0, 5.0, 10.0);
        let o = *optimize_bid(&p, &l, 1.0).offer().unwrap();
        let got = bid_objective(o.rate, &p, &l, 1.0);
        let n = 1_000_000;
        let oracle = (1..=n)
            .map(|i| 1.0 + 9.0 * i as f64 / n as f64)
            .map(|b| bid_objective(b, &p, &l, 1.0))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(got >= oracle - 1e-6 * oracle.abs(), "{got} vs {oracle}");
    }

    #[test]
    fn losing_bids_are_withheld() {
        let p = sp(SpKind::Cellular, 0.01, 1.2, 5.0, 5.0);
        assert_eq!(
            optimize_bid(&p, &link(10.0, 5.0, 10.0), 1.0),
            Bid::none(NoBidReason::Unprofitable)
        );
        let mut out = link(10.0, 5.0, 10.0);
        out.covered = false;
        assert_eq!(optimize_bid(&p, &out, 1.0), Bid::none(NoBidReason::NotCovered));
        assert_eq!(
            optimize_bid(&p, &link(10.0, 5.0, 0.9), 1.0),
            Bid::none(NoBidReason::Infeasible)
        );
    }

    #[test]
    fn expansion_examples() {
        let pt = DecisionModel::prospect(0.7).unwrap();
        let l = link(10.0, 50.0, 100.0);
        let bid = offer(2.0, 1.0, 0.5, 0.8);
        let Bid::Offer(x) = expand_bw_pt(&bid, pt, &l) else { panic!() };
        assert!((x.guarantee - 0.8892).abs() < 1e-3);
        assert!((pt.weight(service_guarantee(2.0, x.bandwidth, &l)).unwrap() - 0.8).abs() < 1e-6);
        assert_eq!((x.rate, x.price), (2.0, 1.0));

        let low = offer(2.0, 1.0, 0.5, 0.3);
        assert_eq!(expand_bw_pt(&low, pt, &l), low);
        assert_eq!(expand_bw_pt(&bid, DecisionModel::Eut, &l), bid);
        assert_eq!(
            expand_bw_pt(&bid, pt, &link(10.0, 0.1, 100.0)),
            Bid::none(NoBidReason::BudgetExhausted)
        );
        assert_eq!(
            expand_bw_pt(&offer(2.0, 1.0, 0.5, 1.0), pt, &l),
            Bid::none(NoBidReason::GuaranteeUnreachable)
        );
    }

    #[test]
    fn participation_examples() {
        let p = sp(SpKind::WiFi, 1.0, 1.2, 0.1, 0.5);
        let bid = offer(2.0, 5.0, 4.0, 0.5); // cost 2.2
        assert!(participation_check(&bid, 1.0, &p));
        assert!(!participation_check(&bid, 0.0, &p));
        assert!(participation_check(&bid, 0.5, &p));
        assert!(!participation_check(&offer(2.0, 4.0, 4.0, 0.5), 0.5, &p));
        assert!(participation_check(&offer(2.0, 4.4, 4.0, 0.5), 0.5, &p));
    }

    proptest! {
        #[test]
        fn emitted_bids_sit_on_the_rate_constraint(
            alpha in 0.05f64..2.0, beta in 1.05f64..2.0, cr in 0.01f64..0.5, cb in 0.01f64..1.0,
            snr in 0.5f64..1e3, bw_max in 0.5f64..20.0, b_min in 0.2f64..4.0,
        ) {
            let p = sp(SpKind::WiFi, alpha, beta, cr, cb);
            let l = LinkState::from_snr(snr, bw_max);
            if let Bid::Offer(o) = optimize_bid(&p, &l, b_min) {
                let got = o.rate * service_guarantee(o.rate, o.bandwidth, &l);
                prop_assert!((got - b_min).abs() <= 1e-6 * b_min);
                prop_assert!(o.bandwidth <= l.bw_max * (1.0 + 1e-12));
                prop_assert!(o.rate <= l.b_max);
            }
        }

        #[test]
        fn no_better_grid_neighbour(
            alpha in 0.05f64..2.0, beta in 1.05f64..2.0, cr in 0.01f64..0.5, cb in 0.01f64..1.0,
            snr in 0.5f64..1e3, bw_max in 0.5f64..20.0,
        ) {
            let p = sp(SpKind::Cellular, alpha, beta, cr, cb);
            let l = LinkState::from_snr(snr, bw_max);
            if let Bid::Offer(o) = optimize_bid(&p, &l, 1.0) {
                let step = (l.b_max / (1.0 + LOWER_OFFSET)).ln() / (GRID_POINTS - 1) as f64;
                let here = bid_objective(o.rate, &p, &l, 1.0);
                for b in [o.rate * step.exp(), o.rate / step.exp()] {
                    prop_assert!(bid_objective(b, &p, &l, 1.0) <= here + 1e-12 * here.abs());
                }
            }
        }

        #[test]
        fn expansion_grows_with_guarantee(g in 0.38f64..0.98, dg in 0.001f64..0.01, snr in 1.0f64..100.0) {
            let pt = DecisionModel::prospect(0.7).unwrap();
            let l = link(snr, 1e9, 1e9);
            let extra = |g: f64| {
                let eut = guarantee_inverse_bw(2.0, g, &l).unwrap();
                let bid = offer(2.0, 1.0, eut, g);
                expand_bw_pt(&bid, pt, &l).offer().unwrap().bandwidth - eut
            };
            let g2 = (g + dg).min(0.985);
            prop_assert!(extra(g) > 0.0);
            prop_assert!(extra(g2) > extra(g));
        }

        #[test]
        fn expansion_keeps_rate_and_price(g in 0.01f64..0.99, snr in 1.0f64..100.0) {
            let pt = DecisionModel::prospect(0.7).unwrap();
            let l = link(snr, 1e9, 1e9);
            let bid = offer(3.0, 2.5, 1.0, g);
            if let Bid::Offer(x) = expand_bw_pt(&bid, pt, &l) {
                prop_assert_eq!((x.rate, x.price), (3.0, 2.5));
            }
        }
    }
}
