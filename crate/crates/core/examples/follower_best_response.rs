//! The user's four choices for a pair of offers, under both decision models.
//!
//! `cargo run --example follower_best_response`

use hetnet::follower::{best_response, is_feasible, perceived_guarantee};
use hetnet::model::{user_utility, Bid, Offer, Strategy, UserProfile};
use hetnet::DecisionModel;

fn offer(rate: f64, price: f64, guarantee: f64) -> Bid {
    Bid::Offer(Offer {
        rate,
        price,
        bandwidth: 1.0,
        guarantee,
    })
}

fn main() -> hetnet::Result<()> {
    let user = UserProfile::new(10.0, 2.0, 1.0)?;
    let pairs = [
        ("high guarantees", offer(1.25, 0.5, 0.8), offer(1.25, 0.5, 0.8)),
        ("low guarantees", offer(5.0, 1.5, 0.2), offer(4.0, 1.2, 0.25)),
    ];
    for (label, bid_c, bid_w) in pairs {
        println!("{label}");
        for model in [DecisionModel::Eut, DecisionModel::prospect(0.7)?] {
            let gc = perceived_guarantee(&bid_c, model);
            let gw = perceived_guarantee(&bid_w, model);
            print!("  {:<28}", format!("{model:?}"));
            for s in Strategy::ALL {
                let mark = if is_feasible(s, &bid_c, &bid_w, &user, model) { "" } else { "x" };
                print!(
                    " ({},{}){:>7.3}{mark:1}",
                    s.cellular as u8,
                    s.wifi as u8,
                    user_utility(s, &bid_c, &bid_w, &user, gc, gw)
                );
            }
            let (s, u) = best_response(&bid_c, &bid_w, &user, model);
            println!("  -> ({},{}) {u:.3}", s.cellular as u8, s.wifi as u8);
        }
    }
    println!("x = infeasible");
    Ok(())
}
