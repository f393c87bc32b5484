//! Equilibrium labels as the user's payoff scale grows, for symmetric and
//! asymmetric marginal offers.
//!
//! `cargo run --example ne_tables`

use hetnet::equilibrium::classify;
use hetnet::model::{Bid, NeClass, Offer, UserProfile};
use hetnet::DecisionModel;

fn marginal(rate: f64, price: f64, b_min: f64) -> Bid {
    Bid::Offer(Offer {
        rate,
        price,
        bandwidth: 1.0,
        guarantee: b_min / rate,
    })
}

fn row(label: &str, bid_c: Bid, bid_w: Bid, model: DecisionModel) -> hetnet::Result<()> {
    print!("{label:<22}");
    for delta in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        let user = UserProfile::new(delta, 2.0, 1.0)?;
        let class = classify(&bid_c, &bid_w, &user, model).class;
        let short = match class {
            NeClass::Reject00 => "00",
            NeClass::WifiOnly01 => "01",
            NeClass::CellOnly10 => "10",
            NeClass::Both11 => "11",
            NeClass::Mixed0110 => "01|10",
            NeClass::Infeasible => "-",
        };
        print!("{short:>7}");
    }
    println!();
    Ok(())
}

fn main() -> hetnet::Result<()> {
    let pt = DecisionModel::prospect(0.7)?;
    print!("{:<22}", "delta");
    for delta in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        print!("{delta:>7}");
    }
    println!();
    let same = marginal(1.25, 1.0, 1.0);
    row("EUT symmetric", same, same, DecisionModel::Eut)?;
    row("EUT cellular cheaper", marginal(1.25, 0.8, 1.0), marginal(1.25, 1.0, 1.0), DecisionModel::Eut)?;
    row("EUT wifi cheaper", marginal(1.25, 1.0, 1.0), marginal(1.25, 0.8, 1.0), DecisionModel::Eut)?;
    row("PT, guarantee 0.8", same, same, pt)?;
    let low = marginal(5.0, 1.0, 1.0);
    row("PT, guarantee 0.2", low, low, pt)?;
    row("EUT, guarantee 0.2", low, low, DecisionModel::Eut)?;
    Ok(())
}
