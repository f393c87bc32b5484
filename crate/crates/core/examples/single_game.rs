//! One user from the default placement, played under each scenario.
//!
//! `cargo run --example single_game [user_index]`

use hetnet::sim::{single_game, Scenario, ScenarioConfig};

fn main() -> hetnet::Result<()> {
    let cfg = ScenarioConfig {
        n_users: 400,
        ..ScenarioConfig::default()
    };
    let index = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for scenario in Scenario::ALL {
        let out = single_game(&cfg, index, scenario.model(&cfg)?, scenario.expansion())?;
        println!("{scenario}: {:?}, user {:.3}, cellular {:.4}, wifi {:.4}", out.ne_class, out.u_user, out.u_sp_c, out.u_sp_w);
        for (name, bid) in [("  cellular", out.bid_c), ("  wifi    ", out.bid_w)] {
            match bid.offer() {
                Some(o) => println!(
                    "{name} rate {:.3} price {:.4} bw {:.4} guarantee {:.4}",
                    o.rate, o.price, o.bandwidth, o.guarantee
                ),
                None => println!("{name} {bid:?}"),
            }
        }
    }
    Ok(())
}
