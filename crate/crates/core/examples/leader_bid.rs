//! A provider's best offer for one user, and what happens around it.
//!
//! `cargo run --example leader_bid`

use hetnet::channel::{service_guarantee, LinkState};
use hetnet::leader::{bid_objective, marginal_bw, optimize_bid};
use hetnet::model::{Point, SpKind, SpProfile};

fn main() -> hetnet::Result<()> {
    let sp = SpProfile {
        kind: SpKind::WiFi,
        alpha: 1.0,
        beta: 1.2,
        cost_rate: 0.1,
        cost_bw: 0.5,
        bw_total: 40.0,
        tx_power_dbm: 23.0,
        g_ba: 0.9,
        position: Point::default(),
        frequency_mhz: 2400.0,
        antenna_height_m: 6.0,
        coverage_snr_threshold_db: 0.0,
        coverage_radius_m: None,
    };
    let b_min = 1.0;
    let link = LinkState::from_snr(10.0, 5.0);

    println!("{:>7} {:>9} {:>10}", "rate", "bw", "utility");
    for b in [1.1, 1.5, 2.0, 4.0, 8.0, 12.0, link.b_max] {
        println!("{b:>7.2} {:>9.4} {:>10.4}", marginal_bw(b, b_min, &link)?, bid_objective(b, &sp, &link, b_min));
    }

    let bid = optimize_bid(&sp, &link, b_min);
    let Some(o) = bid.offer() else {
        println!("no bid: {bid:?}");
        return Ok(());
    };
    println!("\nbid: rate {:.4}, price {:.4}, bw {:.4}, guarantee {:.4}", o.rate, o.price, o.bandwidth, o.guarantee);
    println!("expected rate {:.9} (b_min {b_min})", o.rate * service_guarantee(o.rate, o.bandwidth, &link));
    let short = 0.99 * o.bandwidth;
    println!("1% less bandwidth: expected rate {:.6}", o.rate * service_guarantee(o.rate, short, &link));
    Ok(())
}
