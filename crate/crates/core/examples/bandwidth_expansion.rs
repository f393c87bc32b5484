//! Extra bandwidth a provider spends so that a prospect-theory user
//! perceives the guarantee it would have offered an expected-utility user.
//!
//! `cargo run --example bandwidth_expansion`

use hetnet::channel::LinkState;
use hetnet::leader::expansion_target;
use hetnet::DecisionModel;

fn main() -> hetnet::Result<()> {
    let link = LinkState::from_snr(10.0, f64::INFINITY);
    let rate = 2.0;
    for alpha in [0.5, 0.7, 0.9] {
        let pt = DecisionModel::prospect(alpha)?;
        println!("alpha {alpha}");
        println!("{:>9} {:>9} {:>9} {:>9} {:>7}", "F eut", "lambda", "bw eut", "bw pt", "extra");
        for g in [0.1, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95] {
            let t = expansion_target(rate, g, pt, &link)?;
            println!(
                "{g:>9.2} {:>9.4} {:>9.4} {:>9.4} {:>6.1}%",
                t.lambda,
                t.eut_bandwidth,
                t.bandwidth,
                100.0 * (t.bandwidth / t.eut_bandwidth - 1.0)
            );
        }
    }
    Ok(())
}
