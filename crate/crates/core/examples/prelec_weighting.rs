//! How a prospect-theory user distorts advertised guarantees.
//!
//! `cargo run --example prelec_weighting`

use hetnet::prospect::{DecisionModel, PRELEC_FIXED_POINT};

fn main() -> hetnet::Result<()> {
    let alphas = [0.3, 0.5, 0.7, 0.9];
    let models: Vec<DecisionModel> = alphas.iter().map(|&a| DecisionModel::prospect(a)).collect::<Result<_, _>>()?;

    print!("{:>6}", "p");
    for a in alphas {
        print!("  w(p) a={a:<4}");
    }
    println!();
    for p in [0.01, 0.05, 0.1, 0.2, PRELEC_FIXED_POINT, 0.5, 0.7, 0.8, 0.9, 0.99] {
        print!("{p:>6.3}");
        for m in &models {
            print!("  {:>11.5}", m.weight(p)?);
        }
        println!();
    }

    // guarantee a provider must deliver so the user perceives 0.8
    let pt = DecisionModel::prospect(0.7)?;
    let lambda = pt.weight_inverse(0.8)?;
    println!("\nalpha 0.7: w^-1(0.8) = {lambda:.6}, w(that) = {:.6}", pt.weight(lambda)?);
    Ok(())
}
