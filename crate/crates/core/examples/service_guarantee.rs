//! Path loss, mean SNR and the probability that a Rayleigh-faded link
//! delivers an advertised rate, checked against direct sampling.
//!
//! `cargo run --release --example service_guarantee`

use hetnet::channel::{guarantee_inverse_bw, hata_path_loss, noise_power_dbm, service_guarantee, shannon_rate, LinkState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand::Rng;

fn main() -> hetnet::Result<()> {
    println!("path loss, hb=30 m macro at 900 MHz and hb=6 m hotspot at 2400 MHz");
    for d_km in [0.02, 0.05, 0.1, 0.3, 1.0] {
        println!(
            "  d = {d_km:>5} km   macro {:>7.2} dB   hotspot {:>7.2} dB",
            hata_path_loss(900.0, d_km, 30.0, 1.5)?,
            hata_path_loss(2400.0, d_km, 6.0, 1.5)?
        );
    }

    let bw = 1.0;
    let loss = hata_path_loss(2400.0, 0.05, 6.0, 1.5)?;
    let snr_db = 23.0 - loss - noise_power_dbm(-174.0, bw);
    let link = LinkState::from_snr(10f64.powf(snr_db / 10.0), bw);
    println!("\nhotspot at 50 m over {bw} MHz: mean SNR {snr_db:.1} dB, b_max {:.2} Mbps", link.b_max);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples = 100_000;
    println!("{:>8} {:>10} {:>10}", "rate", "closed", "sampled");
    for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let b = frac * link.b_max;
        let hits = (0..samples)
            .filter(|_| {
                // exponential gain with the link's mean
                let g = -link.mean_snr * (1.0 - rng.random::<f64>()).ln();
                shannon_rate(bw, g) >= b
            })
            .count();
        println!("{b:>8.2} {:>10.5} {:>10.5}", service_guarantee(b, bw, &link), hits as f64 / samples as f64);
    }

    let b = 0.5 * link.b_max;
    let need = guarantee_inverse_bw(b, 0.95, &link)?;
    println!("\nbandwidth for {b:.2} Mbps at 95%: {need:.4} MHz");
    Ok(())
}
