//! Radio side of the model: path loss, coverage, per-user bandwidth budgets,
//! achievable rate and the service-guarantee curve.
//!
//! The realized rate on a link with bandwidth `bw` is `bw·log2(1 + γ̄·X)` where
//! `X ~ Exp(1)` is the Rayleigh power gain and `γ̄` the mean SNR, so the
//! probability of reaching an advertised rate `b` is
//! `F̄(b, bw) = exp(−(2^(b/bw) − 1)/γ̄)`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{SpProfile, UserProfile};

/// Thermal noise density at room temperature (dBm/Hz).
pub const THERMAL_NOISE_DBM_HZ: f64 = -174.0;

/// Default mobile antenna height (m).
pub const DEFAULT_USER_HEIGHT_M: f64 = 1.5;

/// Closest a user may sit to a base station; Hata is meaningless at zero range.
pub const MIN_LINK_DISTANCE_M: f64 = 1.0;

/// One user/base-station pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkState {
    pub path_loss_db: f64,
    /// Mean received SNR γ̄ (linear).
    pub mean_snr: f64,
    pub covered: bool,
    /// Per-user bandwidth budget (MHz).
    pub bw_max: f64,
    /// Largest rate the budget can carry at the mean SNR (Mbps).
    pub b_max: f64,
}

impl LinkState {
    /// A covered link with the given mean SNR and budget, bypassing propagation.
    pub fn from_snr(mean_snr: f64, bw_max: f64) -> Self {
        LinkState {
            path_loss_db: 0.0,
            mean_snr,
            covered: true,
            bw_max,
            b_max: shannon_rate(bw_max, mean_snr),
        }
    }

    pub fn uncovered(path_loss_db: f64) -> Self {
        LinkState {
            path_loss_db,
            mean_snr: 0.0,
            covered: false,
            bw_max: 0.0,
            b_max: 0.0,
        }
    }

    /// Same link with a different bandwidth budget; `b_max` follows.
    pub fn with_bw_max(mut self, bw_max: f64) -> Self {
        self.bw_max = bw_max;
        self.b_max = if self.covered {
            shannon_rate(bw_max, self.mean_snr)
        } else {
            0.0
        };
        self
    }
}

/// `bw·log2(1 + snr)`.
pub fn shannon_rate(bw: f64, snr: f64) -> f64 {
    if bw <= 0.0 || snr <= 0.0 {
        return 0.0;
    }
    bw * snr.ln_1p() / LN_2
}

fn mobile_correction_small_city(f_mhz: f64, h_ue_m: f64) -> f64 {
    let lf = f_mhz.log10();
    (1.1 * lf - 0.7) * h_ue_m - (1.56 * lf - 0.8)
}

/// Median urban path loss (dB).
///
/// Classic Okumura-Hata up to 1500 MHz, COST-231-Hata above (medium city,
/// no metropolitan correction). The COST-231 fit is stretched past its 2 GHz
/// ceiling for 2.4 GHz WiFi.
pub fn hata_path_loss(freq_mhz: f64, d_km: f64, h_bs_m: f64, h_ue_m: f64) -> Result<f64> {
    if !(d_km > 0.0 && d_km.is_finite()) {
        return Err(Error::NonPositiveDistance(d_km));
    }
    if !(150.0..=3000.0).contains(&freq_mhz) {
        return Err(Error::FrequencyOutOfRange(freq_mhz));
    }
    if !(h_bs_m > 0.0 && h_ue_m > 0.0) {
        return Err(Error::invalid(
            "antenna height",
            format!("heights must be positive, got {h_bs_m} m and {h_ue_m} m"),
        ));
    }
    let lf = freq_mhz.log10();
    let lh = h_bs_m.log10();
    let a_hm = mobile_correction_small_city(freq_mhz, h_ue_m);
    let slope = (44.9 - 6.55 * lh) * d_km.log10();
    let intercept = if freq_mhz <= 1500.0 {
        69.55 + 26.16 * lf
    } else {
        46.3 + 33.9 * lf
    };
    Ok(intercept - 13.82 * lh - a_hm + slope)
}

/// Noise power (dBm) over `bw_mhz`.
pub fn noise_power_dbm(noise_density_dbm_hz: f64, bw_mhz: f64) -> f64 {
    noise_density_dbm_hz + 10.0 * (bw_mhz * 1e6).log10()
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Distance (m) between the user and the base station, clamped from below.
pub fn link_distance_m(user: &UserProfile, sp: &SpProfile) -> f64 {
    user.position.distance_to(&sp.position).max(MIN_LINK_DISTANCE_M)
}

pub fn path_loss(user: &UserProfile, sp: &SpProfile, h_ue_m: f64) -> Result<f64> {
    hata_path_loss(
        sp.frequency_mhz,
        link_distance_m(user, sp) / 1000.0,
        sp.antenna_height_m,
        h_ue_m,
    )
}

/// Mean SNR (linear) of a link with the given path loss, measured over `bw_mhz`.
pub fn mean_snr(sp: &SpProfile, path_loss_db: f64, noise_density_dbm_hz: f64, bw_mhz: f64) -> f64 {
    let rx = sp.tx_power_dbm - path_loss_db;
    db_to_linear(rx - noise_power_dbm(noise_density_dbm_hz, bw_mhz))
}

/// Whether the base station covers the user.
///
/// The SNR test uses the whole usable band, so coverage does not depend on
/// how many other users end up sharing it.
pub fn is_covered(user: &UserProfile, sp: &SpProfile, noise_density_dbm_hz: f64, h_ue_m: f64) -> Result<bool> {
    if !user.active {
        return Ok(false);
    }
    if let Some(radius) = sp.coverage_radius_m {
        if user.position.distance_to(&sp.position) > radius {
            return Ok(false);
        }
    }
    let loss = path_loss(user, sp, h_ue_m)?;
    let snr = mean_snr(sp, loss, noise_density_dbm_hz, sp.usable_bandwidth());
    Ok(10.0 * snr.log10() >= sp.coverage_snr_threshold_db)
}

/// Per-user budget `G_BA·BW / Σ a_j·c_j`; the whole usable band when nobody
/// is both active and covered.
pub fn allocate_bw(sp: &SpProfile, users: &[(bool, bool)]) -> f64 {
    let served = users.iter().filter(|(active, covered)| *active && *covered).count();
    if served == 0 {
        sp.usable_bandwidth()
    } else {
        sp.usable_bandwidth() / served as f64
    }
}

/// Full link state for one user/base-station pair, given the per-user budget
/// from [`allocate_bw`]. Noise is integrated over that budget.
pub fn link_state(
    user: &UserProfile,
    sp: &SpProfile,
    noise_density_dbm_hz: f64,
    h_ue_m: f64,
    bw_max: f64,
) -> Result<LinkState> {
    let loss = path_loss(user, sp, h_ue_m)?;
    if !is_covered(user, sp, noise_density_dbm_hz, h_ue_m)? || bw_max <= 0.0 {
        return Ok(LinkState::uncovered(loss));
    }
    let snr = mean_snr(sp, loss, noise_density_dbm_hz, bw_max);
    Ok(LinkState {
        path_loss_db: loss,
        mean_snr: snr,
        covered: true,
        bw_max,
        b_max: shannon_rate(bw_max, snr),
    })
}

/// Probability that the realized rate on `bw` reaches `b`.
pub fn service_guarantee(b: f64, bw: f64, link: &LinkState) -> f64 {
    if b <= 0.0 {
        return 1.0;
    }
    if bw <= 0.0 || link.mean_snr <= 0.0 {
        return 0.0;
    }
    let excess = (b / bw * LN_2).exp_m1();
    (-excess / link.mean_snr).exp()
}

/// Smallest bandwidth at which rate `b` is met with probability `target`.
pub fn guarantee_inverse_bw(b: f64, target: f64, link: &LinkState) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::invalid("rate", format!("must be positive, got {b}")));
    }
    if target >= 1.0 {
        return Err(Error::GuaranteeUnreachable(target));
    }
    if !(target > 0.0) {
        return Err(Error::ProbabilityOutOfRange(target));
    }
    if !(link.mean_snr > 0.0) {
        return Err(Error::invalid("mean_snr", format!("must be positive, got {}", link.mean_snr)));
    }
    let spectral = (link.mean_snr * -target.ln()).ln_1p() / LN_2;
    Ok(b / spectral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::sp;
    use crate::model::{Point, SpKind};
    use proptest::prelude::*;

    fn bisect_bw(b: f64, target: f64, link: &LinkState) -> f64 {
        let (mut lo, mut hi) = (1e-9f64, 1e6f64);
        for _ in 0..300 {
            let mid = (lo * hi).sqrt();
            if service_guarantee(b, mid, link) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo * hi).sqrt()
    }

    #[test]
    fn hata_reference_point() {
        let got = hata_path_loss(900.0, 1.0, 50.0, 1.5).unwrap();
        assert!((got - 123.337).abs() < 5e-3, "{got}");
        assert!(hata_path_loss(900.0, 2.0, 50.0, 1.5).unwrap() > got);
    }

    #[test]
    fn hata_cost231_branch() {
        // Evaluated term by term: 46.3 + 33.9 log f − 13.82 log hb − a(hm) + (44.9 − 6.55 log hb) log d
        let f: f64 = 2400.0;
        let (hb, hm, d): (f64, f64, f64) = (6.0, 1.5, 0.05);
        let a = (1.1 * f.log10() - 0.7) * hm - (1.56 * f.log10() - 0.8);
        let want = 46.3 + 33.9 * f.log10() - 13.82 * hb.log10() - a + (44.9 - 6.55 * hb.log10()) * d.log10();
        let got = hata_path_loss(f, d, hb, hm).unwrap();
        assert!((got - want).abs() < 1e-9);
        assert!((got - 98.30).abs() < 0.05, "{got}");
    }

    #[test]
    fn hata_rejects_bad_input() {
        assert!(matches!(hata_path_loss(900.0, 0.0, 30.0, 1.5), Err(Error::NonPositiveDistance(_))));
        assert!(hata_path_loss(900.0, -1.0, 30.0, 1.5).is_err());
        assert!(matches!(hata_path_loss(5000.0, 1.0, 30.0, 1.5), Err(Error::FrequencyOutOfRange(_))));
    }

    #[test]
    fn allocation_examples() {
        let p = sp(SpKind::Cellular, 1.0, 1.2, 0.1, 0.1);
        let ten = vec![(true, true); 10];
        assert!((allocate_bw(&p, &ten) - 1.8).abs() < 1e-12);
        assert!((allocate_bw(&p, &[]) - 18.0).abs() < 1e-12);
        let mut seven = vec![(true, true); 7];
        seven.extend([(false, true), (true, false), (false, false)]);
        assert!((allocate_bw(&p, &seven) - 18.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn unit_snr_unit_band_carries_one() {
        assert!((LinkState::from_snr(1.0, 1.0).b_max - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inactive_and_out_of_radius_users_are_not_covered() {
        let mut wifi = sp(SpKind::WiFi, 1.0, 1.2, 0.1, 0.1);
        wifi.frequency_mhz = 2400.0;
        wifi.tx_power_dbm = 23.0;
        wifi.antenna_height_m = 6.0;
        wifi.coverage_radius_m = Some(300.0 * 0.3048);
        let mut u = crate::model::UserProfile::new(1.0, 2.0, 1.0).unwrap().at(Point::new(30.0, 0.0));
        assert!(is_covered(&u, &wifi, THERMAL_NOISE_DBM_HZ, 1.5).unwrap());
        u.active = false;
        assert!(!is_covered(&u, &wifi, THERMAL_NOISE_DBM_HZ, 1.5).unwrap());
        let far = u.clone().at(Point::new(95.0, 0.0));
        let far = crate::model::UserProfile { active: true, ..far };
        assert!(!is_covered(&far, &wifi, THERMAL_NOISE_DBM_HZ, 1.5).unwrap());
        let link = link_state(&far, &wifi, THERMAL_NOISE_DBM_HZ, 1.5, 2.0).unwrap();
        assert!(!link.covered);
        assert_eq!(link.b_max, 0.0);
    }

    #[test]
    fn guarantee_examples() {
        let link = LinkState::from_snr(10.0, 5.0);
        assert!((service_guarantee(1.0, 1.0, &link) - (-0.1f64).exp()).abs() < 1e-15);
        assert!(service_guarantee(1.0, 1e9, &link) > 1.0 - 1e-9);
        assert_eq!(service_guarantee(1e6, 1.0, &link), 0.0);
        assert_eq!(service_guarantee(1.0, 0.0, &link), 0.0);
    }

    #[test]
    fn inverse_examples() {
        let link = LinkState::from_snr(10.0, 5.0);
        let bw = guarantee_inverse_bw(2.0, 0.5, &link).unwrap();
        assert!((bw - bisect_bw(2.0, 0.5, &link)).abs() < 1e-9);
        assert!((bw - 0.6694).abs() < 1e-4, "{bw}");
        assert!(matches!(guarantee_inverse_bw(2.0, 1.0, &link), Err(Error::GuaranteeUnreachable(_))));
        assert!(guarantee_inverse_bw(2.0, 0.0, &link).is_err());
    }

    proptest! {
        #[test]
        fn inverse_round_trips(b in 0.01f64..100.0, q in 0.001f64..0.999, snr in 0.01f64..1e4) {
            let link = LinkState::from_snr(snr, 1.0);
            let bw = guarantee_inverse_bw(b, q, &link).unwrap();
            let back = service_guarantee(b, bw, &link);
            prop_assert!((back - q).abs() <= 1e-9 * q);
        }

        #[test]
        fn guarantee_monotone(
            b in 0.1f64..20.0, bw in 0.1f64..20.0, snr in 0.1f64..1e3, k in 1.01f64..2.0,
        ) {
            let link = LinkState::from_snr(snr, bw);
            let base = service_guarantee(b, bw, &link);
            prop_assume!(base > 1e-300 && base < 1.0 - 1e-12);
            prop_assert!(service_guarantee(b, bw * k, &link) > base);
            prop_assert!(service_guarantee(b * k, bw, &link) < base);
            prop_assert!(service_guarantee(b, bw, &LinkState::from_snr(snr * k, bw)) > base);
            prop_assert!(base > 0.0 && base < 1.0);
        }

        #[test]
        fn hata_monotone_in_distance_and_frequency(
            d in 0.01f64..10.0, k in 1.01f64..3.0, f in 150.0f64..1400.0, hb in 5.0f64..100.0,
        ) {
            let base = hata_path_loss(f, d, hb, 1.5).unwrap();
            prop_assert!(hata_path_loss(f, d * k, hb, 1.5).unwrap() > base);
            prop_assert!(hata_path_loss((f * k).min(1500.0), d, hb, 1.5).unwrap() > base);
            let hi = 1600.0 + (f - 150.0);
            prop_assert!(hata_path_loss(hi + 50.0, d, hb, 1.5).unwrap() > hata_path_loss(hi, d, hb, 1.5).unwrap());
        }

        #[test]
        fn allocation_never_over_commits(n in 1usize..500, mask in any::<u64>()) {
            let p = sp(SpKind::WiFi, 1.0, 1.2, 0.1, 0.1);
            let flags: Vec<(bool, bool)> = (0..n).map(|i| (mask >> (i % 64) & 1 == 1, i % 3 != 0)).collect();
            let served = flags.iter().filter(|(a, c)| *a && *c).count();
            prop_assume!(served > 0);
            let total = allocate_bw(&p, &flags) * served as f64;
            prop_assert!((total - p.usable_bandwidth()).abs() <= 1e-9);
        }
    }
}
