//! Placement of base stations and users, and the resulting link table.

use std::f64::consts::TAU;

use rand::Rng;

use crate::channel::{allocate_bw, is_covered, link_state, LinkState};
use crate::error::Result;
use crate::model::{Point, SpKind, SpProfile, UserProfile};
use crate::sim::config::ScenarioConfig;

/// Index of the cellular base station in [`Topology::sps`].
pub const CELLULAR: usize = 0;

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    /// The cellular base station first, then the WiFi access points.
    pub sps: Vec<SpProfile>,
    pub users: Vec<UserProfile>,
}

/// Cellular base station at the centre, WiFi access points evenly spaced on
/// a ring, users uniform over the square.
pub fn generate_topology<R: Rng + ?Sized>(cfg: &ScenarioConfig, n_users: usize, rng: &mut R) -> Result<Topology> {
    let side = cfg.area_side_m;
    let centre = Point::new(side / 2.0, side / 2.0);
    let radius = cfg.wifi_ring_fraction * side;
    let mut sps = Vec::with_capacity(cfg.n_wifi + 1);
    sps.push(cfg.cellular.profile(SpKind::Cellular, centre));
    for k in 0..cfg.n_wifi {
        let angle = TAU * k as f64 / cfg.n_wifi as f64;
        let at = Point::new(centre.x + radius * angle.cos(), centre.y + radius * angle.sin());
        sps.push(cfg.wifi.profile(SpKind::WiFi, at));
    }
    let template = cfg.user_profile(Point::default())?;
    let users = (0..n_users)
        .map(|_| {
            let position = Point::new(rng.random_range(0.0..side), rng.random_range(0.0..side));
            let active = cfg.activity_probability >= 1.0 || rng.random_bool(cfg.activity_probability);
            UserProfile {
                position,
                active,
                ..template.clone()
            }
        })
        .collect();
    Ok(Topology { sps, users })
}

impl Topology {
    /// Link state of every user to every base station, `[user][sp]`, with
    /// each station's band split evenly among the users it covers.
    pub fn links(&self, cfg: &ScenarioConfig) -> Result<Vec<Vec<LinkState>>> {
        let noise = cfg.noise_density_dbm_hz;
        let h = cfg.user_height_m;
        let mut coverage = vec![vec![false; self.sps.len()]; self.users.len()];
        for (row, user) in coverage.iter_mut().zip(&self.users) {
            for (cell, sp) in row.iter_mut().zip(&self.sps) {
                *cell = is_covered(user, sp, noise, h)?;
            }
        }
        let budgets: Vec<f64> = self
            .sps
            .iter()
            .enumerate()
            .map(|(j, sp)| {
                let flags: Vec<(bool, bool)> = self.users.iter().zip(&coverage).map(|(u, c)| (u.active, c[j])).collect();
                allocate_bw(sp, &flags)
            })
            .collect();
        self.users
            .iter()
            .map(|user| {
                self.sps
                    .iter()
                    .zip(&budgets)
                    .map(|(sp, &bw)| link_state(user, sp, noise, h, bw))
                    .collect()
            })
            .collect()
    }
}
