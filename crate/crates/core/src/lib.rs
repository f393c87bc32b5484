//! User association in a two-tier WiFi/cellular network, played as a
//! Stackelberg game: providers bid a rate, a price and the bandwidth behind
//! it, and each user accepts any subset of the offers in hand.
//!
//! Users may weigh the advertised service guarantee at face value (expected
//! utility) or through a Prelec weighting function (prospect theory). The
//! crate covers the single game (bids, best responses, equilibrium labels,
//! bandwidth expansion) and a seeded load-sweep harness.
//!
//! ```
//! use hetnet::{channel::LinkState, leader::optimize_bid, model::*};
//!
//! let sp = SpProfile {
//!     kind: SpKind::WiFi,
//!     alpha: 1.0,
//!     beta: 1.2,
//!     cost_rate: 0.1,
//!     cost_bw: 0.5,
//!     bw_total: 40.0,
//!     tx_power_dbm: 23.0,
//!     g_ba: 0.9,
//!     position: Point::new(0.0, 0.0),
//!     frequency_mhz: 2400.0,
//!     antenna_height_m: 6.0,
//!     coverage_snr_threshold_db: 0.0,
//!     coverage_radius_m: None,
//! };
//! let link = LinkState::from_snr(10.0, 5.0);
//! let bid = optimize_bid(&sp, &link, 1.0);
//! let offer = bid.offer().unwrap();
//! assert!((offer.rate * offer.guarantee - 1.0).abs() < 1e-9);
//! ```

pub mod channel;
pub mod equilibrium;
pub mod error;
pub mod follower;
pub mod leader;
pub mod model;
pub mod prospect;
pub mod sim;

pub use error::{Error, Result};
pub use model::{Bid, GameOutcome, NeClass, NoBidReason, Offer, SpKind, SpProfile, Strategy, UserProfile};
pub use prospect::DecisionModel;
