//! Domain types of the association game and the closed-form payoff functions.
//!
//! A user's benefit from an aggregate expected rate `B` is `H(B) = δ·B^(1/θ)`;
//! providers price a rate `b` at `α·b^β` and pay `c_rate·b + c_bw·BW` to serve it.
//! Everything here is a pure function of its arguments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planar position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance_to(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Payoff and demand parameters of one end user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    /// Payoff coefficient δ.
    pub delta: f64,
    /// Concavity exponent θ (> 1).
    pub theta: f64,
    /// Minimum acceptable expected rate (Mbps).
    pub b_min: f64,
    pub position: Point,
    /// Activity flag; inactive users have no demand and are never covered.
    pub active: bool,
}

impl UserProfile {
    pub fn new(delta: f64, theta: f64, b_min: f64) -> Result<Self> {
        let user = UserProfile {
            delta,
            theta,
            b_min,
            position: Point::default(),
            active: true,
        };
        user.validate()?;
        Ok(user)
    }

    pub fn at(mut self, position: Point) -> Self {
        self.position = position;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::invalid("delta", format!("must be positive, got {}", self.delta)));
        }
        if !(self.theta > 1.0 && self.theta.is_finite()) {
            return Err(Error::invalid("theta", format!("must exceed 1, got {}", self.theta)));
        }
        if !(self.b_min > 0.0 && self.b_min.is_finite()) {
            return Err(Error::invalid("b_min", format!("must be positive, got {}", self.b_min)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpKind {
    #[serde(rename = "wifi")]
    WiFi,
    Cellular,
}

impl fmt::Display for SpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpKind::WiFi => f.write_str("wifi"),
            SpKind::Cellular => f.write_str("cellular"),
        }
    }
}

/// Pricing, cost and radio parameters of one service provider (one base station).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpProfile {
    pub kind: SpKind,
    /// Pricing coefficient α.
    pub alpha: f64,
    /// Pricing exponent β (> 1, convex pricing).
    pub beta: f64,
    /// Cost per unit of advertised rate.
    pub cost_rate: f64,
    /// Cost per unit of allocated bandwidth.
    pub cost_bw: f64,
    /// Total bandwidth (MHz).
    pub bw_total: f64,
    /// Transmit power (dBm).
    pub tx_power_dbm: f64,
    /// Bandwidth-allocation gain in (0, 1]; the rest is lost to guard bands.
    pub g_ba: f64,
    pub position: Point,
    /// Carrier frequency (MHz).
    pub frequency_mhz: f64,
    /// Base-station antenna height (m).
    pub antenna_height_m: f64,
    /// Minimum mean SNR (dB) for the user to count as covered.
    pub coverage_snr_threshold_db: f64,
    /// Optional hard coverage radius (m).
    pub coverage_radius_m: Option<f64>,
}

impl SpProfile {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("alpha", self.alpha),
            ("cost_rate", self.cost_rate),
            ("cost_bw", self.cost_bw),
            ("bw_total", self.bw_total),
            ("frequency_mhz", self.frequency_mhz),
            ("antenna_height_m", self.antenna_height_m),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive, got {value}")));
            }
        }
        if !(self.beta > 1.0 && self.beta.is_finite()) {
            return Err(Error::invalid("beta", format!("must exceed 1, got {}", self.beta)));
        }
        if !(self.g_ba > 0.0 && self.g_ba <= 1.0) {
            return Err(Error::invalid("g_ba", format!("must lie in (0, 1], got {}", self.g_ba)));
        }
        if let Some(r) = self.coverage_radius_m {
            if !(r > 0.0) {
                return Err(Error::invalid("coverage_radius_m", format!("must be positive, got {r}")));
            }
        }
        Ok(())
    }

    /// Bandwidth left after guard bands, `G_BA·BW`.
    pub fn usable_bandwidth(&self) -> f64 {
        self.g_ba * self.bw_total
    }
}

/// A concrete offer: advertised rate, its price, the bandwidth behind it and
/// the advertised probability that the realized rate reaches `rate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Offer {
    pub rate: f64,
    pub price: f64,
    pub bandwidth: f64,
    pub guarantee: f64,
}

impl Offer {
    /// Expected rate as seen through `perceived_guarantee`.
    pub fn perceived_rate(&self, perceived_guarantee: f64) -> f64 {
        self.rate * perceived_guarantee
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoBidReason {
    /// The user is outside the provider's coverage.
    NotCovered,
    /// No rate satisfies the bandwidth and rate caps.
    Infeasible,
    /// Every feasible bid loses money.
    Unprofitable,
    /// The target guarantee would need unbounded bandwidth.
    GuaranteeUnreachable,
    /// Not enough bandwidth left to fund the bid.
    BudgetExhausted,
    /// The provider plays its silent branch of a mixed equilibrium.
    StaySilent,
}

/// What a provider puts in front of the user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Bid {
    Offer(Offer),
    NoBid { reason: NoBidReason },
}

impl Bid {
    pub const fn none(reason: NoBidReason) -> Self {
        Bid::NoBid { reason }
    }

    pub fn offer(&self) -> Option<&Offer> {
        match self {
            Bid::Offer(o) => Some(o),
            Bid::NoBid { .. } => None,
        }
    }

    pub fn is_offer(&self) -> bool {
        matches!(self, Bid::Offer(_))
    }
}

impl From<Offer> for Bid {
    fn from(o: Offer) -> Self {
        Bid::Offer(o)
    }
}

/// The user's binary decision on the cellular and WiFi offers, `(p_c, p_w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strategy {
    #[serde(rename = "p_c")]
    pub cellular: bool,
    #[serde(rename = "p_w")]
    pub wifi: bool,
}

impl Strategy {
    pub const REJECT: Strategy = Strategy::new(false, false);
    pub const WIFI_ONLY: Strategy = Strategy::new(false, true);
    pub const CELL_ONLY: Strategy = Strategy::new(true, false);
    pub const BOTH: Strategy = Strategy::new(true, true);

    /// All four strategies, in tie-break preference order: fewer acceptances
    /// first, WiFi-only before cellular-only.
    pub const ALL: [Strategy; 4] = [
        Strategy::REJECT,
        Strategy::WIFI_ONLY,
        Strategy::CELL_ONLY,
        Strategy::BOTH,
    ];

    pub const fn new(cellular: bool, wifi: bool) -> Self {
        Strategy { cellular, wifi }
    }

    pub fn acceptances(&self) -> usize {
        usize::from(self.cellular) + usize::from(self.wifi)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", u8::from(self.cellular), u8::from(self.wifi))
    }
}

/// Equilibrium classes of the user's side of the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NeClass {
    Reject00,
    WifiOnly01,
    CellOnly10,
    Both11,
    /// Symmetric providers, user indifferent between the two single offers.
    Mixed0110,
    Infeasible,
}

impl NeClass {
    /// The pure strategy a class prescribes; `None` for the mixed class.
    pub fn pure_strategy(&self) -> Option<Strategy> {
        match self {
            NeClass::Reject00 | NeClass::Infeasible => Some(Strategy::REJECT),
            NeClass::WifiOnly01 => Some(Strategy::WIFI_ONLY),
            NeClass::CellOnly10 => Some(Strategy::CELL_ONLY),
            NeClass::Both11 => Some(Strategy::BOTH),
            NeClass::Mixed0110 => None,
        }
    }

    pub fn from_strategy(s: Strategy) -> Self {
        match (s.cellular, s.wifi) {
            (false, false) => NeClass::Reject00,
            (false, true) => NeClass::WifiOnly01,
            (true, false) => NeClass::CellOnly10,
            (true, true) => NeClass::Both11,
        }
    }
}

impl fmt::Display for NeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NeClass::Reject00 => "(0,0)",
            NeClass::WifiOnly01 => "(0,1)",
            NeClass::CellOnly10 => "(1,0)",
            NeClass::Both11 => "(1,1)",
            NeClass::Mixed0110 => "(0,1)/(1,0)",
            NeClass::Infeasible => "infeasible",
        };
        f.write_str(s)
    }
}

/// Result of one user's game: the class, what the user actually did, and the
/// realized utilities of all three players.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameOutcome {
    pub ne_class: NeClass,
    /// Realized strategy; for the mixed class, the sampled branch.
    pub strategy_draw: Strategy,
    pub u_user: f64,
    pub u_sp_w: f64,
    pub u_sp_c: f64,
    pub bid_w: Bid,
    pub bid_c: Bid,
    /// Index of the WiFi provider the user pre-selected, if any offered.
    pub wifi_sp: Option<usize>,
}

impl GameOutcome {
    pub fn associated(&self) -> bool {
        self.strategy_draw != Strategy::REJECT
    }

    /// Bandwidth consumed by the accepted offers.
    pub fn consumed_bandwidth(&self) -> f64 {
        let take = |accepted: bool, bid: &Bid| match (accepted, bid) {
            (true, Bid::Offer(o)) => o.bandwidth,
            _ => 0.0,
        };
        take(self.strategy_draw.cellular, &self.bid_c) + take(self.strategy_draw.wifi, &self.bid_w)
    }
}

/// `H(B) = δ·B^(1/θ)`.
pub fn user_benefit(b_joint: f64, user: &UserProfile) -> f64 {
    if b_joint <= 0.0 {
        return 0.0;
    }
    user.delta * b_joint.powf(user.theta.recip())
}

/// Aggregate rate `b_c·g_c·p_c + b_w·g_w·p_w` under the given perceived
/// guarantees. Accepting a missing offer contributes nothing.
pub fn joint_rate(s: Strategy, bid_c: &Bid, bid_w: &Bid, perceived_gc: f64, perceived_gw: f64) -> f64 {
    let part = |accepted: bool, bid: &Bid, g: f64| match (accepted, bid) {
        (true, Bid::Offer(o)) => o.perceived_rate(g),
        _ => 0.0,
    };
    part(s.cellular, bid_c, perceived_gc) + part(s.wifi, bid_w, perceived_gw)
}

/// Total price the user pays under strategy `s`.
pub fn total_price(s: Strategy, bid_c: &Bid, bid_w: &Bid) -> f64 {
    let part = |accepted: bool, bid: &Bid| match (accepted, bid) {
        (true, Bid::Offer(o)) => o.price,
        _ => 0.0,
    };
    part(s.cellular, bid_c) + part(s.wifi, bid_w)
}

/// `H(B_joint) − p_w·r_w − p_c·r_c`, with `B_joint` built from the perceived
/// guarantees (already passed through the decision model).
pub fn user_utility(
    s: Strategy,
    bid_c: &Bid,
    bid_w: &Bid,
    user: &UserProfile,
    perceived_gc: f64,
    perceived_gw: f64,
) -> f64 {
    let rate = joint_rate(s, bid_c, bid_w, perceived_gc, perceived_gw);
    user_benefit(rate, user) - total_price(s, bid_c, bid_w)
}

/// `α·b^β`.
pub fn sp_price(b: f64, sp: &SpProfile) -> f64 {
    if b <= 0.0 {
        return 0.0;
    }
    sp.alpha * b.powf(sp.beta)
}

/// `c_rate·b + c_bw·bw`.
pub fn sp_cost(b: f64, bw: f64, sp: &SpProfile) -> f64 {
    sp.cost_rate * b + sp.cost_bw * bw
}

/// Realized provider utility: the price if accepted, minus the cost of the
/// bid either way. A provider that stays silent earns exactly zero.
pub fn sp_utility(accepted: bool, bid: &Bid, sp: &SpProfile) -> f64 {
    match bid {
        Bid::Offer(o) => {
            let revenue = if accepted { o.price } else { 0.0 };
            revenue - sp_cost(o.rate, o.bandwidth, sp)
        }
        Bid::NoBid { .. } => 0.0,
    }
}
