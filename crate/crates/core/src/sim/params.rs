//! Standalone parameter files for classifying one pair of offers.
//!
//! ```toml
//! model = "pt"
//! prelec_alpha = 0.7
//!
//! [user]
//! delta = 10.0
//! theta = 2.0
//! b_min = 1.0
//!
//! [cellular]
//! rate = 1.25
//! price = 0.5
//! bandwidth = 0.7
//! guarantee = 0.8
//! ```
//!
//! A missing `[cellular]` or `[wifi]` table means that provider made no offer.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::equilibrium::{classify, Classification};
use crate::error::{Error, Result};
use crate::model::{Bid, NoBidReason, Offer, UserProfile};
use crate::prospect::DecisionModel;
use crate::sim::config::{ModelKind, UserConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyParams {
    pub model: ModelKind,
    #[serde(default = "default_alpha")]
    pub prelec_alpha: f64,
    pub user: UserConfig,
    #[serde(default)]
    pub cellular: Option<Offer>,
    #[serde(default)]
    pub wifi: Option<Offer>,
}

fn default_alpha() -> f64 {
    0.7
}

fn to_bid(offer: Option<Offer>, name: &'static str) -> Result<Bid> {
    let Some(o) = offer else {
        return Ok(Bid::none(NoBidReason::NotCovered));
    };
    if !(o.rate > 0.0 && o.price >= 0.0 && o.bandwidth >= 0.0) {
        return Err(Error::invalid(name, "needs a positive rate and non-negative price and bandwidth"));
    }
    if !(0.0..=1.0).contains(&o.guarantee) {
        return Err(Error::ProbabilityOutOfRange(o.guarantee));
    }
    Ok(Bid::Offer(o))
}

impl ClassifyParams {
    pub fn from_toml_str(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e: toml::de::Error| e.message().trim().to_string())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|message| Error::Config {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn decision_model(&self) -> Result<DecisionModel> {
        match self.model {
            ModelKind::Eut => Ok(DecisionModel::Eut),
            ModelKind::Pt => DecisionModel::prospect(self.prelec_alpha),
        }
    }

    pub fn classify(&self) -> Result<Classification> {
        let user = UserProfile::new(self.user.delta, self.user.theta, self.user.b_min)?;
        let bid_c = to_bid(self.cellular, "cellular")?;
        let bid_w = to_bid(self.wifi, "wifi")?;
        Ok(classify(&bid_c, &bid_w, &user, self.decision_model()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NeClass;

    const BASE: &str = "[user]\ndelta = 10.0\ntheta = 2.0\nb_min = 1.0\n";

    fn offer_table(name: &str, rate: f64, price: f64, guarantee: f64) -> String {
        format!("[{name}]\nrate = {rate}\nprice = {price}\nbandwidth = 0.5\nguarantee = {guarantee}\n")
    }

    fn parse(head: &str, tables: &[String]) -> ClassifyParams {
        let text = format!("{head}\n{BASE}{}", tables.concat());
        ClassifyParams::from_toml_str(&text).unwrap()
    }

    #[test]
    fn symmetric_offers() {
        let both = [offer_table("cellular", 2.0, 1.0, 0.5), offer_table("wifi", 2.0, 1.0, 0.5)];
        assert_eq!(parse("model = \"eut\"", &both).classify().unwrap().class, NeClass::Both11);
        let dear = [offer_table("cellular", 2.0, 5.0, 0.5), offer_table("wifi", 2.0, 5.0, 0.5)];
        assert_eq!(parse("model = \"eut\"", &dear).classify().unwrap().class, NeClass::Mixed0110);
    }

    #[test]
    fn prospect_user_rejects_single_marginal_offers() {
        let tables = [offer_table("wifi", 1.25, 0.5, 0.8)];
        let params = parse("model = \"pt\"", &tables);
        assert_eq!(params.prelec_alpha, 0.7);
        assert_eq!(params.classify().unwrap().class, NeClass::Reject00);
        let eut = parse("model = \"eut\"", &tables);
        assert_eq!(eut.classify().unwrap().class, NeClass::WifiOnly01);
    }

    #[test]
    fn bad_files() {
        assert!(ClassifyParams::from_toml_str("model = \"pt\"").is_err());
        assert!(ClassifyParams::from_toml_str(&format!("model = \"x\"\n{BASE}")).is_err());
        let over = parse("model = \"eut\"", &[offer_table("wifi", 2.0, 1.0, 1.5)]);
        assert!(over.classify().is_err());
        let alpha = parse("model = \"pt\"\nprelec_alpha = 1.5", &[]);
        assert!(alpha.classify().is_err());
    }
}
