//! Probability weighting: how a user perceives an advertised service guarantee.
//!
//! Under expected-utility theory the advertised probability is taken at face
//! value. Under prospect theory it passes through the one-parameter Prelec
//! function `w(p) = exp(−(−ln p)^α)`, which has a fixed point at `1/e`:
//! probabilities above it are underweighted, probabilities below it are
//! overweighted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The fixed point of every Prelec curve.
pub const PRELEC_FIXED_POINT: f64 = 1.0 / std::f64::consts::E;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DecisionModel {
    Eut,
    Pt { prelec_alpha: f64 },
}

impl DecisionModel {
    pub fn prospect(prelec_alpha: f64) -> Result<Self> {
        if !(prelec_alpha > 0.0 && prelec_alpha < 1.0) {
            return Err(Error::invalid(
                "prelec_alpha",
                format!("must lie in (0, 1), got {prelec_alpha}"),
            ));
        }
        Ok(DecisionModel::Pt { prelec_alpha })
    }

    pub fn is_prospect(&self) -> bool {
        matches!(self, DecisionModel::Pt { .. })
    }

    pub fn weight(&self, p: f64) -> Result<f64> {
        weight(p, *self)
    }

    pub fn weight_inverse(&self, q: f64) -> Result<f64> {
        weight_inverse(q, *self)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

fn prelec(p: f64, exponent: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else if p >= 1.0 {
        1.0
    } else {
        (-(-p.ln()).powf(exponent)).exp()
    }
}

/// Perceived probability of an advertised probability `p`.
///
/// The Prelec formula is undefined at 0 and 1; its continuous extension
/// (`w(0) = 0`, `w(1) = 1`) is used there.
pub fn weight(p: f64, model: DecisionModel) -> Result<f64> {
    check_probability(p)?;
    Ok(match model {
        DecisionModel::Eut => p,
        DecisionModel::Pt { prelec_alpha } => prelec(p, prelec_alpha),
    })
}

/// The advertised probability that is perceived as `q`:
/// `exp(−(−ln q)^(1/α))` under prospect theory, the identity otherwise.
pub fn weight_inverse(q: f64, model: DecisionModel) -> Result<f64> {
    check_probability(q)?;
    Ok(match model {
        DecisionModel::Eut => q,
        DecisionModel::Pt { prelec_alpha } => prelec(q, prelec_alpha.recip()),
    })
}
