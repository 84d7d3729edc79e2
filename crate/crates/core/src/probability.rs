//! Single-step Bayesian updating.
//!
//! Beliefs are carried at the boundary as [`Probability`] values, but every
//! update is computed in odds form: the posterior odds are the prior odds
//! times the likelihood ratio `P(e|h) / P(e|~h)`. The endpoints 0 and 1 are
//! absorbing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A belief in the closed unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const HALF: Probability = Probability(0.5);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::ProbabilityOutOfRange(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// The complementary belief `1 - p`.
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Probability::new(v).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Odds `p / (1 - p)`; `+inf` stands for certainty.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Odds(f64);

impl Odds {
    pub fn new(value: f64) -> Result<Self> {
        if value >= 0.0 {
            Ok(Odds(value))
        } else {
            Err(Error::NegativeOdds(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

/// The pair `(P(e|h), P(e|~h))` describing how one evidence bears on one
/// hypothesis. Both components lie in `(0, 1]`, so the ratio is always
/// finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct LikelihoodPair {
    given_h: f64,
    given_not_h: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    given_h: f64,
    given_not_h: f64,
}

impl TryFrom<RawPair> for LikelihoodPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        LikelihoodPair::new(raw.given_h, raw.given_not_h)
    }
}

impl From<LikelihoodPair> for RawPair {
    fn from(p: LikelihoodPair) -> Self {
        RawPair {
            given_h: p.given_h,
            given_not_h: p.given_not_h,
        }
    }
}

impl LikelihoodPair {
    pub fn new(given_h: f64, given_not_h: f64) -> Result<Self> {
        let in_range = |x: f64| x > 0.0 && x <= 1.0;
        if in_range(given_h) && in_range(given_not_h) {
            Ok(LikelihoodPair {
                given_h,
                given_not_h,
            })
        } else {
            Err(Error::InvalidLikelihood {
                given_h,
                given_not_h,
            })
        }
    }

    /// A complementary pair `(a, 1 - a)`.
    pub fn complementary(given_h: f64) -> Result<Self> {
        LikelihoodPair::new(given_h, 1.0 - given_h)
    }

    /// `P(e|h)`.
    #[inline]
    pub fn given_h(self) -> f64 {
        self.given_h
    }

    /// `P(e|~h)`.
    #[inline]
    pub fn given_not_h(self) -> f64 {
        self.given_not_h
    }

    /// Likelihood ratio (Bayes factor) `P(e|h) / P(e|~h)`.
    #[inline]
    pub fn ratio(self) -> f64 {
        self.given_h / self.given_not_h
    }

    pub fn is_uninformative(self) -> bool {
        self.given_h == self.given_not_h
    }
}

/// Bayes' rule for a binary hypothesis:
/// `P(h|e) = P(e|h)P(h) / (P(e|h)P(h) + P(e|~h)(1 - P(h)))`.
pub fn posterior(prior: Probability, lik: LikelihoodPair) -> Probability {
    let p = prior.value();
    if p == 0.0 || p == 1.0 || lik.is_uninformative() {
        return prior;
    }
    let odds = p / (1.0 - p) * lik.ratio();
    Probability(odds / (1.0 + odds))
}

pub fn odds_of(p: Probability) -> Odds {
    let v = p.value();
    if v == 1.0 {
        Odds(f64::INFINITY)
    } else {
        Odds(v / (1.0 - v))
    }
}

pub fn prob_of(o: Odds) -> Probability {
    let v = o.value();
    if v.is_infinite() {
        Probability::ONE
    } else {
        Probability(v / (1.0 + v))
    }
}

/// Multiply odds by a likelihood ratio.
pub fn update_odds(o: Odds, lr: f64) -> Result<Odds> {
    if lr.is_nan() || lr <= 0.0 || !lr.is_finite() {
        return Err(Error::InvalidRatio(lr));
    }
    if lr == 1.0 {
        return Ok(o);
    }
    Ok(Odds(o.value() * lr))
}

/// `P(e) = P(e|h)P(h) + P(e|~h)P(~h)`.
pub fn marginal(prior: Probability, lik: LikelihoodPair) -> Probability {
    let p = prior.value();
    Probability(lik.given_h * p + lik.given_not_h * (1.0 - p))
}

/// Multiplicative effect of the evidence on the belief, `P(e|h) / P(e)`.
///
/// Always finite: both likelihood components are positive, so the marginal
/// is positive for every prior.
pub fn impact_factor(prior: Probability, lik: LikelihoodPair) -> f64 {
    if lik.is_uninformative() {
        return 1.0;
    }
    lik.given_h / marginal(prior, lik).value()
}
