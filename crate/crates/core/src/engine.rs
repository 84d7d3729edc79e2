//! Sequential updating of every sort over the evidence list.
//!
//! Each sort starts from the universal prior 0.5 and folds Bayes' rule over
//! its cells in evidence order. The fold runs on odds; probabilities are
//! produced per step for the trajectory. The aggregate metric is the mean of
//! the per-sort final posteriors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{validate_matrix, AssessmentMatrix, EvidenceId, Sort, SortId};
use crate::probability::{odds_of, prob_of, update_odds, LikelihoodPair, Odds, Probability};

/// Belief every sort holds before any evidence.
pub const UNIVERSAL_PRIOR: Probability = Probability::HALF;

/// One sort's cumulative posteriors, element `k` being the belief after
/// evidences `1..=k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub sort: SortId,
    pub posteriors: Vec<Probability>,
}

impl Trajectory {
    pub fn last(&self) -> Option<Probability> {
        self.posteriors.last().copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorTable {
    pub evidences: Vec<EvidenceId>,
    pub trajectories: Vec<Trajectory>,
    pub finals: Vec<Probability>,
    pub metric: Probability,
}

impl PosteriorTable {
    pub fn sorts(&self) -> impl Iterator<Item = SortId> + '_ {
        self.trajectories.iter().map(|t| t.sort)
    }

    /// Posterior of `sort` after the evidence at row `row` (0-based).
    pub fn cell(&self, sort: usize, row: usize) -> Probability {
        self.trajectories[sort].posteriors[row]
    }
}

/// Fold Bayes' rule over `pairs`, starting at `prior`.
pub fn fold_posteriors(
    prior: Probability,
    pairs: impl IntoIterator<Item = LikelihoodPair>,
) -> Vec<Probability> {
    let mut odds = odds_of(prior);
    pairs
        .into_iter()
        .map(|pair| {
            odds = update_odds(odds, pair.ratio()).expect("likelihood ratios are positive");
            prob_of(odds)
        })
        .collect()
}

/// Last element of [`fold_posteriors`] without materializing the rest.
pub fn final_posterior(
    prior: Probability,
    pairs: impl IntoIterator<Item = LikelihoodPair>,
) -> Probability {
    let odds = pairs.into_iter().fold(odds_of(prior), |o, pair| {
        update_odds(o, pair.ratio()).expect("likelihood ratios are positive")
    });
    prob_of(odds)
}

pub(crate) fn ensure_valid(m: &AssessmentMatrix) -> Result<()> {
    let violations = validate_matrix(m);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidMatrix(violations))
    }
}

fn trajectory_unchecked(sort: SortId, m: &AssessmentMatrix) -> Result<Trajectory> {
    Ok(Trajectory {
        sort,
        posteriors: fold_posteriors(UNIVERSAL_PRIOR, m.sort_pairs(sort)?),
    })
}

/// Belief trajectory of one sort over the matrix's evidences.
pub fn trajectory(sort: &Sort, m: &AssessmentMatrix) -> Result<Trajectory> {
    ensure_valid(m)?;
    if m.sort(sort.id).is_none() {
        return Err(Error::UnknownSort(sort.id.to_string()));
    }
    trajectory_unchecked(sort.id, m)
}

/// Posterior computed in one step from the product of all of the sort's
/// likelihood ratios, accumulated in log space. Agrees with the last element
/// of [`trajectory`] when the evidences are conditionally independent.
pub fn batch_posterior(sort: &Sort, m: &AssessmentMatrix) -> Result<Probability> {
    ensure_valid(m)?;
    if m.sort(sort.id).is_none() {
        return Err(Error::UnknownSort(sort.id.to_string()));
    }
    let log_lr: f64 = m.sort_pairs(sort.id)?.iter().map(|p| p.ratio().ln()).sum();
    let prior_odds = odds_of(UNIVERSAL_PRIOR).value();
    Ok(prob_of(Odds::new(prior_odds * log_lr.exp())?))
}

/// Unweighted mean of the per-sort finals.
pub fn singularity_metric(t: &PosteriorTable) -> Probability {
    mean_of(&t.finals)
}

pub(crate) fn mean_of(finals: &[Probability]) -> Probability {
    let sum: f64 = finals.iter().map(|p| p.value()).sum();
    Probability::new(sum / finals.len() as f64).expect("mean of probabilities")
}

fn weighted_mean(finals: &[Probability], weights: &[f64]) -> Result<Probability> {
    let invalid = || Error::InvalidWeights {
        expected: finals.len(),
    };
    if weights.len() != finals.len() || weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(invalid());
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(invalid());
    }
    let acc: f64 = finals.iter().zip(weights).map(|(p, w)| p.value() * w).sum();
    Probability::new((acc / total).clamp(0.0, 1.0))
}

fn table(m: &AssessmentMatrix) -> Result<(Vec<Trajectory>, Vec<Probability>)> {
    ensure_valid(m)?;
    let trajectories = m
        .sorts
        .iter()
        .map(|s| trajectory_unchecked(s.id, m))
        .collect::<Result<Vec<_>>>()?;
    let finals = trajectories
        .iter()
        .map(|t| t.last().unwrap_or(UNIVERSAL_PRIOR))
        .collect();
    Ok((trajectories, finals))
}

/// All trajectories, the per-sort finals and the mean metric.
pub fn run(m: &AssessmentMatrix) -> Result<PosteriorTable> {
    let (trajectories, finals) = table(m)?;
    let metric = mean_of(&finals);
    Ok(PosteriorTable {
        evidences: m.evidences.iter().map(|e| e.id).collect(),
        trajectories,
        finals,
        metric,
    })
}

/// Like [`run`], with the metric weighted per sort.
pub fn run_weighted(m: &AssessmentMatrix, weights: &[f64]) -> Result<PosteriorTable> {
    let (trajectories, finals) = table(m)?;
    let metric = weighted_mean(&finals, weights)?;
    Ok(PosteriorTable {
        evidences: m.evidences.iter().map(|e| e.id).collect(),
        trajectories,
        finals,
        metric,
    })
}
