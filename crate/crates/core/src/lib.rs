//! Bayesian evidence aggregation over a matrix of capability categories
//! ("sorts") and milestone evidences.
//!
//! Each sort is an independent binary hypothesis. Starting from a prior of
//! 0.5, every evidence updates the sort's belief through Bayes' rule using a
//! likelihood pair chosen from a named support-level schedule. The aggregate
//! metric is the unweighted mean of the per-sort final posteriors.
//!
//! Modules:
//! - [`probability`]: single-step updating in probability and odds form.
//! - [`evidence`]: sorts, evidences, support levels and the canonical dataset.
//! - [`engine`]: trajectories, the posterior table and the aggregate metric.
//! - [`fit`]: likelihood-ratio recovery from a displayed posterior table.
//! - [`sensitivity`]: Monte Carlo and one-at-a-time (tornado) perturbation.
//! - [`io`]: dataset documents, displayed grids and report rendering.

pub mod engine;
pub mod error;
pub mod evidence;
pub mod fit;
pub mod io;
pub mod probability;
pub mod reference;
pub mod sensitivity;

pub use engine::{
    batch_posterior, run, singularity_metric, trajectory, PosteriorTable, Trajectory,
};
pub use error::{Error, Result};
pub use evidence::{
    canonical_dataset, level_pair, validate_matrix, AssessmentMatrix, CellValue, Evidence,
    EvidenceId, LevelSchedule, Sort, SortId, Violation,
};
pub use probability::{
    impact_factor, marginal, odds_of, posterior, prob_of, update_odds, LikelihoodPair, Odds,
    Probability,
};
