//! How much the aggregate metric depends on the subjective inputs.
//!
//! [`perturb_metric`] jitters every schedule level and reports the spread of
//! the metric over many samples. [`tornado`] moves one cell at a time one
//! rung up or down the ladder.
//!
//! Sample `i` draws from a ChaCha8 generator seeded with `seed` on stream
//! `i`, one uniform per ladder rung in ladder order. Samples run in
//! parallel, but the reduction walks them in index order, so reports are
//! bitwise reproducible and independent of the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{ensure_valid, final_posterior, mean_of, run, UNIVERSAL_PRIOR};
use crate::error::{Error, Result};
use crate::evidence::{AssessmentMatrix, CellValue, EvidenceId, LevelSchedule, SortId};
use crate::probability::{LikelihoodPair, Probability};

/// Probability levels reported in [`SensitivityReport::quantiles`].
pub const QUANTILE_LEVELS: [f64; 5] = [0.05, 0.25, 0.50, 0.75, 0.95];

/// Perturbed components stay this far inside (0, 1).
const EDGE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    /// Maximum absolute shift of each level's `P(e|h)`.
    pub delta: f64,
    pub samples: usize,
    pub seed: u64,
}

impl PerturbationSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(Error::InvalidPerturbation(format!(
                "delta must be a non-negative number, got {}",
                self.delta
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidPerturbation(
                "samples must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantile {
    pub level: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TornadoEntry {
    pub sort: SortId,
    pub evidence: EvidenceId,
    pub direction: Direction,
    pub from: String,
    pub to: String,
    /// Metric after the move minus the baseline metric.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport {
    pub metric_mean: f64,
    pub metric_sd: f64,
    pub quantiles: Vec<Quantile>,
    pub tornado: Vec<TornadoEntry>,
}

/// Where a cell's pair comes from during perturbation.
#[derive(Clone, Copy)]
enum Source {
    Rung(usize),
    Fixed(LikelihoodPair),
}

fn compile(m: &AssessmentMatrix) -> Vec<Vec<Source>> {
    m.sorts
        .iter()
        .map(|s| {
            m.evidences
                .iter()
                .map(|e| match m.cell(s.id, e.id).expect("validated") {
                    CellValue::Level(name) => {
                        Source::Rung(m.schedule.position(name).expect("validated"))
                    }
                    CellValue::Pair(p) => Source::Fixed(*p),
                })
                .collect()
        })
        .collect()
}

/// Shift `P(e|h)` up by `s` and `P(e|~h)` down by `s`, clamped so both stay
/// inside (0, 1) and the ratio stays >= 1.
fn shifted(pair: LikelihoodPair, s: f64) -> LikelihoodPair {
    if s == 0.0 {
        return pair;
    }
    let (h, nh) = (pair.given_h(), pair.given_not_h());
    let lo = ((nh - h) / 2.0).max(EDGE - h).max(nh - (1.0 - EDGE));
    let hi = (1.0 - EDGE - h).min(nh - EDGE);
    if lo > hi {
        return pair;
    }
    let s = s.clamp(lo, hi);
    match LikelihoodPair::new(h + s, nh - s) {
        Ok(p) if p.ratio() >= 1.0 => p,
        _ => {
            let mid = (h + nh) / 2.0;
            LikelihoodPair::new(mid, mid).unwrap_or(pair)
        }
    }
}

fn perturbed_schedule(
    schedule: &LevelSchedule,
    spec: &PerturbationSpec,
    sample: u64,
) -> Vec<LikelihoodPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(sample);
    schedule
        .levels()
        .iter()
        .map(|l| {
            let u: f64 = rng.random();
            shifted(l.pair, spec.delta * (2.0 * u - 1.0))
        })
        .collect()
}

fn metric_with(compiled: &[Vec<Source>], pairs: &[LikelihoodPair]) -> f64 {
    let finals: Vec<Probability> = compiled
        .iter()
        .map(|row| {
            final_posterior(
                UNIVERSAL_PRIOR,
                row.iter().map(|src| match *src {
                    Source::Rung(i) => pairs[i],
                    Source::Fixed(p) => p,
                }),
            )
        })
        .collect();
    mean_of(&finals).value()
}

/// Linear interpolation between order statistics of `sorted`.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Monte Carlo over schedule perturbations.
pub fn perturb_metric(m: &AssessmentMatrix, spec: &PerturbationSpec) -> Result<SensitivityReport> {
    spec.validate()?;
    ensure_valid(m)?;
    let compiled = compile(m);
    let metrics: Vec<f64> = (0..spec.samples as u64)
        .into_par_iter()
        .map(|i| metric_with(&compiled, &perturbed_schedule(&m.schedule, spec, i)))
        .collect();

    // Welford; a constant sample leaves the mean bit-exact and M2 at zero.
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for (k, &x) in metrics.iter().enumerate() {
        let d = x - mean;
        mean += d / (k + 1) as f64;
        m2 += d * (x - mean);
    }
    let sd = if metrics.len() > 1 {
        (m2 / (metrics.len() - 1) as f64).sqrt()
    } else {
        0.0
    };

    let mut sorted = metrics;
    sorted.sort_by(f64::total_cmp);
    let quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&level| Quantile {
            level,
            value: quantile(&sorted, level),
        })
        .collect();

    Ok(SensitivityReport {
        metric_mean: mean,
        metric_sd: sd,
        quantiles,
        tornado: vec![],
    })
}

/// One-at-a-time sensitivity: every cell moved one rung up and one rung
/// down. Cells already at an end of the ladder get a zero delta. Entries are
/// sorted by |delta|, largest first; ties keep matrix order.
pub fn tornado(m: &AssessmentMatrix) -> Result<SensitivityReport> {
    ensure_valid(m)?;
    let base = run(m)?;
    let schedule = &m.schedule;
    let mut entries = Vec::with_capacity(m.cells.len() * 2);

    for (si, s) in m.sorts.iter().enumerate() {
        let pairs = m.sort_pairs(s.id)?;
        for (ei, e) in m.evidences.iter().enumerate() {
            let cell = m.cell(s.id, e.id).expect("validated");
            let ratio = pairs[ei].ratio();
            let here = match cell {
                CellValue::Level(name) => schedule.position(name),
                CellValue::Pair(_) => None,
            };
            for direction in [Direction::Up, Direction::Down] {
                let target = match (direction, here) {
                    (Direction::Up, Some(i)) => (i + 1 < schedule.len()).then_some(i + 1),
                    (Direction::Down, Some(i)) => i.checked_sub(1),
                    (Direction::Up, None) => schedule.rung_above(ratio),
                    (Direction::Down, None) => schedule.rung_below(ratio),
                };
                let (to, delta) = match target {
                    None => (cell.to_string(), 0.0),
                    Some(t) => {
                        let rung = &schedule.levels()[t];
                        let mut moved = pairs.clone();
                        moved[ei] = rung.pair;
                        let mut finals = base.finals.clone();
                        finals[si] = final_posterior(UNIVERSAL_PRIOR, moved);
                        let delta = mean_of(&finals).value() - base.metric.value();
                        (rung.name.clone(), delta)
                    }
                };
                entries.push(TornadoEntry {
                    sort: s.id,
                    evidence: e.id,
                    direction,
                    from: cell.to_string(),
                    to,
                    delta,
                });
            }
        }
    }
    entries.sort_by(|a, b| b.delta.abs().total_cmp(&a.delta.abs()));

    Ok(SensitivityReport {
        metric_mean: 0.0,
        metric_sd: 0.0,
        quantiles: QUANTILE_LEVELS
            .iter()
            .map(|&level| Quantile { level, value: 0.0 })
            .collect(),
        tornado: entries,
    })
}
