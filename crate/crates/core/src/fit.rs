//! Recovering likelihood ratios from a displayed posterior table.
//!
//! Consecutive posteriors of one sort determine the likelihood ratio of the
//! step between them: `lr_k = odds(p_k) / odds(p_{k-1})`. Snapping each
//! recovered ratio to the nearest schedule rung (in log space) reconstructs
//! the level assignments behind a table. The audit flags cells that cannot
//! come out of a ratio >= 1 chain, plus formatting irregularities.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evidence::{EvidenceId, LevelSchedule, SortId};
use crate::probability::{odds_of, Probability};

/// Residual above which a recovered ratio is left unsnapped.
pub const DEFAULT_MAX_RESIDUAL: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveredStep {
    pub evidence: EvidenceId,
    pub lr: f64,
    pub snapped_level: Option<String>,
    /// `|lr - rung| / rung` against the nearest rung; set by [`snap_levels`].
    pub relative_residual: Option<f64>,
}

/// Likelihood ratio of every step of `traj`. Step `k` (1-based) is labelled
/// `Ev{k}`, so prepending the prior to a displayed column labels steps with
/// the column's evidence ids.
pub fn recover_ratios(traj: &[Probability]) -> Result<Vec<RecoveredStep>> {
    if traj.len() < 2 {
        return Err(Error::TrajectoryTooShort(traj.len()));
    }
    if let Some((index, p)) = traj
        .iter()
        .enumerate()
        .find(|(_, p)| p.value() == 0.0 || p.value() == 1.0)
    {
        return Err(Error::EndpointProbability {
            index,
            value: p.value(),
        });
    }
    Ok(traj
        .windows(2)
        .enumerate()
        .map(|(k, w)| RecoveredStep {
            evidence: EvidenceId(k as u16 + 1),
            lr: odds_of(w[1]).value() / odds_of(w[0]).value(),
            snapped_level: None,
            relative_residual: None,
        })
        .collect())
}

pub fn snap_levels(steps: &[RecoveredStep], schedule: &LevelSchedule) -> Vec<RecoveredStep> {
    snap_levels_with(steps, schedule, DEFAULT_MAX_RESIDUAL)
}

/// Snap each step to the log-nearest rung; steps further than
/// `max_residual` (relative) from it stay unsnapped.
pub fn snap_levels_with(
    steps: &[RecoveredStep],
    schedule: &LevelSchedule,
    max_residual: f64,
) -> Vec<RecoveredStep> {
    steps
        .iter()
        .map(|s| {
            let mut out = s.clone();
            match schedule.nearest(s.lr) {
                Some(i) => {
                    let rung = &schedule.levels()[i];
                    let residual = (s.lr - rung.ratio()).abs() / rung.ratio();
                    out.relative_residual = Some(residual);
                    out.snapped_level = (residual <= max_residual).then(|| rung.name.clone());
                }
                None => {
                    out.relative_residual = None;
                    out.snapped_level = None;
                }
            }
            out
        })
        .collect()
}

/// A posterior table as displayed: decimal strings, evidences as rows and
/// sorts as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplayedGrid {
    pub sorts: Vec<SortId>,
    pub evidences: Vec<EvidenceId>,
    /// `rows[evidence][sort]`.
    pub rows: Vec<Vec<String>>,
}

impl DisplayedGrid {
    pub fn new(
        sorts: Vec<SortId>,
        evidences: Vec<EvidenceId>,
        rows: Vec<Vec<String>>,
    ) -> Result<Self> {
        if rows.len() != evidences.len() {
            return Err(Error::GridShape(format!(
                "{} rows for {} evidences",
                rows.len(),
                evidences.len()
            )));
        }
        if let Some((i, r)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != sorts.len())
        {
            return Err(Error::GridShape(format!(
                "row {} has {} cells, expected {}",
                evidences[i],
                r.len(),
                sorts.len()
            )));
        }
        Ok(DisplayedGrid {
            sorts,
            evidences,
            rows,
        })
    }

    fn position(&self, sort: SortId, evidence: EvidenceId) -> Option<(usize, usize)> {
        let c = self.sorts.iter().position(|&s| s == sort)?;
        let r = self.evidences.iter().position(|&e| e == evidence)?;
        Some((r, c))
    }

    pub fn cell(&self, sort: SortId, evidence: EvidenceId) -> Option<&str> {
        self.position(sort, evidence)
            .map(|(r, c)| self.rows[r][c].as_str())
    }

    pub fn cell_mut(&mut self, sort: SortId, evidence: EvidenceId) -> Option<&mut String> {
        self.position(sort, evidence)
            .map(|(r, c)| &mut self.rows[r][c])
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = &str> + '_ {
        self.rows.iter().map(move |r| r[col].as_str())
    }
}

/// One displayed cell after normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplayedValue {
    pub value: f64,
    pub decimals: usize,
    pub decimal_comma: bool,
}

impl DisplayedValue {
    /// Half-width of the interval the displayed value was rounded from.
    pub fn half_step(&self) -> f64 {
        0.5 * 10f64.powi(-(self.decimals as i32))
    }
}

/// Parses a displayed decimal such as `0.95775` or `0,95775`.
pub fn parse_displayed(raw: &str) -> std::result::Result<DisplayedValue, String> {
    let s = raw.trim();
    let commas = s.matches(',').count();
    let dots = s.matches('.').count();
    if commas + dots > 1 {
        return Err(format!("`{s}` has more than one decimal separator"));
    }
    let normalized = s.replace(',', ".");
    let (int, frac) = normalized.split_once('.').unwrap_or((&normalized, ""));
    let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || !digits(int) || !digits(frac) || (commas + dots == 1 && frac.is_empty()) {
        return Err(format!("`{s}` is not a decimal number"));
    }
    let value: f64 = normalized
        .parse()
        .map_err(|_| format!("`{s}` is not a decimal number"))?;
    if !(0.0..=1.0).contains(&value) {
        return Err(format!("`{s}` is outside [0, 1]"));
    }
    Ok(DisplayedValue {
        value,
        decimals: frac.len(),
        decimal_comma: commas == 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnomalyKind {
    MonotonicityViolation,
    DecimalComma,
    PrecisionMismatch,
    Malformed,
}

impl fmt::Display for AnomalyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnomalyKind::MonotonicityViolation => "monotonicity-violation",
            AnomalyKind::DecimalComma => "decimal-comma",
            AnomalyKind::PrecisionMismatch => "precision-mismatch",
            AnomalyKind::Malformed => "malformed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableAnomaly {
    pub sort: SortId,
    pub evidence: EvidenceId,
    pub kind: AnomalyKind,
    pub detail: String,
}

/// Normalized cells, `values[evidence][sort]`; malformed cells are `Err`.
pub fn normalize_grid(
    grid: &DisplayedGrid,
) -> Vec<Vec<std::result::Result<DisplayedValue, String>>> {
    grid.rows
        .iter()
        .map(|r| r.iter().map(|c| parse_displayed(c)).collect())
        .collect()
}

/// Flags decimal commas, decreasing steps and off-format precision. Never
/// fails; malformed cells are reported as anomalies.
pub fn audit_table(grid: &DisplayedGrid) -> Vec<TableAnomaly> {
    let values = normalize_grid(grid);
    let mut out = Vec::new();
    for (c, &sort) in grid.sorts.iter().enumerate() {
        let column: Vec<_> = values.iter().map(|r| &r[c]).collect();

        let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
        for v in column.iter().filter_map(|v| v.as_ref().ok()) {
            *freq.entry(v.decimals).or_default() += 1;
        }
        // Most frequent decimal count; ties go to the shorter format.
        let dominant = freq
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&d, _)| d);

        let mut prev: Option<(EvidenceId, &DisplayedValue)> = None;
        for (r, cell) in column.iter().enumerate() {
            let evidence = grid.evidences[r];
            let raw = grid.rows[r][c].as_str();
            let anomaly = |kind, detail| TableAnomaly {
                sort,
                evidence,
                kind,
                detail,
            };
            match cell {
                Err(msg) => out.push(anomaly(AnomalyKind::Malformed, msg.clone())),
                Ok(v) => {
                    if v.decimal_comma {
                        out.push(anomaly(
                            AnomalyKind::DecimalComma,
                            format!("`{raw}` read as {}", v.value),
                        ));
                    }
                    if let Some(d) = dominant {
                        if v.decimals != d {
                            out.push(anomaly(
                                AnomalyKind::PrecisionMismatch,
                                format!("`{raw}` has {} decimals, column uses {d}", v.decimals),
                            ));
                        }
                    }
                    if let Some((pe, pv)) = prev {
                        if v.value < pv.value {
                            out.push(TableAnomaly {
                                sort,
                                evidence: pe,
                                kind: AnomalyKind::MonotonicityViolation,
                                detail: format!(
                                    "{pe}->{evidence}: {} then {} (a ratio >= 1 chain cannot decrease)",
                                    pv.value, v.value
                                ),
                            });
                        }
                    }
                    prev = Some((evidence, v));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.sort, a.evidence, a.kind).cmp(&(b.sort, b.evidence, b.kind)));
    out
}

/// Recovered and snapped steps for one displayed column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitColumn {
    pub sort: SortId,
    pub steps: Vec<RecoveredStep>,
    /// Why the column could not be recovered, if it could not.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub columns: Vec<FitColumn>,
    pub anomalies: Vec<TableAnomaly>,
}

/// Recover, snap and audit a displayed grid. Each column is read with
/// `prior` prepended, so step `k` is the update made by evidence `k`.
pub fn fit_grid(
    grid: &DisplayedGrid,
    schedule: &LevelSchedule,
    prior: Probability,
    max_residual: f64,
) -> FitReport {
    let values = normalize_grid(grid);
    let columns = grid
        .sorts
        .iter()
        .enumerate()
        .map(|(c, &sort)| {
            let mut traj = vec![prior];
            for (r, row) in values.iter().enumerate() {
                match &row[c] {
                    Ok(v) => traj.push(Probability::new(v.value).expect("parsed within [0,1]")),
                    Err(msg) => {
                        return FitColumn {
                            sort,
                            steps: vec![],
                            error: Some(format!("{}: {msg}", grid.evidences[r])),
                        }
                    }
                }
            }
            match recover_ratios(&traj) {
                Ok(steps) => {
                    let mut steps = snap_levels_with(&steps, schedule, max_residual);
                    for (s, &e) in steps.iter_mut().zip(&grid.evidences) {
                        s.evidence = e;
                    }
                    FitColumn {
                        sort,
                        steps,
                        error: None,
                    }
                }
                Err(e) => FitColumn {
                    sort,
                    steps: vec![],
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    FitReport {
        columns,
        anomalies: audit_table(grid),
    }
}

/// Range of likelihood ratios compatible with a step between two displayed
/// values, given that each was rounded to its displayed precision. `prev`
/// of `None` stands for an exact prior.
pub fn ratio_interval(prev: Option<(f64, f64)>, next: (f64, f64)) -> (f64, f64) {
    let odds = |p: f64| p / (1.0 - p);
    let clamp = |p: f64| p.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
    let (pv, ph) = prev.unwrap_or((0.5, 0.0));
    let (nv, nh) = next;
    let lo = odds(clamp(nv - nh)) / odds(clamp(pv + ph));
    let hi = odds(clamp(nv + nh)) / odds(clamp(pv - ph));
    (lo, hi)
}
