//! Report rendering.
//!
//! Posterior grids put evidences in rows and sorts in columns. Cells are
//! rounded half-to-even to 5 decimals and the metric to 9; the values
//! underneath stay unrounded, and the JSON report carries them in full.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{PosteriorTable, Trajectory};
use crate::error::{Error, Result};
use crate::evidence::{EvidenceId, SortId};
use crate::fit::{FitReport, TableAnomaly};
use crate::probability::Probability;
use crate::sensitivity::SensitivityReport;

pub const CELL_DECIMALS: usize = 5;
pub const METRIC_DECIMALS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Md,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" => Ok(ReportFormat::Md),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Fixed-point rendering, rounding the exact binary value half-to-even.
pub fn fixed(x: f64, decimals: usize) -> String {
    // std formatting works from the exact decimal expansion of `x` and breaks
    // exact ties to even.
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub sorts: Vec<String>,
    pub evidences: Vec<String>,
    /// `posteriors[evidence][sort]`, unrounded.
    pub posteriors: Vec<Vec<f64>>,
    /// Same grid, display-rounded.
    pub display: Vec<Vec<String>>,
    pub finals: Vec<f64>,
    pub metric: f64,
    pub metric_display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anomalies: Option<Vec<TableAnomaly>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityReport>,
}

/// The numeric part of a JSON report; display strings and optional blocks
/// are ignored when reading.
#[derive(Deserialize)]
struct ReportInput {
    sorts: Vec<String>,
    evidences: Vec<String>,
    posteriors: Vec<Vec<f64>>,
    finals: Vec<f64>,
    metric: f64,
}

fn rows(t: &PosteriorTable) -> Vec<Vec<f64>> {
    (0..t.evidences.len())
        .map(|r| {
            t.trajectories
                .iter()
                .map(|tr| tr.posteriors[r].value())
                .collect()
        })
        .collect()
}

pub fn to_document(t: &PosteriorTable) -> ReportDocument {
    let posteriors = rows(t);
    ReportDocument {
        sorts: t.sorts().map(|s| s.to_string()).collect(),
        evidences: t.evidences.iter().map(|e| e.to_string()).collect(),
        display: posteriors
            .iter()
            .map(|r| r.iter().map(|&v| fixed(v, CELL_DECIMALS)).collect())
            .collect(),
        posteriors,
        finals: t.finals.iter().map(|p| p.value()).collect(),
        metric: t.metric.value(),
        metric_display: fixed(t.metric.value(), METRIC_DECIMALS),
        anomalies: None,
        sensitivity: None,
    }
}

pub fn emit_report(t: &PosteriorTable, format: ReportFormat) -> String {
    let doc = to_document(t);
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "Evidences,{}", doc.sorts.join(","));
            for (e, row) in doc.evidences.iter().zip(&doc.display) {
                let _ = writeln!(s, "{e},{}", row.join(","));
            }
            s
        }
        ReportFormat::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "| Evidences | {} |", doc.sorts.join(" | "));
            let _ = writeln!(s, "|---|{}", "---:|".repeat(doc.sorts.len()));
            for (e, row) in doc.evidences.iter().zip(&doc.display) {
                let _ = writeln!(s, "| {e} | {} |", row.join(" | "));
            }
            let finals: Vec<String> = doc
                .finals
                .iter()
                .map(|&v| fixed(v, CELL_DECIMALS))
                .collect();
            let _ = writeln!(s, "| Final | {} |", finals.join(" | "));
            let _ = writeln!(s);
            let _ = writeln!(s, "Mean probability over sorts: {}", doc.metric_display);
            s
        }
    }
}

/// Rebuild a [`PosteriorTable`] from a JSON report.
pub fn parse_json_report(text: &str) -> Result<PosteriorTable> {
    let doc: ReportInput =
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))?;
    let bad = |m: &str| Error::MalformedReport(m.to_string());
    let sorts = doc
        .sorts
        .iter()
        .map(|s| s.parse::<SortId>())
        .collect::<Result<Vec<_>>>()?;
    let evidences = doc
        .evidences
        .iter()
        .map(|e| e.parse::<EvidenceId>())
        .collect::<Result<Vec<_>>>()?;
    if doc.posteriors.len() != evidences.len()
        || doc.posteriors.iter().any(|r| r.len() != sorts.len())
        || doc.finals.len() != sorts.len()
    {
        return Err(bad("grid dimensions disagree with sort and evidence lists"));
    }
    let trajectories = sorts
        .iter()
        .enumerate()
        .map(|(c, &sort)| {
            Ok(Trajectory {
                sort,
                posteriors: doc
                    .posteriors
                    .iter()
                    .map(|r| Probability::new(r[c]))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PosteriorTable {
        evidences,
        trajectories,
        finals: doc
            .finals
            .iter()
            .map(|&v| Probability::new(v))
            .collect::<Result<_>>()?,
        metric: Probability::new(doc.metric)?,
    })
}

pub fn render_fit(report: &FitReport, format: ReportFormat) -> String {
    if format == ReportFormat::Json {
        let mut s = serde_json::to_string_pretty(report).expect("fit report serializes");
        s.push('\n');
        return s;
    }
    let csv = format == ReportFormat::Csv;
    let mut s = String::new();
    if csv {
        let _ = writeln!(s, "sort,evidence,lr,level,relative_residual");
    } else {
        let _ = writeln!(s, "| Sort | Evidence | LR | Level | Residual |");
        let _ = writeln!(s, "|---|---|---:|---|---:|");
    }
    for col in &report.columns {
        if let Some(err) = &col.error {
            if csv {
                let _ = writeln!(s, "{},,,,", col.sort);
            } else {
                let _ = writeln!(s, "| {} | - | - | unrecoverable: {err} | - |", col.sort);
            }
            continue;
        }
        for step in &col.steps {
            let level = step.snapped_level.as_deref().unwrap_or("-");
            let residual = step
                .relative_residual
                .map_or("-".to_string(), |r| format!("{r:.4}"));
            if csv {
                let _ = writeln!(
                    s,
                    "{},{},{:.6},{level},{residual}",
                    col.sort, step.evidence, step.lr
                );
            } else {
                let _ = writeln!(
                    s,
                    "| {} | {} | {:.6} | {level} | {residual} |",
                    col.sort, step.evidence, step.lr
                );
            }
        }
    }
    if !csv {
        let _ = writeln!(s);
        if report.anomalies.is_empty() {
            let _ = writeln!(s, "No anomalies.");
        } else {
            let _ = writeln!(s, "Anomalies:");
            for a in &report.anomalies {
                let _ = writeln!(s, "- ({}, {}) {}: {}", a.sort, a.evidence, a.kind, a.detail);
            }
        }
    }
    s
}

pub fn render_sensitivity(report: &SensitivityReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(report).expect("sensitivity report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = String::new();
            if report.tornado.is_empty() {
                let _ = writeln!(s, "statistic,value");
                let _ = writeln!(s, "mean,{:?}", report.metric_mean);
                let _ = writeln!(s, "sd,{:?}", report.metric_sd);
                for q in &report.quantiles {
                    let _ = writeln!(s, "q{:02},{:?}", (q.level * 100.0).round(), q.value);
                }
            } else {
                let _ = writeln!(s, "sort,evidence,direction,from,to,delta");
                for t in &report.tornado {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{:?}",
                        t.sort,
                        t.evidence,
                        direction(t),
                        t.from,
                        t.to,
                        t.delta
                    );
                }
            }
            s
        }
        ReportFormat::Md => {
            let mut s = String::new();
            if report.tornado.is_empty() {
                let _ = writeln!(s, "| Statistic | Value |");
                let _ = writeln!(s, "|---|---:|");
                let _ = writeln!(
                    s,
                    "| mean | {} |",
                    fixed(report.metric_mean, METRIC_DECIMALS)
                );
                let _ = writeln!(s, "| sd | {} |", fixed(report.metric_sd, METRIC_DECIMALS));
                for q in &report.quantiles {
                    let _ = writeln!(
                        s,
                        "| q{:02} | {} |",
                        (q.level * 100.0).round(),
                        fixed(q.value, METRIC_DECIMALS)
                    );
                }
            } else {
                let _ = writeln!(s, "| Sort | Evidence | Move | From | To | Metric delta |");
                let _ = writeln!(s, "|---|---|---|---|---|---:|");
                for t in &report.tornado {
                    let _ = writeln!(
                        s,
                        "| {} | {} | {} | {} | {} | {:+.9} |",
                        t.sort,
                        t.evidence,
                        direction(t),
                        t.from,
                        t.to,
                        t.delta
                    );
                }
            }
            s
        }
    }
}

fn direction(t: &crate::sensitivity::TornadoEntry) -> &'static str {
    match t.direction {
        crate::sensitivity::Direction::Up => "up",
        crate::sensitivity::Direction::Down => "down",
    }
}
