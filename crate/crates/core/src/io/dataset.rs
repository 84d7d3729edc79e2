//! TOML dataset documents.
//!
//! ```toml
//! schema_version = "singularity-dataset/1"
//! notes = "free text"
//!
//! [[sorts]]
//! id = "S1"
//! name = "Holism"
//! description = "..."
//!
//! [[evidences]]
//! id = "Ev1"
//! name = "Deep Blue"
//! year = 1997            # optional
//! description = "..."
//!
//! [[levels]]             # ladder order, weakest first
//! name = "irrelevant"
//! given_h = 0.5
//! given_not_h = 0.5
//!
//! [aliases]              # optional
//! possibility = "irrelevant"
//!
//! [cells.S1]
//! Ev1 = "irrelevant"                                  # level name
//! Ev2 = { given_h = 0.7, given_not_h = 0.3 }          # raw pair override
//! ```
//!
//! Unknown keys are rejected everywhere. A schedule document has the same
//! `schema_version`, `levels` and `aliases` keys and nothing else.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{
    validate_matrix, AssessmentMatrix, CellValue, Evidence, EvidenceId, LevelSchedule, Sort,
    SortId, SupportLevel, Violation, ViolationKind,
};
use crate::probability::LikelihoodPair;

pub const SCHEMA_VERSION: &str = "singularity-dataset/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    pub sorts: Vec<SortDoc>,
    pub evidences: Vec<EvidenceDoc>,
    pub levels: Vec<LevelDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
    pub cells: BTreeMap<String, BTreeMap<String, CellDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDocument {
    pub schema_version: String,
    pub levels: Vec<LevelDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SortDoc {
    pub id: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceDoc {
    pub id: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
    #[serde(default)]
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub name: String,
    pub given_h: f64,
    pub given_not_h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellDoc {
    Level(String),
    Pair(LikelihoodPair),
}

fn syntax(text: &str, err: &toml::de::Error) -> Error {
    let (line, column) = err
        .span()
        .map(|s| super::line_col(text, s.start))
        .unwrap_or((1, 1));
    Error::Syntax {
        line,
        column,
        message: err.message().to_string(),
    }
}

/// Parse, then check the version before the strict structural pass so a
/// document from another schema reports the version, not a field error.
fn parse_versioned<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    if text.trim().is_empty() {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "empty document".to_string(),
        });
    }
    let table: toml::Table = toml::from_str(text).map_err(|e| syntax(text, &e))?;
    match table.get("schema_version").and_then(|v| v.as_str()) {
        Some(SCHEMA_VERSION) => {}
        other => {
            return Err(Error::SchemaVersion {
                found: other.unwrap_or("").to_string(),
                expected: SCHEMA_VERSION.to_string(),
            })
        }
    }
    toml::from_str(text).map_err(|e| syntax(text, &e))
}

fn schedule_from_docs(
    levels: &[LevelDoc],
    aliases: &BTreeMap<String, String>,
) -> std::result::Result<LevelSchedule, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut out = Vec::new();
    for l in levels {
        match LikelihoodPair::new(l.given_h, l.given_not_h) {
            Ok(pair) => out.push(SupportLevel::new(l.name.clone(), pair)),
            Err(e) => violations.push(Violation::global(ViolationKind::Schedule(format!(
                "level `{}`: {e}",
                l.name
            )))),
        }
    }
    if violations.is_empty() {
        Ok(LevelSchedule::new(out, aliases.clone()))
    } else {
        Err(violations)
    }
}

fn matrix_from_doc(doc: DatasetDocument) -> Result<AssessmentMatrix> {
    let mut violations = Vec::new();
    let mut bad_id =
        |raw: &str| violations.push(Violation::global(ViolationKind::BadId(raw.to_string())));

    let mut sorts = Vec::new();
    for s in doc.sorts {
        match s.id.parse::<SortId>() {
            Ok(id) => sorts.push(Sort {
                id,
                name: s.name,
                description: s.description,
            }),
            Err(_) => bad_id(&s.id),
        }
    }
    let mut evidences = Vec::new();
    for e in doc.evidences {
        match e.id.parse::<EvidenceId>() {
            Ok(id) => evidences.push(Evidence {
                id,
                name: e.name,
                year: e.year,
                description: e.description,
            }),
            Err(_) => bad_id(&e.id),
        }
    }
    let mut cells = BTreeMap::new();
    for (sort_key, row) in doc.cells {
        let Ok(sort) = sort_key.parse::<SortId>() else {
            bad_id(&sort_key);
            continue;
        };
        for (ev_key, cell) in row {
            let Ok(evidence) = ev_key.parse::<EvidenceId>() else {
                bad_id(&ev_key);
                continue;
            };
            let value = match cell {
                CellDoc::Level(name) => CellValue::Level(name),
                CellDoc::Pair(p) => CellValue::Pair(p),
            };
            cells.insert((sort, evidence), value);
        }
    }
    let schedule = match schedule_from_docs(&doc.levels, &doc.aliases) {
        Ok(s) => s,
        Err(v) => {
            violations.extend(v);
            LevelSchedule::new(vec![], doc.aliases.clone())
        }
    };
    if !violations.is_empty() {
        return Err(Error::InvalidMatrix(violations));
    }
    let m = AssessmentMatrix {
        sorts,
        evidences,
        cells,
        schedule,
        notes: doc.notes,
    };
    let violations = validate_matrix(&m);
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(Error::InvalidMatrix(violations))
    }
}

/// Parse and validate a dataset document. Never returns a partial matrix.
pub fn load_dataset(text: &str) -> Result<AssessmentMatrix> {
    matrix_from_doc(parse_versioned(text)?)
}

fn level_docs(schedule: &LevelSchedule) -> Vec<LevelDoc> {
    schedule
        .levels()
        .iter()
        .map(|l| LevelDoc {
            name: l.name.clone(),
            given_h: l.pair.given_h(),
            given_not_h: l.pair.given_not_h(),
        })
        .collect()
}

pub fn to_document(m: &AssessmentMatrix) -> DatasetDocument {
    let mut cells: BTreeMap<String, BTreeMap<String, CellDoc>> = BTreeMap::new();
    for ((s, e), v) in &m.cells {
        let doc = match v {
            CellValue::Level(n) => CellDoc::Level(n.clone()),
            CellValue::Pair(p) => CellDoc::Pair(*p),
        };
        cells
            .entry(s.to_string())
            .or_default()
            .insert(e.to_string(), doc);
    }
    DatasetDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        notes: m.notes.clone(),
        sorts: m
            .sorts
            .iter()
            .map(|s| SortDoc {
                id: s.id.to_string(),
                name: s.name.clone(),
                description: s.description.clone(),
            })
            .collect(),
        evidences: m
            .evidences
            .iter()
            .map(|e| EvidenceDoc {
                id: e.id.to_string(),
                name: e.name.clone(),
                year: e.year,
                description: e.description.clone(),
            })
            .collect(),
        levels: level_docs(&m.schedule),
        aliases: m.schedule.aliases().clone(),
        cells,
    }
}

pub fn serialize_dataset(m: &AssessmentMatrix) -> String {
    toml::to_string(&to_document(m)).expect("dataset documents always serialize")
}

/// Load a schedule from a schedule document or from a full dataset
/// document.
pub fn load_schedule(text: &str) -> Result<LevelSchedule> {
    let is_dataset = toml::from_str::<toml::Table>(text)
        .map(|t| t.contains_key("cells"))
        .unwrap_or(false);
    if is_dataset {
        return Ok(load_dataset(text)?.schedule);
    }
    let doc: ScheduleDocument = parse_versioned(text)?;
    let schedule = schedule_from_docs(&doc.levels, &doc.aliases).map_err(Error::InvalidMatrix)?;
    let problems: Vec<_> = schedule
        .problems()
        .into_iter()
        .map(|p| Violation::global(ViolationKind::Schedule(p)))
        .collect();
    if problems.is_empty() {
        Ok(schedule)
    } else {
        Err(Error::InvalidMatrix(problems))
    }
}

pub fn serialize_schedule(schedule: &LevelSchedule) -> String {
    let doc = ScheduleDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        levels: level_docs(schedule),
        aliases: schedule.aliases().clone(),
    };
    toml::to_string(&doc).expect("schedule documents always serialize")
}
