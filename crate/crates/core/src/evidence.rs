//! Sorts, evidences, support levels and the assessment matrix.
//!
//! An [`AssessmentMatrix`] assigns one cell to every (sort, evidence) pair.
//! A cell names a support level from the matrix's [`LevelSchedule`], or
//! carries a raw likelihood pair as an override. The schedule is an ordered
//! ladder of levels with strictly increasing likelihood ratios, plus aliases
//! that resolve to ladder rungs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::probability::LikelihoodPair;

/// Canonical level names.
pub mod level {
    pub const IRRELEVANT: &str = "irrelevant";
    pub const WEAK: &str = "weak";
    pub const POSSIBILITY: &str = "possibility";
    pub const FEASIBILITY: &str = "feasibility";
    pub const STRONG: &str = "strong";
    pub const DESIRABILITY: &str = "desirability";
    pub const VERY_STRONG: &str = "very-strong";
    pub const DECISIVE: &str = "decisive";
    pub const NEAR_CERTAIN: &str = "near-certain";
}

macro_rules! ordinal_id {
    ($name:ident, $prefix:literal) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u16);

        impl $name {
            pub const PREFIX: &'static str = $prefix;

            pub fn index(self) -> usize {
                self.0 as usize - 1
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", $prefix, self.0)
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                s.strip_prefix($prefix)
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<u16>().ok())
                    .filter(|&n| n >= 1)
                    .map($name)
                    .ok_or_else(|| Error::InvalidId(s.to_string()))
            }
        }

        impl serde::Serialize for $name {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(
                d: D,
            ) -> std::result::Result<Self, D::Error> {
                let raw = String::deserialize(d)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

ordinal_id!(SortId, "S");
ordinal_id!(EvidenceId, "Ev");

/// A capability category; each sort is an independent binary hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct Sort {
    pub id: SortId,
    pub name: String,
    pub description: String,
}

/// A milestone applied as one Bayesian update to every sort. The order of
/// evidences in a matrix is the update order.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub id: EvidenceId,
    pub name: String,
    pub year: Option<i32>,
    pub description: String,
}

/// A named subjective strength grade.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportLevel {
    pub name: String,
    pub pair: LikelihoodPair,
}

impl SupportLevel {
    pub fn new(name: impl Into<String>, pair: LikelihoodPair) -> Self {
        SupportLevel {
            name: name.into(),
            pair,
        }
    }

    pub fn ratio(&self) -> f64 {
        self.pair.ratio()
    }
}

/// Ordered ladder of support levels, weakest first, plus aliases.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSchedule {
    levels: Vec<SupportLevel>,
    aliases: BTreeMap<String, String>,
}

impl LevelSchedule {
    /// Builds a schedule without checking it; see [`LevelSchedule::problems`].
    pub fn new(levels: Vec<SupportLevel>, aliases: BTreeMap<String, String>) -> Self {
        LevelSchedule { levels, aliases }
    }

    /// The calibration recovered from the published posterior table. Every
    /// pair is complementary; the ratios are 1, 1.5, 3, 4, 17/3, 9, 19, 49.
    pub fn canonical() -> Self {
        let rung = |name: &str, given_h: f64, given_not_h: f64| {
            SupportLevel::new(
                name,
                LikelihoodPair::new(given_h, given_not_h).expect("valid pair"),
            )
        };
        let levels = vec![
            rung(level::IRRELEVANT, 0.5, 0.5),
            rung(level::WEAK, 0.6, 0.4),
            rung(level::FEASIBILITY, 0.75, 0.25),
            rung(level::STRONG, 0.8, 0.2),
            rung(level::DESIRABILITY, 0.85, 0.15),
            rung(level::VERY_STRONG, 0.9, 0.1),
            rung(level::DECISIVE, 0.95, 0.05),
            rung(level::NEAR_CERTAIN, 0.98, 0.02),
        ];
        let aliases = [(
            level::POSSIBILITY.to_string(),
            level::IRRELEVANT.to_string(),
        )]
        .into_iter()
        .collect();
        LevelSchedule { levels, aliases }
    }

    pub fn levels(&self) -> &[SupportLevel] {
        &self.levels
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Ladder position of a level or alias name.
    pub fn position(&self, name: &str) -> Option<usize> {
        let target = self.aliases.get(name).map(String::as_str).unwrap_or(name);
        self.levels.iter().position(|l| l.name == target)
    }

    pub fn pair(&self, name: &str) -> Option<LikelihoodPair> {
        self.position(name).map(|i| self.levels[i].pair)
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.levels.iter().map(SupportLevel::ratio).collect()
    }

    /// Rung whose ratio is nearest to `lr` in log space. Ties go to the lower
    /// rung.
    pub fn nearest(&self, lr: f64) -> Option<usize> {
        let target = lr.ln();
        let mut best: Option<(usize, f64)> = None;
        for (i, l) in self.levels.iter().enumerate() {
            let d = (l.ratio().ln() - target).abs();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Lowest rung with a ratio strictly above `lr`.
    pub fn rung_above(&self, lr: f64) -> Option<usize> {
        self.levels.iter().position(|l| l.ratio() > lr)
    }

    /// Highest rung with a ratio strictly below `lr`.
    pub fn rung_below(&self, lr: f64) -> Option<usize> {
        self.levels.iter().rposition(|l| l.ratio() < lr)
    }

    /// Everything wrong with the schedule, one message per problem.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.levels.is_empty() {
            out.push("schedule has no levels".to_string());
        }
        let mut seen = BTreeSet::new();
        for l in &self.levels {
            if !seen.insert(l.name.as_str()) {
                out.push(format!("level `{}` defined twice", l.name));
            }
            if l.ratio() < 1.0 {
                out.push(format!("level `{}` has ratio {} < 1", l.name, l.ratio()));
            }
        }
        for w in self.levels.windows(2) {
            if w[1].ratio() <= w[0].ratio() {
                out.push(format!(
                    "ratios not strictly increasing: `{}` ({}) then `{}` ({})",
                    w[0].name,
                    w[0].ratio(),
                    w[1].name,
                    w[1].ratio()
                ));
            }
        }
        if let Some(l) = self.levels.iter().find(|l| l.name == level::IRRELEVANT) {
            if l.ratio() != 1.0 {
                out.push(format!(
                    "level `irrelevant` must have ratio 1, has {}",
                    l.ratio()
                ));
            }
        }
        for (alias, target) in &self.aliases {
            if seen.contains(alias.as_str()) {
                out.push(format!("alias `{alias}` shadows a level"));
            }
            if !seen.contains(target.as_str()) {
                out.push(format!(
                    "alias `{alias}` points at unknown level `{target}`"
                ));
            }
        }
        out
    }
}

/// Content of one matrix cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellValue {
    Level(String),
    Pair(LikelihoodPair),
}

impl CellValue {
    pub fn level(name: impl Into<String>) -> Self {
        CellValue::Level(name.into())
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Level(n) => f.write_str(n),
            CellValue::Pair(p) => write!(f, "({}, {})", p.given_h(), p.given_not_h()),
        }
    }
}

/// Sorts x evidences grid of support assessments.
#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentMatrix {
    pub sorts: Vec<Sort>,
    pub evidences: Vec<Evidence>,
    pub cells: BTreeMap<(SortId, EvidenceId), CellValue>,
    pub schedule: LevelSchedule,
    pub notes: String,
}

impl AssessmentMatrix {
    pub fn sort(&self, id: SortId) -> Option<&Sort> {
        self.sorts.iter().find(|s| s.id == id)
    }

    pub fn cell(&self, sort: SortId, evidence: EvidenceId) -> Option<&CellValue> {
        self.cells.get(&(sort, evidence))
    }

    /// Likelihood pair of one cell, resolving level names through the
    /// schedule.
    pub fn cell_pair(&self, sort: SortId, evidence: EvidenceId) -> Result<LikelihoodPair> {
        match self.cell(sort, evidence) {
            None => Err(Error::InvalidMatrix(vec![Violation::at(
                sort,
                evidence,
                ViolationKind::MissingCell,
            )])),
            Some(CellValue::Pair(p)) => Ok(*p),
            Some(CellValue::Level(name)) => level_pair(name, &self.schedule),
        }
    }

    /// The sort's likelihood pairs in evidence order.
    pub fn sort_pairs(&self, sort: SortId) -> Result<Vec<LikelihoodPair>> {
        self.evidences
            .iter()
            .map(|e| self.cell_pair(sort, e.id))
            .collect()
    }

    /// Reorders the evidences (and hence the update order) without touching
    /// any cell. `order` lists indices into the current evidence list.
    pub fn with_evidence_order(&self, order: &[usize]) -> AssessmentMatrix {
        let mut m = self.clone();
        m.evidences = order.iter().map(|&i| self.evidences[i].clone()).collect();
        m
    }
}

pub fn level_pair(name: &str, schedule: &LevelSchedule) -> Result<LikelihoodPair> {
    schedule
        .pair(name)
        .ok_or_else(|| Error::UnknownLevel(name.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    MissingCell,
    UnknownLevel(String),
    RatioBelowOne(f64),
    OrphanCell,
    DuplicateId,
    NonContiguousIds,
    NoSorts,
    NoEvidences,
    BadId(String),
    Schedule(String),
}

/// One broken matrix invariant, located by coordinates where it has them.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub sort: Option<SortId>,
    pub evidence: Option<EvidenceId>,
    pub kind: ViolationKind,
}

impl Violation {
    pub(crate) fn at(sort: SortId, evidence: EvidenceId, kind: ViolationKind) -> Self {
        Violation {
            sort: Some(sort),
            evidence: Some(evidence),
            kind,
        }
    }

    pub(crate) fn global(kind: ViolationKind) -> Self {
        Violation {
            sort: None,
            evidence: None,
            kind,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sort, self.evidence) {
            (Some(s), Some(e)) => write!(f, "({s}, {e}): ")?,
            (Some(s), None) => write!(f, "{s}: ")?,
            (None, Some(e)) => write!(f, "{e}: ")?,
            (None, None) => {}
        }
        match &self.kind {
            ViolationKind::MissingCell => f.write_str("missing cell"),
            ViolationKind::UnknownLevel(n) => write!(f, "unknown level `{n}`"),
            ViolationKind::RatioBelowOne(r) => write!(f, "override ratio {r} < 1"),
            ViolationKind::OrphanCell => {
                f.write_str("cell refers to an undeclared sort or evidence")
            }
            ViolationKind::DuplicateId => f.write_str("duplicate id"),
            ViolationKind::NonContiguousIds => {
                f.write_str("ids are not contiguous from 1 in order")
            }
            ViolationKind::NoSorts => f.write_str("no sorts"),
            ViolationKind::NoEvidences => f.write_str("no evidences"),
            ViolationKind::BadId(id) => write!(f, "invalid id `{id}`"),
            ViolationKind::Schedule(m) => write!(f, "schedule: {m}"),
        }
    }
}

/// Checks every matrix invariant. Never fails; an empty list means valid.
pub fn validate_matrix(m: &AssessmentMatrix) -> Vec<Violation> {
    let mut out: Vec<Violation> = m
        .schedule
        .problems()
        .into_iter()
        .map(|p| Violation::global(ViolationKind::Schedule(p)))
        .collect();

    if m.sorts.is_empty() {
        out.push(Violation::global(ViolationKind::NoSorts));
    }
    if m.evidences.is_empty() {
        out.push(Violation::global(ViolationKind::NoEvidences));
    }

    let mut sort_ids = BTreeSet::new();
    for s in &m.sorts {
        if !sort_ids.insert(s.id) {
            out.push(Violation {
                sort: Some(s.id),
                evidence: None,
                kind: ViolationKind::DuplicateId,
            });
        }
    }
    let mut ev_ids = BTreeSet::new();
    for e in &m.evidences {
        if !ev_ids.insert(e.id) {
            out.push(Violation {
                sort: None,
                evidence: Some(e.id),
                kind: ViolationKind::DuplicateId,
            });
        }
    }
    // Contiguity is about the id set; evidence order may be permuted.
    if sort_ids.len() == m.sorts.len()
        && !sort_ids.iter().enumerate().all(|(i, id)| id.index() == i)
    {
        out.push(Violation::global(ViolationKind::NonContiguousIds));
    }
    if ev_ids.len() == m.evidences.len()
        && !ev_ids.iter().enumerate().all(|(i, id)| id.index() == i)
    {
        out.push(Violation::global(ViolationKind::NonContiguousIds));
    }

    for s in &m.sorts {
        for e in &m.evidences {
            match m.cells.get(&(s.id, e.id)) {
                None => out.push(Violation::at(s.id, e.id, ViolationKind::MissingCell)),
                Some(CellValue::Level(name)) => {
                    if m.schedule.position(name).is_none() {
                        out.push(Violation::at(
                            s.id,
                            e.id,
                            ViolationKind::UnknownLevel(name.clone()),
                        ));
                    }
                }
                Some(CellValue::Pair(p)) => {
                    if p.ratio() < 1.0 {
                        out.push(Violation::at(
                            s.id,
                            e.id,
                            ViolationKind::RatioBelowOne(p.ratio()),
                        ));
                    }
                }
            }
        }
    }
    for &(s, e) in m.cells.keys() {
        if !sort_ids.contains(&s) || !ev_ids.contains(&e) {
            out.push(Violation::at(s, e, ViolationKind::OrphanCell));
        }
    }
    out
}

/// Notes recorded with the canonical dataset.
const CANONICAL_NOTES: &str = "\
Evidence selection: prefer evidence of different kinds over many items of one kind; \
all algorithmic game-playing results collapse into the single Deep Blue evidence. \
Systems with related names (AlphaGo, AlphaZero) count as separate evidences when they \
demonstrate different things. The evidence list is a snapshot and is expected to grow. \
Every sort starts at 0.5; a sort with no bearing evidence stays at 0.5.";

/// The canonical 9-sort x 7-evidence dataset.
///
/// Cell levels were recovered by inverting the published posterior table
/// (see [`crate::fit`]).
pub fn canonical_dataset() -> AssessmentMatrix {
    let sorts = [
        (
            "Holism",
            "Integrating lower-level intelligent components into a higher-level intelligence.",
        ),
        ("Troubleshooting", "Problem solving."),
        (
            "Learning",
            "Continuous knowledge acquisition from all sources into a coherent whole.",
        ),
        ("Creativity", "Imagination, intuition and invention."),
        ("Teleology", "Search for purposes."),
        (
            "Reasoning and inference",
            "Abductive, deductive and inductive reasoning.",
        ),
        (
            "Proactivity",
            "Initiative in detecting interesting problems.",
        ),
        (
            "Enantiodromia",
            "Overcoming apparent logical contradictions.",
        ),
        (
            "Disambiguation",
            "Passing the Turing test through Winograd schema challenges.",
        ),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, (name, description))| Sort {
        id: SortId(i as u16 + 1),
        name: name.to_string(),
        description: description.to_string(),
    })
    .collect();

    let evidences = [
        (
            "Deep Blue",
            Some(1997),
            "Chess win over Kasparov; stands for all rule-governed, algorithmic domains.",
        ),
        (
            "DeepMind Atari",
            Some(2014),
            "Deep reinforcement learning from scratch found an unanticipated Breakout strategy.",
        ),
        (
            "AlphaGo",
            Some(2016),
            "Defeated Lee Sedol at Go; move 37 showed intuition and creativity.",
        ),
        (
            "AlphaZero",
            Some(2017),
            "Learned Go and chess from self-play alone and beat the strongest programs.",
        ),
        (
            "Libratus",
            Some(2017),
            "Beat professional heads-up no-limit Texas hold'em players over 20 days.",
        ),
        (
            "EQP",
            Some(1996),
            "Automated prover settled the Robbins conjecture.",
        ),
        (
            "Watson",
            Some(2011),
            "Won Jeopardy! against the two record-holding champions.",
        ),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, (name, year, description))| Evidence {
        id: EvidenceId(i as u16 + 1),
        name: name.to_string(),
        year,
        description: description.to_string(),
    })
    .collect();

    use level::*;
    const I: &str = IRRELEVANT;
    let rows: [[&str; 7]; 9] = [
        [I, FEASIBILITY, STRONG, I, I, I, I],
        [
            DESIRABILITY,
            STRONG,
            DESIRABILITY,
            VERY_STRONG,
            DESIRABILITY,
            NEAR_CERTAIN,
            I,
        ],
        [I, VERY_STRONG, DESIRABILITY, DECISIVE, I, I, I],
        [
            I,
            DESIRABILITY,
            DESIRABILITY,
            DECISIVE,
            FEASIBILITY,
            FEASIBILITY,
            I,
        ],
        [FEASIBILITY, I, FEASIBILITY, DESIRABILITY, FEASIBILITY, I, I],
        [I, I, FEASIBILITY, FEASIBILITY, I, STRONG, DESIRABILITY],
        [I; 7],
        [I; 7],
        [I, I, I, I, I, I, WEAK],
    ];
    let mut cells = BTreeMap::new();
    for (s, row) in rows.iter().enumerate() {
        for (e, name) in row.iter().enumerate() {
            cells.insert(
                (SortId(s as u16 + 1), EvidenceId(e as u16 + 1)),
                CellValue::level(*name),
            );
        }
    }

    AssessmentMatrix {
        sorts,
        evidences,
        cells,
        schedule: LevelSchedule::canonical(),
        notes: CANONICAL_NOTES.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_display() {
        assert_eq!("S9".parse::<SortId>().unwrap(), SortId(9));
        assert_eq!("Ev12".parse::<EvidenceId>().unwrap(), EvidenceId(12));
        assert_eq!(SortId(3).to_string(), "S3");
        assert_eq!(EvidenceId(7).to_string(), "Ev7");
        for bad in ["S0", "S", "Ev", "X1", "S1a", "s1", "S-1", "Ev+2"] {
            assert!(
                bad.parse::<SortId>().is_err() || bad.parse::<EvidenceId>().is_err(),
                "{bad}"
            );
        }
        assert!("Ev1".parse::<SortId>().is_err());
    }

    #[test]
    fn canonical_schedule_ratios() {
        let s = LevelSchedule::canonical();
        assert!(s.problems().is_empty(), "{:?}", s.problems());
        let expected = [1.0, 1.5, 3.0, 4.0, 17.0 / 3.0, 9.0, 19.0, 49.0];
        for (got, want) in s.ratios().iter().zip(expected) {
            assert!((got - want).abs() / want < 1e-12, "{got} vs {want}");
        }
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn level_pair_examples() {
        let s = LevelSchedule::canonical();
        let p = level_pair("possibility", &s).unwrap();
        assert_eq!((p.given_h(), p.given_not_h()), (0.5, 0.5));
        let p = level_pair("feasibility", &s).unwrap();
        assert_eq!((p.given_h(), p.given_not_h()), (0.75, 0.25));
        let p = level_pair("near-certain", &s).unwrap();
        assert_eq!((p.given_h(), p.given_not_h()), (0.98, 0.02));
        assert_eq!(
            level_pair("magic", &s).unwrap_err(),
            Error::UnknownLevel("magic".into())
        );
    }

    #[test]
    fn nearest_and_neighbours() {
        let s = LevelSchedule::canonical();
        assert_eq!(s.nearest(5.66), s.position(level::DESIRABILITY));
        assert_eq!(s.nearest(1.0), Some(0));
        assert_eq!(s.nearest(1e6), Some(7));
        assert_eq!(s.rung_above(4.0), s.position(level::DESIRABILITY));
        assert_eq!(s.rung_below(4.0), s.position(level::FEASIBILITY));
        assert_eq!(s.rung_above(49.0), None);
        assert_eq!(s.rung_below(1.0), None);
    }

    #[test]
    fn schedule_problems_detected() {
        let p = |a, b| LikelihoodPair::new(a, b).unwrap();
        let s = LevelSchedule::new(
            vec![
                SupportLevel::new("irrelevant", p(0.6, 0.5)),
                SupportLevel::new("a", p(0.9, 0.1)),
                SupportLevel::new("b", p(0.8, 0.2)),
                SupportLevel::new("c", p(0.3, 0.7)),
            ],
            [("x".to_string(), "nowhere".to_string())]
                .into_iter()
                .collect(),
        );
        let probs = s.problems();
        assert!(probs.iter().any(|m| m.contains("ratio 1")));
        assert!(probs.iter().any(|m| m.contains("not strictly increasing")));
        assert!(probs.iter().any(|m| m.contains("< 1")));
        assert!(probs.iter().any(|m| m.contains("unknown level `nowhere`")));
    }

    #[test]
    fn canonical_dataset_is_valid() {
        let m = canonical_dataset();
        assert_eq!(validate_matrix(&m), vec![]);
        assert_eq!(m.sorts.len(), 9);
        assert_eq!(m.evidences.len(), 7);
        assert_eq!(m.cells.len(), 63);
    }

    #[test]
    fn canonical_cells_match_documented_examples() {
        let m = canonical_dataset();
        for e in 1..=7 {
            assert_eq!(
                m.cell(SortId(7), EvidenceId(e)),
                Some(&CellValue::level("irrelevant"))
            );
        }
        let p = m.cell_pair(SortId(9), EvidenceId(7)).unwrap();
        assert_eq!((p.given_h(), p.given_not_h()), (0.6, 0.4));
        let p = m.cell_pair(SortId(2), EvidenceId(1)).unwrap();
        assert_eq!((p.given_h(), p.given_not_h()), (0.85, 0.15));
    }

    #[test]
    fn missing_cell_is_reported_once() {
        let mut m = canonical_dataset();
        m.cells.remove(&(SortId(3), EvidenceId(5)));
        let v = validate_matrix(&m);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::MissingCell);
        assert_eq!(
            (v[0].sort, v[0].evidence),
            (Some(SortId(3)), Some(EvidenceId(5)))
        );
        assert_eq!(v[0].to_string(), "(S3, Ev5): missing cell");
    }

    #[test]
    fn unknown_level_is_reported_once() {
        let mut m = canonical_dataset();
        m.cells
            .insert((SortId(1), EvidenceId(1)), CellValue::level("magic"));
        let v = validate_matrix(&m);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::UnknownLevel("magic".into()));
    }

    #[test]
    fn structural_violations() {
        let mut m = canonical_dataset();
        m.sorts[8].id = SortId(11);
        m.cells.insert(
            (SortId(1), EvidenceId(1)),
            CellValue::Pair(LikelihoodPair::new(0.2, 0.8).unwrap()),
        );
        let kinds: Vec<_> = validate_matrix(&m).into_iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::NonContiguousIds));
        assert!(kinds.contains(&ViolationKind::OrphanCell));
        assert!(kinds
            .iter()
            .any(|k| matches!(k, ViolationKind::RatioBelowOne(_))));
        assert!(kinds.contains(&ViolationKind::MissingCell));
    }

    #[test]
    fn permuted_evidence_order_stays_valid() {
        let m = canonical_dataset().with_evidence_order(&[6, 5, 4, 3, 2, 1, 0]);
        assert!(validate_matrix(&m).is_empty());
        assert_eq!(m.evidences[0].id, EvidenceId(7));
    }
}
