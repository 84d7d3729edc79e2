//! Plain-text displayed grids, as accepted by `fit --table`.
//!
//! One line per evidence, one field per sort. Fields are separated by
//! whitespace or `;`. A comma separates fields when its token also contains
//! a dot or a letter (`0.5,0.75` or `Ev1,0.5`); otherwise it is a decimal
//! comma (`0,95775`). An optional header line names the sort columns
//! (`Evidences S1 S2 ...`) and an optional leading `Ev<k>` labels each row.
//! Blank lines and lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::evidence::{EvidenceId, SortId};
use crate::fit::DisplayedGrid;

fn fields(line: &str) -> Vec<String> {
    line.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|t| !t.is_empty())
        .flat_map(|t| {
            let splits = t.contains('.') || t.bytes().any(|b| b.is_ascii_alphabetic());
            if splits {
                t.split(',')
                    .filter(|x| !x.is_empty())
                    .map(str::to_string)
                    .collect()
            } else {
                vec![t.to_string()]
            }
        })
        .collect()
}

fn looks_numeric(t: &str) -> bool {
    t.bytes()
        .next()
        .is_some_and(|b| b.is_ascii_digit() || b == b'.' || b == b',')
}

pub fn parse_grid(text: &str) -> Result<DisplayedGrid> {
    let mut header: Option<Vec<SortId>> = None;
    let mut evidences = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();

    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut f = fields(trimmed);
        let first = f[0].clone();
        if let Ok(id) = first.parse::<EvidenceId>() {
            f.remove(0);
            evidences.push(id);
        } else if looks_numeric(&first) {
            evidences.push(EvidenceId(rows.len() as u16 + 1));
        } else if header.is_none() && rows.is_empty() {
            let ids: Vec<SortId> = f.iter().filter_map(|t| t.parse().ok()).collect();
            if ids.is_empty() {
                return Err(Error::GridShape(format!(
                    "line {}: header names no sort columns",
                    n + 1
                )));
            }
            header = Some(ids);
            continue;
        } else {
            return Err(Error::GridShape(format!(
                "line {}: unexpected `{first}`",
                n + 1
            )));
        }
        rows.push(f);
    }

    if rows.is_empty() {
        return Err(Error::GridShape("no data rows".to_string()));
    }
    let width = rows[0].len();
    let sorts = header.unwrap_or_else(|| (1..=width as u16).map(SortId).collect());
    DisplayedGrid::new(sorts, evidences, rows)
}
