//! Serialization and rendering: dataset documents, displayed grids and
//! reports.

pub mod dataset;
pub mod grid;
pub mod report;

pub use dataset::{
    load_dataset, load_schedule, serialize_dataset, serialize_schedule, SCHEMA_VERSION,
};
pub use grid::parse_grid;
pub use report::{emit_report, parse_json_report, ReportFormat};

/// 1-based line and column of a byte offset.
pub(crate) fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
