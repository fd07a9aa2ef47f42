//! Report envelope and CSV rendering.
//!
//! JSON reports are self-describing: every one embeds the tool version and
//! the full effective configuration (minus `--workers`, which only schedules
//! work and never changes output bytes). CSV carries the payload as a single
//! RFC-4180 table with a mandatory header, UTF-8, LF line endings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;

pub const TOOL_NAME: &str = "phisig";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Effective run configuration echoed into every JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub subcommand: String,
    pub sieve_limit: u64,
    pub sieve_cache: Option<String>,
    pub output_format: String,
    pub cap: usize,
    /// Subcommand-specific arguments, canonically formatted.
    pub args: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub sieve_limit: u64,
    pub config: ConfigEcho,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(sieve_limit: u64, config: ConfigEcho, report: T) -> Self {
        Envelope {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            sieve_limit,
            config,
            report,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| crate::error::Error::domain(e.to_string()))
    }
}

/// A single CSV table: header plus rows of cells.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: Vec<S>) -> Self {
        CsvTable {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row<S: Into<String>>(&mut self, row: Vec<S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| crate::error::Error::domain(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

impl From<csv::Error> for crate::error::Error {
    fn from(e: csv::Error) -> Self {
        crate::error::Error::domain(format!("csv: {e}"))
    }
}
