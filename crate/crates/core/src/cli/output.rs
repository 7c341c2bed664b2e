//! Table, JSON-lines and CSV rendering of result rows.

use std::io::{IsTerminal, Write};

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::registry::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    /// Table on a terminal, JSON otherwise.
    pub fn detect() -> Self {
        if std::io::stdout().is_terminal() {
            Format::Table
        } else {
            Format::Json
        }
    }
}

/// A row type that can be printed in every format.
pub trait Row: Serialize {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn emit<R: Row>(out: &mut dyn Write, format: Format, rows: &[R]) -> Result<()> {
    match format {
        Format::Json => {
            for r in rows {
                let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(R::headers()).map_err(csv_err)?;
            for r in rows {
                w.write_record(r.cells()).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Table => {
            let cells: Vec<Vec<String>> = rows.iter().map(Row::cells).collect();
            let mut widths: Vec<usize> = R::headers().iter().map(|h| h.len()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |out: &mut dyn Write, row: &[String]| -> Result<()> {
                let padded: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                writeln!(out, "{}", padded.join("  ").trim_end())?;
                Ok(())
            };
            let head: Vec<String> = R::headers().iter().map(|h| h.to_string()).collect();
            line(out, &head)?;
            for row in &cells {
                line(out, row)?;
            }
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

impl Row for VerificationReport {
    fn headers() -> &'static [&'static str] {
        &["id", "modulus", "outcome", "computed", "expected", "residual", "engine", "millis"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.modulus.to_string(),
            self.outcome.to_string(),
            self.computed.clone(),
            self.expected.clone(),
            self.residual.clone(),
            self.engine.clone(),
            self.millis.to_string(),
        ]
    }
}
