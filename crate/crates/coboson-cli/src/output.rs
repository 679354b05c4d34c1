//! Serialization of table rows to CSV or JSON, file or stdout.
//!
//! CSV carries a single '#' header line naming the tool version and the
//! columns; data rows print floats with 17 significant digits so a reader
//! recovers bit-identical doubles. Identical runs produce byte-identical
//! output.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::records::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub fn render<T: Table + Serialize>(records: &[T], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = format!(
                "# {} {} columns: {}\n",
                env!("CARGO_PKG_NAME"),
                env!("CARGO_PKG_VERSION"),
                T::COLUMNS.join(",")
            );
            for rec in records {
                s.push_str(&rec.csv_row());
                s.push('\n');
            }
            s
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("plain data serializes");
            s.push('\n');
            s
        }
    }
}

pub fn emit<T: Table + Serialize>(
    records: &[T],
    format: OutputFormat,
    out: Option<&Path>,
) -> io::Result<()> {
    let body = render(records, format);
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    }
}
