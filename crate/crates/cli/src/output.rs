//! Rendering of command results as JSON, CSV or aligned text.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command result: the JSON document plus a tabular view of it.
pub struct Output {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Trailing lines for the text format.
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(json: Value, headers: &[&str]) -> Self {
        Output { json, headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let s: Vec<String> =
                        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    s.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.headers);
                for r in &self.rows {
                    out += &line(r);
                }
                for n in &self.notes {
                    out += n;
                    out.push('\n');
                }
                out
            }
        })
    }
}
