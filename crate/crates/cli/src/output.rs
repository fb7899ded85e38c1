use std::fmt::Display;
use std::io::{self, Write};
use std::time::Duration;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// One JSON line of output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub n: usize,
    pub m: usize,
    pub prefs: Vec<u32>,
    pub command: String,
    pub method: Option<String>,
    /// Exact values, `"p/q"` or `"p"`.
    pub values: Vec<String>,
    pub timing_ms: f64,
    pub status: String,
}

impl ResultDocument {
    pub fn new(command: &str, n: usize, m: usize, prefs: &[u32]) -> Self {
        ResultDocument {
            n,
            m,
            prefs: prefs.to_vec(),
            command: command.to_string(),
            method: None,
            values: Vec::new(),
            timing_ms: 0.0,
            status: "ok".into(),
        }
    }

    pub fn with_values<T: Display>(mut self, values: impl IntoIterator<Item = T>) -> Self {
        self.values = values.into_iter().map(|v| v.to_string()).collect();
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.timing_ms = elapsed.as_secs_f64() * 1e3;
        self
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer(&mut *out, self)?;
        writeln!(out)
    }
}

/// Left-aligned columns separated by two spaces.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |out: &mut dyn Write, cells: &[String]| -> io::Result<()> {
            let mut text = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    text.push_str(cell);
                } else {
                    text.push_str(&format!("{cell:<w$}  "));
                }
            }
            writeln!(out, "{}", text.trim_end())
        };
        line(out, &self.header)?;
        for row in &self.rows {
            line(out, row)?;
        }
        Ok(())
    }
}
