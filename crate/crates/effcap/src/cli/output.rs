//! CSV dataset assembly.
//!
//! Every command that produces tabular data goes through [`Dataset`] so the
//! on-disk format is uniform: `#`-prefixed context lines, one header row, then
//! data rows.  Floats are printed with 17 significant digits so readers can
//! reconstruct the exact binary value, and so repeated runs of a deterministic
//! pipeline produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

/// Formats a float with full round-trip precision.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One CSV value.
#[derive(Debug, Clone)]
pub enum Field {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Int(v as i64)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(v) => format_float(*v),
            Field::Text(v) => v.clone(),
        }
    }
}

/// An in-memory table with context comments, built up row by row and then
/// rendered to CSV in one pass.
#[derive(Debug, Clone)]
pub struct Dataset {
    comments: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<Field>>,
}

impl Dataset {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Dataset {
            comments: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Adds a `#`-prefixed context line above the header.
    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    /// Appends one row; panics if the arity does not match the header, since
    /// that is always a programming error.
    pub fn push_row(&mut self, row: Vec<Field>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity {} does not match {} columns",
            row.len(),
            self.columns.len()
        );
        self.rows.push(row);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Renders the complete file contents.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.comments {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let rendered: Vec<String> = row.iter().map(Field::render).collect();
            let _ = writeln!(out, "{}", rendered.join(","));
        }
        out
    }

    /// Writes the rendered CSV to `path`.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}
