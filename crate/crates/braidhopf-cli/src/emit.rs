//! Table emitters: JSON, CSV, and Markdown renderings of labelled string
//! tables.
//!
//! The JSON document carries exactly the keys basis, instance, q12, and
//! table, in lexicographic order, and every cell is the canonical
//! polynomial rendering, so serializing, parsing, and re-serializing a
//! document reproduces it byte for byte. Column headers are display-only
//! (they equal `basis` for square tables) and never serialized.

use serde::{Deserialize, Serialize};

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// A rendered table: rows labelled by `basis`, cells already in canonical
/// string form. Serialized fields are declared in key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub basis: Vec<String>,
    pub instance: String,
    pub q12: Option<i8>,
    pub table: Vec<Vec<String>>,
    #[serde(skip)]
    pub columns: Vec<String>,
}

impl TableDoc {
    /// A square table labelled by the basis on both sides.
    pub fn square(
        instance: &str,
        q12: Option<i8>,
        basis: Vec<String>,
        table: Vec<Vec<String>>,
    ) -> TableDoc {
        TableDoc {
            columns: basis.clone(),
            basis,
            instance: instance.to_string(),
            q12,
            table,
        }
    }

    /// Render in the requested format, ending with a newline.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("table serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Md => self.render_md(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push(',');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for (label, row) in self.basis.iter().zip(&self.table) {
            out.push_str(label);
            for cell in row {
                out.push(',');
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }

    fn render_md(&self) -> String {
        let mut out = String::new();
        out.push_str("| |");
        for c in &self.columns {
            out.push_str(&format!(" {c} |"));
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in &self.columns {
            out.push_str("---|");
        }
        out.push('\n');
        for (label, row) in self.basis.iter().zip(&self.table) {
            out.push_str(&format!("| {label} |"));
            for cell in row {
                out.push_str(&format!(" {cell} |"));
            }
            out.push('\n');
        }
        out
    }
}

/// CSV and Markdown cells are not escaped, so the canonical renderings
/// must never contain the delimiters.
pub fn check_cell(cell: &str) -> Result<(), String> {
    if cell.contains(',') || cell.contains('|') || cell.contains('\n') {
        return Err(format!("cell `{cell}` contains a delimiter"));
    }
    Ok(())
}
