//! Rectangular numeric tables and their CSV rendering.

use crate::error::{Error, Result};

/// A rectangular table of finite reals with named columns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl OutputTable {
    pub fn new(header: &[&str]) -> Self {
        OutputTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::domain(format!(
                "row has {} values, table has {} columns",
                row.len(),
                self.header.len()
            )));
        }
        if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { at: *bad });
        }
        self.rows.push(row);
        Ok(())
    }
}

/// Render a real with at most `digits` significant digits, in plain decimal
/// notation, trailing zeros trimmed.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).clamp(0, 18) as usize;
    let mut s = format!("{value:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Comma-separated text: header first, one line per row, line-feed
/// terminated, reals at 12 significant digits.
pub fn emit_csv(table: &OutputTable) -> String {
    let mut out = String::new();
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&v| format_significant(v, 12)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
