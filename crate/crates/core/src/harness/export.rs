use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A table ready for CSV export: `#` header lines, a column line and rows.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Shortest representation that parses back to the same f64.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

impl CsvTable {
    pub fn new(header: Vec<String>, columns: &[&str]) -> Self {
        Self { header, columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for h in &self.header {
            s.push_str(h);
            s.push('\n');
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// Inverse of [`CsvTable::render`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = Vec::new();
        let mut columns = None;
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.starts_with('#') {
                header.push(line.to_string());
            } else if columns.is_none() {
                columns = Some(line.split(',').map(str::to_string).collect::<Vec<_>>());
            } else if !line.is_empty() {
                let row = line
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Config(format!("bad CSV row '{line}'")))?;
                rows.push(row);
            }
        }
        Ok(Self { header, columns: columns.unwrap_or_default(), rows })
    }
}

/// Plain (P2) graymap with maxval 65535; the finite range maps linearly onto
/// 0..=65535 and non-finite (masked) pixels become 0. `data` is row-major
/// with row 0 at the top.
pub fn render_pgm(nx: usize, ny: usize, data: &[f64], header: &[String]) -> Result<String> {
    if data.len() != nx * ny {
        return Err(Error::Config(format!("pixel count {} does not match {nx}x{ny}", data.len())));
    }
    let finite = data.iter().copied().filter(|v| v.is_finite());
    let lo = finite.clone().fold(f64::INFINITY, f64::min);
    let hi = finite.fold(f64::NEG_INFINITY, f64::max);
    let mut s = String::from("P2\n");
    for h in header {
        let _ = writeln!(s, "{h}");
    }
    let _ = writeln!(s, "# min={} max={}", fmt_num(lo), fmt_num(hi));
    let _ = writeln!(s, "{nx} {ny}\n65535");
    for row in data.chunks(nx) {
        let px: Vec<String> = row
            .iter()
            .map(|&v| {
                if !v.is_finite() || !(hi > lo) {
                    0
                } else {
                    ((v - lo) / (hi - lo) * 65535.0).round() as u32
                }
            })
            .map(|p| p.to_string())
            .collect();
        let _ = writeln!(s, "{}", px.join(" "));
    }
    Ok(s)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(Error::from)
}
