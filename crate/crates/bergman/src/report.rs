//! Deterministic CSV and JSON output.
//!
//! Numbers are written with Rust's shortest round-trip formatting (`{:e}`),
//! which depends only on the value, so identical results give identical
//! bytes. Rows end in LF and every table starts with its header row.

use serde::Serialize;

use crate::error::{Error, Result};

/// One output file, held in memory until the caller writes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

impl OutputFile {
    /// Write into `dir`, creating it if needed.
    pub fn write_into(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(&self.name), &self.contents)?;
        Ok(())
    }
}

/// A float cell: shortest round-trip scientific form; `nan`, `inf`, `-inf`
/// for the non-finite values.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

/// An optional float cell; empty when absent.
pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// A table with a fixed header, rendered as CSV.
#[derive(Clone, Debug)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Append a row; its width must match the header.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width differs from the header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn into_file(self, name: &str) -> OutputFile {
        OutputFile { name: name.into(), contents: self.to_csv() }
    }
}

/// Pretty JSON with a trailing newline.
pub fn json_file<T: Serialize>(name: &str, value: &T) -> Result<OutputFile> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(OutputFile { name: name.into(), contents: s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_lf_rows() {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["1".into(), num(0.1)]);
        t.push(vec!["2".into(), num(f64::NAN)]);
        assert_eq!(t.to_csv(), "n,value\n1,1e-1\n2,nan\n");
        assert_eq!(Table::new(&["a"]).to_csv(), "a\n");
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(opt_num(None), "");
    }
}
