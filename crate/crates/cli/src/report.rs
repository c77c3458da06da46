//! Column-named tables written as CSV or TSV.

use std::io::Write;

use hsign_core::Rational;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn write(&self, out: impl Write, format: Format) -> Result<(), CliError> {
        let delimiter = match format {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        };
        let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_string(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf, format).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

/// Twelve significant digits, so reports are byte-stable.
pub fn real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.11e}")
    }
}

pub fn rational(r: &Rational) -> String {
    r.to_string()
}
