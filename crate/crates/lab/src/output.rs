//! CSV tables and `key = value` records.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use selberg_core::Complex64;

use crate::error::LabError;

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn cnum(z: Complex64) -> String {
    format!("{}{}{}i", num(z.re), if z.im.is_sign_negative() { "" } else { "+" }, num(z.im))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, LabError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| LabError::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| LabError::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Ordered `key = value` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    pub entries: Vec<(String, String)>,
}

impl Record {
    pub fn put(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn num(&mut self, key: &str, x: f64) -> &mut Self {
        self.put(key, num(x))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.0 == key).map(|e| e.1.as_str())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }
}

/// What a subcommand produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub record: Record,
    pub table: Option<Table>,
    /// Every assertion the subcommand makes held.
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// Record to `out`; the table goes to `csv_path` when given, else after the record.
    pub fn emit(&self, out: &mut dyn Write, csv_path: Option<&Path>) -> Result<(), LabError> {
        out.write_all(self.record.render().as_bytes())?;
        if let Some(t) = &self.table {
            let text = t.to_csv()?;
            match csv_path {
                Some(p) => std::fs::write(p, text)?,
                None => {
                    out.write_all(b"\n")?;
                    out.write_all(text.as_bytes())?;
                }
            }
        }
        Ok(())
    }
}
