//! Data tables, sidecars and the single writer per output file.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;
use crate::fmt::g17;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    F(f64),
    I(i128),
    S(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(x) => g17(*x),
            Cell::I(n) => n.to_string(),
            Cell::S(s) => {
                assert!(!s.contains([',', '\n', '"']), "CSV text cells carry no separators");
                s.clone()
            }
            Cell::Empty => String::new(),
        }
    }
    fn json(&self) -> Value {
        match self {
            Cell::F(x) => finite(*x),
            Cell::I(n) => json!(n),
            Cell::S(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}
impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::I(n as i128)
    }
}
impl From<i128> for Cell {
    fn from(n: i128) -> Self {
        Cell::I(n)
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

/// JSON number, or `null` when not finite.
pub fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }
    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

pub fn write_json(path: &Path, v: &impl Serialize) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// `<name>.csv` or `<name>.json` for the table, and `<name>.meta.json` for the sidecar.
pub fn write_dataset(dir: &Path, name: &str, format: Format, table: &Table, mut sidecar: Value) -> Result<Vec<PathBuf>> {
    let data = match format {
        Format::Csv => {
            let p = dir.join(format!("{}.csv", name));
            let mut w = create(&p)?;
            table.write_csv(&mut w)?;
            w.flush()?;
            p
        }
        Format::Json => {
            let p = dir.join(format!("{}.json", name));
            write_json(&p, &table.to_json())?;
            p
        }
    };
    if let Value::Object(m) = &mut sidecar {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("columns".into(), json!(table.columns));
        m.insert("rows".into(), json!(table.rows.len()));
    }
    let meta = dir.join(format!("{}.meta.json", name));
    write_json(&meta, &sidecar)?;
    Ok(vec![data, meta])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec![0.1.into(), Cell::I(-3), Cell::Empty]);
        t.push(vec![f64::NAN.into(), "x".to_string().into(), 2usize.into()]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,c\n0.10000000000000001,-3,\nnan,x,2\n");
        let j = t.to_json();
        assert_eq!(j["rows"][1][0], Value::Null);
        assert_eq!(j["rows"][0][0], json!(0.1));
    }
}
