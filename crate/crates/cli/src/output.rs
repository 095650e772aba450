use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One JSON object per line.
    Json,
    /// Tab-separated with a header row.
    Tsv,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    /// Printed as a decimal string in JSON, since it may exceed 64 bits.
    Big(BigUint),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Big(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Big(v) => Value::from(v.to_string()),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<BigUint> for Cell {
    fn from(v: BigUint) -> Self {
        Cell::Big(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// Rows with named columns, rendered in any [`Format`]. Text mode uses the
/// preamble and per-row lines when given, otherwise space-aligned columns.
#[derive(Debug, Default)]
pub struct Records {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    text_preamble: Vec<String>,
    text_rows: Option<Vec<String>>,
}

impl Records {
    pub fn new(columns: &[&'static str]) -> Self {
        Records {
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn preamble(&mut self, line: String) {
        self.text_preamble.push(line);
    }

    pub fn text_line(&mut self, line: String) {
        self.text_rows.get_or_insert_with(Vec::new).push(line);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Tsv => {
                writeln!(out, "{}", self.columns.join("\t"))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::plain).collect();
                    writeln!(out, "{}", cells.join("\t"))?;
                }
            }
            Format::Json => {
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), v.json()))
                        .collect();
                    writeln!(out, "{}", Value::Object(obj))?;
                }
            }
            Format::Text => {
                for line in &self.text_preamble {
                    writeln!(out, "{line}")?;
                }
                match &self.text_rows {
                    Some(lines) => {
                        for line in lines {
                            writeln!(out, "{line}")?;
                        }
                    }
                    None => self.write_aligned(out)?,
                }
            }
        }
        Ok(())
    }

    fn write_aligned(&self, out: &mut impl Write) -> io::Result<()> {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::plain).collect())
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &rendered {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for row in &rendered {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Records {
        let mut r = Records::new(&["i", "j", "value"]);
        r.push(vec![3u64.into(), 2u64.into(), BigUint::from(72u8).into()]);
        r.push(vec![0u64.into(), 4u64.into(), BigUint::from(81u8).into()]);
        r
    }

    fn render(r: &Records, f: Format) -> String {
        let mut buf = Vec::new();
        r.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn tsv_has_header() {
        assert_eq!(render(&sample(), Format::Tsv), "i\tj\tvalue\n3\t2\t72\n0\t4\t81\n");
    }

    #[test]
    fn json_lines_round_trip() {
        let text = render(&sample(), Format::Json);
        let parsed: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(parsed[1]["j"], 4);
        assert_eq!(parsed[1]["value"], "81");
    }

    #[test]
    fn text_prefers_custom_lines() {
        let mut r = sample();
        r.text_line("(3,2) 72".into());
        assert_eq!(render(&r, Format::Text), "(3,2) 72\n");
    }
}
