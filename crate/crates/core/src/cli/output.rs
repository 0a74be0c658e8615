//! Tables and their CSV / JSON renderings.
//!
//! Numbers are written with 17 significant digits in exponent form, so that
//! identical runs produce identical bytes and every value round-trips.

use std::fmt::Write as _;

use super::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Bool(bool),
    /// A value that is not meaningful at this row: `status` says why.
    Flag(&'static str),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Flag(s) => (*s).to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => number(*x),
            Cell::Num(_) | Cell::Flag(_) => "null".into(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => json_string(s),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

/// 17 significant digits; non-finite values spelled out.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record {
    pub fields: Vec<(&'static str, Cell)>,
}

impl Record {
    pub fn push(&mut self, key: &'static str, cell: Cell) -> &mut Self {
        self.fields.push((key, cell));
        self
    }

    fn json(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}: {}", json_string(k), v.json()))
            .collect();
        format!("{{{}}}", body.join(", "))
    }

    /// `summary key=value ...`
    pub fn summary_line(&self) -> String {
        let mut line = String::from("summary");
        for (k, v) in &self.fields {
            let _ = write!(line, " {k}={}", v.csv());
        }
        line
    }
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub model: &'static str,
    pub units: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<Record>,
    /// Whether every `--check` threshold held.
    pub passed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    pub fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"command\": {},", json_string(self.command));
        let _ = writeln!(out, "  \"model\": {},", json_string(self.model));
        let _ = writeln!(out, "  \"units\": {},", json_string(self.units));
        let columns: Vec<String> = self.columns.iter().map(|c| json_string(c)).collect();
        let _ = writeln!(out, "  \"columns\": [{}],", columns.join(", "));
        out.push_str("  \"rows\": [");
        for (j, row) in self.rows.iter().enumerate() {
            let record = Record {
                fields: self
                    .columns
                    .iter()
                    .copied()
                    .zip(row.iter().cloned())
                    .collect(),
            };
            out.push_str(if j == 0 { "\n    " } else { ",\n    " });
            out.push_str(&record.json());
        }
        out.push_str(if self.rows.is_empty() {
            "],\n"
        } else {
            "\n  ],\n"
        });
        out.push_str("  \"summary\": [");
        for (j, record) in self.summary.iter().enumerate() {
            out.push_str(if j == 0 { "\n    " } else { ",\n    " });
            out.push_str(&record.json());
        }
        out.push_str(if self.summary.is_empty() {
            "],\n"
        } else {
            "\n  ],\n"
        });
        let _ = writeln!(out, "  \"passed\": {}", self.passed);
        out.push_str("}\n");
        out
    }

    pub fn summary_lines(&self) -> String {
        self.summary
            .iter()
            .map(|r| r.summary_line() + "\n")
            .collect()
    }
}
