//! Tabular output in text, CSV or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    /// Rounded to a fixed number of decimals.
    Fixed(f64, usize),
    Int(u64),
    Str(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:?}"),
            Cell::Fixed(v, d) => format!("{v:.d$}"),
            Cell::Int(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Float(v) => float_json(*v),
            Cell::Fixed(..) => float_json(self.render().parse().expect("formatted float")),
            Cell::Int(v) => Value::from(*v),
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

fn float_json(v: f64) -> Value {
    Number::from_f64(v).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let rendered: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| rendered.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
            .collect();
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(self.columns.clone(), &mut out);
        for row in &rendered {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }

    pub fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Array(self.json_rows())).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["theta", "lambda", "note"]);
        t.push(vec![Cell::Str("1/2".into()), Cell::Fixed(0.757_823_011_268_492_8, 6), Cell::Empty]);
        t.push(vec![Cell::Float(2.0), Cell::Float(0.475_639_396_665_25), Cell::Int(3)]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().to_csv(), "theta,lambda,note\n1/2,0.757823,\n2.0,0.47563939666525,3\n");
    }

    #[test]
    fn json_matches_csv_values() {
        let rows = sample().json_rows();
        assert_eq!(rows[0]["lambda"], serde_json::json!(0.757823));
        assert_eq!(rows[1]["lambda"].as_f64().unwrap(), 0.475_639_396_665_25);
        assert!(rows[0]["note"].is_null());
    }

    #[test]
    fn text_is_aligned() {
        let text = sample().to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].ends_with("note"));
    }
}
