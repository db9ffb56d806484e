use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Contradiction,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Contradiction => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = String>) {
        self.rows.push(cells.into_iter().collect());
    }

    /// Two-column key/value view of a flat JSON object.
    pub fn from_fields(pairs: &[(&str, String)]) -> Self {
        let mut t = Table::new(["field", "value"]);
        for (k, v) in pairs {
            t.row([k.to_string(), v.clone()]);
        }
        t
    }

    pub fn single(header: &str, value: String) -> Self {
        let mut t = Table::new([header]);
        t.row([value]);
        t
    }
}

pub struct Outcome {
    pub result: Value,
    pub table: Table,
    pub status: Status,
}

impl Outcome {
    pub fn ok(result: impl Serialize, table: Table) -> Self {
        Outcome {
            result: serde_json::to_value(result).expect("results serialize"),
            table,
            status: Status::Ok,
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

pub fn emit(outcome: &Outcome, format: Format, args: &[String]) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let envelope = json!({
                "invocation": {
                    "args": args,
                    "version": env!("CARGO_PKG_VERSION"),
                },
                "result": outcome.result,
            });
            serde_json::to_writer_pretty(&mut out, &envelope)?;
            writeln!(out)
        }
        Format::Table => {
            let t = &outcome.table;
            if t.headers.len() == 1 && t.rows.len() == 1 {
                return writeln!(out, "{}", t.rows[0][0]);
            }
            let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
            for r in &t.rows {
                for (i, c) in r.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(c.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let pad = widths.get(i).copied().unwrap_or(0).saturating_sub(c.chars().count());
                        format!("{c}{}", " ".repeat(pad))
                    })
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&t.headers))?;
            for r in &t.rows {
                writeln!(out, "{}", line(r))?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&outcome.table.headers)?;
            for r in &outcome.table.rows {
                w.write_record(r)?;
            }
            w.flush()
        }
    }
}

/// Renders a JSON scalar for a table cell.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
