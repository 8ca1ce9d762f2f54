//! Output assembly. A report is an ordered list of summary fields, optional
//! machine-readable detail and a table; each format renders a view of it.

use anyhow::Result;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::Format;

pub struct Report {
    command: &'static str,
    meta: Value,
    fields: Vec<(String, Value)>,
    details: Map<String, Value>,
    table: Vec<Vec<String>>,
}

/// Twelve significant digits, stable across platforms.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_real(z.re), fmt_real(z.im.abs()))
}

impl Report {
    pub fn new(command: &'static str, meta: Value) -> Self {
        Report {
            command,
            meta,
            fields: Vec::new(),
            details: Map::new(),
            table: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.push((key.to_string(), value));
    }

    /// JSON-only payload.
    pub fn detail(&mut self, key: &str, value: Value) {
        self.details.insert(key.to_string(), value);
    }

    /// First row is the header.
    pub fn table(&mut self, rows: Vec<Vec<String>>) {
        self.table = rows;
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => Ok(self.text()),
        }
    }

    fn json(&self) -> Result<String> {
        let mut result = Map::new();
        for (k, v) in &self.fields {
            result.insert(k.clone(), v.clone());
        }
        for (k, v) in &self.details {
            result.insert(k.clone(), v.clone());
        }
        let doc = json!({"command": self.command, "meta": self.meta, "result": result});
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.table {
            w.write_record(row)?;
        }
        let body = String::from_utf8(w.into_inner()?)?;
        Ok(format!("# poleplace {} {}\n{body}", self.command, serde_json::to_string(&self.meta)?))
    }

    fn text(&self) -> String {
        let mut out = format!("poleplace {}  seed={}\n", self.command, self.meta["seed"]);
        if !self.meta["config"].is_null() {
            out += &format!("config {}\n", self.meta["config"]);
        }
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(s) => s.clone(),
                Value::Array(xs) => xs
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string()))
                    .collect::<Vec<_>>()
                    .join(" "),
                Value::Number(n) if n.is_f64() => fmt_real(n.as_f64().unwrap_or(f64::NAN)),
                other => other.to_string(),
            };
            out += &format!("{k:<width$}  {shown}\n");
        }
        if self.table.len() > 1 {
            let cols = self.table[0].len();
            let widths: Vec<usize> = (0..cols)
                .map(|c| self.table.iter().map(|r| r.get(c).map_or(0, String::len)).max().unwrap_or(0))
                .collect();
            out.push('\n');
            for row in &self.table {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                out += cells.join("  ").trim_end();
                out.push('\n');
            }
        }
        out
    }
}
