use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows of a CSV-friendly result, e.g. a grid of evaluations.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a run produced, plus what is needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub parameters: Map<String, Value>,
    pub verdict: String,
    /// `None` for queries without a pass/fail notion.
    pub passed: Option<bool>,
    pub results: Value,
    pub residuals: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    /// Exit status after printing.
    #[serde(skip)]
    pub exit_code: u8,
}

impl Report {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Self {
            tool: "orbita",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            seed,
            tolerance: None,
            parameters: Map::new(),
            verdict: String::new(),
            passed: None,
            results: Value::Null,
            residuals: Map::new(),
            table: None,
            exit_code: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.to_string(), to_value(value));
        self
    }

    pub fn residual(&mut self, key: &str, value: f64) -> &mut Self {
        self.residuals.insert(key.to_string(), to_value(value));
        self
    }

    /// Records a numeric check; a failure exits with the non-convergence status.
    pub fn judge(&mut self, passed: bool) {
        self.passed = Some(passed);
        if !passed && self.exit_code == 0 {
            self.exit_code = CliError::NON_CONVERGENCE;
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.render_text()),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.subcommand, self.verdict);
        let mut body = Map::new();
        body.insert("parameters".into(), Value::Object(self.parameters.clone()));
        body.insert("results".into(), self.results.clone());
        body.insert("residuals".into(), Value::Object(self.residuals.clone()));
        let mut lines = Vec::new();
        flatten("", &Value::Object(body), &mut lines);
        for (k, v) in lines {
            out.push_str(&format!("{k} = {v}\n"));
        }
        if let Some(t) = &self.table {
            out.push('\n');
            out.push_str(&t.columns.join("\t"));
            out.push('\n');
            for row in &t.rows {
                out.push_str(&row.iter().map(scalar_text).collect::<Vec<_>>().join("\t"));
                out.push('\n');
            }
        }
        out
    }

    /// The table when there is one, otherwise `key,value` pairs of the flattened report.
    fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns).map_err(io)?;
                for row in &t.rows {
                    w.write_record(row.iter().map(scalar_text)).map_err(io)?;
                }
            }
            None => {
                w.write_record(["key", "value"]).map_err(io)?;
                let mut lines = Vec::new();
                flatten("", &serde_json::to_value(self).map_err(|e| CliError::Io(e.to_string()))?, &mut lines);
                for (k, v) in lines {
                    w.write_record([k, v]).map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn emit(&self, format: Format) -> Result<(), CliError> {
        let text = self.render(format)?;
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Round-trippable float text: 17 significant digits.
pub fn float_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => float_text(n.as_f64().unwrap_or(f64::NAN)),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&key(k), child, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), child, out);
            }
        }
        Value::Array(_) => out.push((prefix.to_string(), String::new())),
        leaf => out.push((prefix.to_string(), scalar_text(leaf))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_text_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.0] {
            assert_eq!(float_text(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float_text(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn csv_falls_back_to_key_value_pairs() {
        let mut r = Report::new("x", 3);
        r.param("n", 2).residual("fe", 0.5);
        r.results = serde_json::json!({ "list": [1, 2], "label": "a,b" });
        let csv = r.render(Format::Csv).unwrap();
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("parameters.n,2\n"));
        assert!(csv.contains("results.list.1,2\n"));
        assert!(csv.contains("\"a,b\""));
        assert!(csv.contains("residuals.fe,5.0000000000000000e-1\n"));
    }

    #[test]
    fn table_wins_in_csv() {
        let mut r = Report::new("x", 0);
        let mut t = Table::new(&["r", "value"]);
        t.push(vec![to_value(0.0), to_value(1.0)]);
        r.table = Some(t);
        assert_eq!(r.render(Format::Csv).unwrap(), "r,value\n0.0000000000000000e0,1.0000000000000000e0\n");
    }

    #[test]
    fn failed_check_sets_the_exit_status() {
        let mut r = Report::new("x", 0);
        r.judge(true);
        assert_eq!(r.exit_code, 0);
        r.judge(false);
        assert_eq!(r.exit_code, CliError::NON_CONVERGENCE);
    }
}
