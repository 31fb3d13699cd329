//! Output plumbing: one record shape for the scalar commands, one table
//! shape for sweeps, each rendered as an aligned text table, JSON, or CSV.
//!
//! Determinism rules: maps are ordered (`BTreeMap`), floats render through
//! either serde's shortest-round-trip encoding (JSON) or a fixed
//! 12-significant-digit scientific form (CSV), and nothing depends on locale
//! or environment — identical flags give byte-identical bytes.

use serde::Serialize;
use std::collections::BTreeMap;

use dirtypaper::Unit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Scalar command output: echoed parameters, numeric results, and optional
/// string labels (case names, pass/fail markers).
#[derive(Debug, Serialize)]
pub struct Record {
    pub command: &'static str,
    pub parameters: BTreeMap<String, f64>,
    pub results: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
    pub units: &'static str,
}

impl Record {
    pub fn new(command: &'static str, units: Unit) -> Self {
        Record {
            command,
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            labels: BTreeMap::new(),
            units: unit_name(units),
        }
    }

    /// Echo an input parameter.  Infinite values (the "inf" observation
    /// token) are omitted: JSON has no numeric infinity, and absence already
    /// says it.
    pub fn param(&mut self, key: &str, value: f64) -> &mut Self {
        if value.is_finite() {
            self.parameters.insert(key.into(), value);
        }
        self
    }

    pub fn result(&mut self, key: &str, value: f64) -> &mut Self {
        self.results.insert(key.into(), value);
        self
    }

    pub fn label(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.labels.insert(key.into(), value.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("record serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::from("key,value\n");
                out.push_str(&format!("command,{}\n", self.command));
                out.push_str(&format!("units,{}\n", self.units));
                for (k, v) in &self.parameters {
                    out.push_str(&format!("{k},{}\n", csv_num(*v)));
                }
                for (k, v) in &self.results {
                    out.push_str(&format!("{k},{}\n", csv_num(*v)));
                }
                for (k, v) in &self.labels {
                    out.push_str(&format!("{k},{v}\n"));
                }
                out
            }
            Format::Table => {
                let mut out = String::new();
                let mut row = |k: &str, v: String| {
                    out.push_str(&format!("{k:<18} {v}\n"));
                };
                row("command", self.command.to_string());
                row("units", self.units.to_string());
                for (k, v) in &self.parameters {
                    row(k, fmt_shortest(*v));
                }
                for (k, v) in &self.results {
                    row(k, fmt_shortest(*v));
                }
                for (k, v) in &self.labels {
                    row(k, v.clone());
                }
                out
            }
        }
    }
}

/// One evaluated sweep row, or the reason its grid value was rejected.
#[derive(Debug, Serialize)]
pub struct SweepRowOut {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_opt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Sweep output: the fixed parameters plus one row per grid point, emitted
/// in grid order.
#[derive(Debug, Serialize)]
pub struct SweepTable {
    pub command: &'static str,
    pub parameters: BTreeMap<String, f64>,
    pub labels: BTreeMap<String, String>,
    pub units: &'static str,
    pub rows: Vec<SweepRowOut>,
}

impl SweepTable {
    pub fn new(units: Unit) -> Self {
        SweepTable {
            command: "sweep",
            parameters: BTreeMap::new(),
            labels: BTreeMap::new(),
            units: unit_name(units),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: f64) -> &mut Self {
        if value.is_finite() {
            self.parameters.insert(key.into(), value);
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("table serializes");
                s.push('\n');
                s
            }
            // the default (table) and --csv renderings coincide: a sweep is
            // a data stream for plotting, not prose
            Format::Csv | Format::Table => {
                let rate_col = match self.units {
                    "bits" => "rate_bits",
                    _ => "rate_nats",
                };
                let mut out = format!("value,case,{rate_col},m_opt,mu\n");
                for r in &self.rows {
                    let case = r
                        .case
                        .clone()
                        .unwrap_or_else(|| "ERROR".to_string());
                    let rate = r.rate.map(csv_num).unwrap_or_default();
                    let m = r.m_opt.map(csv_num).unwrap_or_default();
                    let mu = r.mu.map(csv_num).unwrap_or_default();
                    out.push_str(&format!("{},{case},{rate},{m},{mu}\n", csv_num(r.value)));
                }
                out
            }
        }
    }
}

fn unit_name(u: Unit) -> &'static str {
    match u {
        Unit::Nats => "nats",
        Unit::Bits => "bits",
    }
}

/// CSV number form: integers as integers, everything else as 12-significant-
/// digit scientific notation with a '.' separator.
pub fn csv_num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.11e}")
    }
}

/// Shortest round-trip decimal form (same digits serde_json would emit).
fn fmt_shortest(v: f64) -> String {
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers_are_locale_free_and_twelve_digits() {
        assert_eq!(csv_num(27.0), "27");
        assert_eq!(csv_num(-3.0), "-3");
        assert_eq!(csv_num(0.27980789396771133), "2.79807893968e-1");
        assert_eq!(csv_num(1e-12), "1.00000000000e-12");
    }

    #[test]
    fn record_json_is_stable_and_typed() {
        let mut r = Record::new("capacity", Unit::Nats);
        r.param("P", 1.0)
            .param("N2", f64::INFINITY)
            .result("capacity", 0.25)
            .label("case", "UB_ACHIEVING");
        let s = r.render(Format::Json);
        assert!(s.contains("\"command\": \"capacity\""));
        assert!(!s.contains("N2"), "infinite parameters are omitted");
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["results"]["capacity"], 0.25);
    }

    #[test]
    fn sweep_error_rows_keep_the_column_count() {
        let mut t = SweepTable::new(Unit::Nats);
        t.rows.push(SweepRowOut {
            value: 49.5,
            case: None,
            rate: None,
            m_opt: None,
            mu: None,
            error: Some("not an integer".into()),
        });
        let csv = t.render(Format::Csv);
        let data_line = csv.lines().nth(1).unwrap();
        assert_eq!(data_line, "4.95000000000e1,ERROR,,,");
        assert_eq!(data_line.matches(',').count(), 4);
    }
}
