//! Column-oriented result tables and their CSV / JSON renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Significant digits written for every number.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>, rows: Vec<Vec<f64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        Self { columns, rows }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format_number(*x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"columns": [...], "data": {"<column>": [...], ...}}`, values
    /// rounded exactly as in the CSV, non-finite values as `null`.
    pub fn to_json(&self) -> String {
        let mut data = Map::new();
        for (i, name) in self.columns.iter().enumerate() {
            let values: Vec<Value> = self.rows.iter().map(|r| number_value(r[i])).collect();
            data.insert((*name).to_string(), Value::Array(values));
        }
        let doc = json!({ "columns": self.columns, "data": data });
        let mut out = serde_json::to_string_pretty(&doc).expect("tables serialise");
        out.push('\n');
        out
    }
}

/// JSON number carrying the CSV rounding; `null` when not finite.
pub fn number_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format_number(x).parse().expect("formatted numbers parse");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// `%.12g`: 12 significant digits, trailing zeros removed, exponent form
/// below 1e-4 and from 1e12 upwards.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mut s = String::new();
        let sign = if exp < 0 { '-' } else { '+' };
        write!(s, "{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs()).expect("write to string");
        s
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
