//! Number formatting shared by the JSON, CSV and text renderers.
//!
//! Every number is rounded to 12 significant digits and anything smaller
//! than 1e-14 in magnitude is written as 0, so outputs are stable across
//! platforms and free of `-0` and rounding dust.

use num_complex::Complex64;
use serde_json::{json, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;
pub const SNAP_TO_ZERO: f64 = 1e-14;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < SNAP_TO_ZERO {
        return 0.0;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

pub fn num(x: f64) -> Value {
    let r = round_sig(x);
    if r.is_finite() {
        json!(r)
    } else {
        Value::Null
    }
}

pub fn complex(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn complex_list(v: &[Complex64]) -> Value {
    Value::Array(v.iter().copied().map(complex).collect())
}

pub fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().copied().map(num).collect())
}

pub fn text(x: f64) -> String {
    format!("{}", round_sig(x))
}

pub fn complex_text(z: Complex64) -> String {
    let (re, im) = (round_sig(z.re), round_sig(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) if im < 0.0 => format!("{re}-{}i", -im),
        _ => format!("{re}+{im}i"),
    }
}

/// Comma-separated rows; fields containing commas or quotes are quoted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let field = |s: &String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        };
        std::iter::once(&self.header)
            .chain(&self.rows)
            .map(|r| r.iter().map(field).collect::<Vec<_>>().join(",") + "\n")
            .collect()
    }
}
