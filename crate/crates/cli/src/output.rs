//! Text formats written by the CLI.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde_json::{json, Value};
use spacetime_average::analysis::{SweepResult, TrendRow};

pub const CSV_HEADER: &str = "P,born,dgp,delta_percent";
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `printf("%.*g")`-style formatting with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    // Let the scientific formatter do the rounding, then read back the exponent.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");

    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num(x: f64) -> String {
    format_sig(x, SIGNIFICANT_DIGITS)
}

/// Sweep table with header `P,born,dgp,delta_percent` and LF line endings.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::with_capacity(64 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(row.p),
            num(row.born),
            num(row.dgp),
            num(row.delta_percent)
        );
    }
    out
}

pub fn sweep_json(result: &SweepResult) -> Value {
    json!({
        "n1": result.n1,
        "n2": result.n2,
        "rows": result.rows.iter().map(|r| json!({
            "P": r.p,
            "born": r.born,
            "dgp": r.dgp,
            "delta_percent": r.delta_percent,
        })).collect::<Vec<_>>(),
    })
}

pub const TREND_HEADER: &str = "N,born,dgp,delta_percent,est_error,levels,intersections_per_cell";

pub fn trend_csv(rows: &[TrendRow]) -> String {
    let mut out = String::new();
    out.push_str(TREND_HEADER);
    out.push('\n');
    for row in rows {
        let per_cell = row
            .intersections_per_cell
            .map(|r| r.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.states,
            num(row.born),
            num(row.dgp),
            num(row.delta_percent),
            num(row.report.est_error),
            row.report.levels,
            per_cell
        );
    }
    out
}

pub fn trend_json(rows: &[TrendRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "N": r.states,
                    "born": r.born,
                    "dgp": r.dgp,
                    "delta_percent": r.delta_percent,
                    "est_error": r.report.est_error,
                    "levels": r.report.levels,
                    "singular_cells": r.report.singular_cells,
                    "intersections_per_cell": r.intersections_per_cell.map(|q| q.to_string()),
                })
            })
            .collect(),
    )
}

pub fn write_text(dir: &Path, name: &str, contents: &str) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)
}

pub fn write_json(dir: &Path, name: &str, value: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    write_text(dir, name, &text)
}

/// Reproducibility record written next to every run's outputs.
pub fn sidecar(
    command: &str,
    params: Value,
    tolerances: Value,
    results_summary: Value,
    runtime_seconds: f64,
) -> Value {
    json!({
        "command": command,
        "params": params,
        "tolerances": tolerances,
        "results_summary": results_summary,
        "runtime_seconds": runtime_seconds,
        "versions": {
            "stavg": env!("CARGO_PKG_VERSION"),
        },
    })
}
