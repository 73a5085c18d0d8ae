//! Output rendering: tables that mirror the published layout, and
//! machine-stable CSV and JSON.

use delpezzo_core::report::{DetailStatus, Report};
use delpezzo_core::{DimValue, Error, Result, Spectrum, Window};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl Format {
    pub fn from_name(name: &str) -> Result<Format> {
        match name {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::input(format!(
                "unknown format {other:?} (want table, csv or json)"
            ))),
        }
    }
}

fn dim_cell(v: &DimValue) -> String {
    v.to_string()
}

/// Rows q = 2, 1, 0 top to bottom, one column per twist.
pub fn spectrum_table(sp: &Spectrum) -> String {
    let twists: Vec<i64> = sp.window.iter().collect();
    let headers: Vec<String> = twists.iter().map(|t| format!("p={t}")).collect();
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    for q in (0..3).rev() {
        let cells: Vec<String> = sp.iter().map(|(_, entry)| dim_cell(&entry[q])).collect();
        rows.push((format!("q={q}"), cells));
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for (_, cells) in &rows {
        for (i, c) in cells.iter().enumerate() {
            widths[i] = widths[i].max(c.len());
        }
    }
    let mut out = String::new();
    out.push_str("     ");
    for (h, w) in headers.iter().zip(&widths) {
        out.push_str(&format!("  {h:>w$}"));
    }
    out.push('\n');
    for (label, cells) in rows {
        out.push_str(&format!("{label:<5}"));
        for (c, w) in cells.iter().zip(&widths) {
            out.push_str(&format!("  {c:>w$}"));
        }
        out.push('\n');
    }
    out
}

pub fn spectrum_csv(sp: &Spectrum) -> String {
    let mut out = String::from("twist,h0,h1,h2\n");
    for (t, entry) in sp.iter() {
        out.push_str(&format!(
            "{t},{},{},{}\n",
            dim_cell(&entry[0]),
            dim_cell(&entry[1]),
            dim_cell(&entry[2])
        ));
    }
    out
}

/// Parse the CSV form back into a spectrum; inverse of [`spectrum_csv`].
pub fn spectrum_from_csv(text: &str) -> Result<Spectrum> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::input("empty spectrum CSV".to_string()))?;
    if header.trim() != "twist,h0,h1,h2" {
        return Err(Error::input(format!("unexpected CSV header {header:?}")));
    }
    let parse_value = |s: &str| -> Result<DimValue> {
        if let Some((lo, hi)) = s.split_once("..") {
            let lo: i128 = lo
                .parse()
                .map_err(|_| Error::input(format!("bad bound {lo:?}")))?;
            let hi: i128 = hi
                .parse()
                .map_err(|_| Error::input(format!("bad bound {hi:?}")))?;
            Ok(DimValue::Range(lo, hi))
        } else {
            let n: i128 = s
                .parse()
                .map_err(|_| Error::input(format!("bad value {s:?}")))?;
            Ok(DimValue::Exact(n))
        }
    };
    let mut twists = Vec::new();
    let mut entries = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::input(format!("bad CSV row {line:?}")));
        }
        let t: i64 = parts[0]
            .parse()
            .map_err(|_| Error::input(format!("bad twist {:?}", parts[0])))?;
        twists.push(t);
        entries.push([
            parse_value(parts[1])?,
            parse_value(parts[2])?,
            parse_value(parts[3])?,
        ]);
    }
    let (&lo, &hi) = match (twists.first(), twists.last()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::input("spectrum CSV has no rows".to_string())),
    };
    for (i, &t) in twists.iter().enumerate() {
        if t != lo + i as i64 {
            return Err(Error::input(format!("non-consecutive twist {t} in CSV")));
        }
    }
    Spectrum::from_entries(Window::new(lo, hi)?, entries)
}

fn dim_json(v: &DimValue) -> Value {
    match v {
        DimValue::Exact(n) => json!(*n as i64),
        DimValue::Range(lo, hi) => json!(format!("{lo}..{hi}")),
    }
}

pub fn spectrum_json(sp: &Spectrum) -> String {
    let entries: Vec<Value> = sp
        .iter()
        .map(|(t, entry)| {
            json!({
                "twist": t,
                "h0": dim_json(&entry[0]),
                "h1": dim_json(&entry[1]),
                "h2": dim_json(&entry[2]),
            })
        })
        .collect();
    let mut text = json!({
        "window": { "lo": sp.window.lo, "hi": sp.window.hi },
        "entries": entries,
    })
    .to_string();
    text.push('\n');
    text
}

pub fn spectrum_text(sp: &Spectrum, format: Format) -> String {
    match format {
        Format::Table => spectrum_table(sp),
        Format::Csv => spectrum_csv(sp),
        Format::Json => spectrum_json(sp),
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_text(report: &Report, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!("id: {}\n", report.id));
            out.push_str(&format!("anchor: {}\n", report.anchor));
            for (k, v) in &report.params {
                out.push_str(&format!("param: {k}={v}\n"));
            }
            out.push_str(&format!("claim: {}\n", report.claim));
            for d in &report.details {
                let tail = match d.status {
                    DetailStatus::Match => format!("value {}", d.computed_value),
                    _ => format!("stated {} | computed {}", d.stated_value, d.computed_value),
                };
                out.push_str(&format!("[{}] {} | {} | {}\n", d.status, d.location, d.claim, tail));
            }
            for c in &report.counterexamples {
                out.push_str(&format!("counterexample: {c}\n"));
            }
            out.push_str(&format!("computed: {}\n", report.computed));
            out.push_str(&format!("verdict: {}\n", report.verdict));
            out
        }
        Format::Csv => {
            let mut out = String::from("id,status,location,claim,stated,computed\n");
            for d in &report.details {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    csv_quote(&report.id),
                    d.status,
                    csv_quote(&d.location),
                    csv_quote(&d.claim),
                    csv_quote(&d.stated_value),
                    csv_quote(&d.computed_value)
                ));
            }
            out
        }
        Format::Json => serde_json::to_string(report).expect("report serialization is infallible"),
    }
}

pub fn reports_text(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let values: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("report serialization is infallible"))
                .collect();
            Value::Array(values).to_string()
        }
        Format::Csv => {
            let mut out = String::from("id,status,location,claim,stated,computed\n");
            for r in reports {
                for line in report_text(r, Format::Csv).lines().skip(1) {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            out
        }
        Format::Table => {
            let parts: Vec<String> = reports.iter().map(|r| report_text(r, Format::Table)).collect();
            parts.join("\n")
        }
    }
}
