//! JSON and CSV rendering. Object keys come out sorted because serde_json's
//! map is ordered; integers above 2⁵³ are written as decimal strings.

use num_bigint::BigUint;
use serde_json::{Map, Value};

const EXACT_LIMIT: u64 = 1 << 53;

pub fn big(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) if v <= EXACT_LIMIT => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn big_opt(x: Option<&BigUint>) -> Value {
    x.map_or(Value::Null, big)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => serde_json::to_string(v).expect("values serialize"),
    }
}

/// CSV view of a report: one line per element of its "rows" array when it
/// has one, otherwise a single line of its top-level fields.
pub fn to_csv(v: &Value) -> String {
    let rows: Vec<Map<String, Value>> = match v.get("rows").and_then(Value::as_array) {
        Some(rows) => rows.iter().filter_map(|r| r.as_object().cloned()).collect(),
        None => v.as_object().cloned().into_iter().collect(),
    };
    let mut header: Vec<String> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    header.sort();
    header.dedup();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in &rows {
        w.write_record(header.iter().map(|k| r.get(k).map(cell).unwrap_or_default())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
