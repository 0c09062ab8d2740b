//! Plain-text tables and JSON helpers.

use serde_json::{Map, Value};

use crate::model::{Distribution, Hypothesis, Observation};
use crate::rational::Rational;

/// Left-aligned columns separated by two spaces, no trailing whitespace.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let columns = header.len();
    let mut widths = vec![0; columns];
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let line: Vec<String> =
            row.iter().enumerate().map(|(i, cell)| format!("{cell:<width$}", width = widths[i])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn header(first: &str, ids: &[Hypothesis]) -> Vec<String> {
    std::iter::once(first.to_string()).chain(ids.iter().map(|h| h.to_string())).collect()
}

pub fn row(label: impl ToString, values: &[Rational]) -> Vec<String> {
    std::iter::once(label.to_string()).chain(values.iter().map(|v| v.to_string())).collect()
}

/// `ob -> h -> value` rows, labelled by observation.
pub fn weight_rows<R: AsRef<[Rational]>>(observations: &[Observation], rows: &[R]) -> Vec<Vec<String>> {
    observations.iter().zip(rows).map(|(ob, r)| row(ob, r.as_ref())).collect()
}

pub fn rational(v: &Rational) -> Value {
    Value::String(v.to_string())
}

pub fn named(ids: &[Hypothesis], values: &[Rational]) -> Value {
    Value::Object(ids.iter().zip(values).map(|(h, v)| (h.to_string(), rational(v))).collect())
}

pub fn distribution(ids: &[Hypothesis], d: &Distribution) -> Value {
    named(ids, d.masses())
}

pub fn weight_table<R: AsRef<[Rational]>>(hyps: &[Hypothesis], observations: &[Observation], rows: &[R]) -> Value {
    Value::Object(observations.iter().zip(rows).map(|(ob, r)| (ob.to_string(), named(hyps, r.as_ref()))).collect())
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|i| Value::String(i.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = table(
            &["ob".to_string(), "A".to_string()],
            &[vec!["heads".to_string(), "2/3".to_string()], vec!["x".to_string(), "1".to_string()]],
        );
        assert_eq!(t, "ob     A\nheads  2/3\nx      1\n");
    }
}
