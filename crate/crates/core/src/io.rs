//! JSONL ingestion and record serialization.
//!
//! CSV output uses RFC 4180 quoting, renders null as an empty cell, and
//! formats floats with up to six fractional digits ('.' separator, no locale
//! dependence) so identical runs produce identical bytes. JSONL output keeps
//! full float precision and renders null as JSON null.

use std::io::{BufRead, Write};
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::doc::{build_document, Document};
use crate::error::{Error, Result};
use crate::extract::{MetricValue, MetricsRecord};

/// Builds a document from one JSONL line: an object with required "text"
/// and optional "id" (string or integer; defaults to the 1-based line
/// number).
pub fn parse_jsonl_line(line: &str, line_no: usize, lang: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(line)
        .map_err(|e| Error::parse(line_no, format!("invalid JSON: {e}")))?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::parse(line_no, "expected a JSON object"))?;
    let text = object
        .get("text")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse(line_no, "missing required string field \"text\""))?;
    let id = match object.get("id") {
        None => line_no.to_string(),
        Some(Value::String(id)) => id.clone(),
        Some(Value::Number(id)) => id.to_string(),
        Some(other) => {
            return Err(Error::parse(
                line_no,
                format!("field \"id\" must be a string or number, got {other}"),
            ));
        }
    };
    Ok(build_document(id, text, lang))
}

/// Reads a JSONL stream into documents. Blank lines are skipped. A malformed
/// line is an error naming its line number, or under `lenient` it is skipped
/// and counted; the second return value is the skip count.
pub fn read_jsonl<R: BufRead>(reader: R, lang: &str, lenient: bool) -> Result<(Vec<Document>, usize)> {
    let mut documents = Vec::new();
    let mut skipped = 0usize;
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_jsonl_line(&line, index + 1, lang) {
            Ok(doc) => documents.push(doc),
            Err(_) if lenient => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((documents, skipped))
}

/// Output format for metric records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            _ => Err(Error::Config(format!("unknown output format {s:?}"))),
        }
    }
}

/// Renders a float with up to six fractional digits, trailing zeros
/// trimmed.
pub fn format_float(value: f64) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let mut rendered = format!("{value:.6}");
    while rendered.ends_with('0') {
        rendered.pop();
    }
    if rendered.ends_with('.') {
        rendered.pop();
    }
    if rendered == "-0" {
        rendered = "0".to_string();
    }
    rendered
}

fn csv_cell(value: MetricValue) -> String {
    match value {
        MetricValue::Int(v) => v.to_string(),
        MetricValue::Float(v) => format_float(v),
        MetricValue::Bool(v) => v.to_string(),
        MetricValue::Null => String::new(),
    }
}

fn json_value(value: MetricValue) -> Value {
    match value {
        MetricValue::Int(v) => Value::Number(v.into()),
        MetricValue::Float(v) => Number::from_f64(v).map_or(Value::Null, Value::Number),
        MetricValue::Bool(v) => Value::Bool(v),
        MetricValue::Null => Value::Null,
    }
}

/// Writes records in the given format. `keys` is the shared metric key set
/// (the CSV header is `id` plus these keys); every record must carry exactly
/// these keys. An empty record list yields a header-only CSV or an empty
/// JSONL stream.
pub fn write_records<W: Write>(
    records: &[MetricsRecord],
    keys: &[String],
    format: OutputFormat,
    sink: W,
) -> Result<()> {
    for record in records {
        if !record.keys().eq(keys.iter().map(String::as_str)) {
            return Err(Error::Config(format!(
                "record {:?} does not share the run's key set",
                record.id
            )));
        }
    }
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(sink);
            let mut header = Vec::with_capacity(keys.len() + 1);
            header.push("id");
            header.extend(keys.iter().map(String::as_str));
            writer
                .write_record(&header)
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            for record in records {
                let mut row = Vec::with_capacity(keys.len() + 1);
                row.push(record.id.clone());
                row.extend(record.fields.iter().map(|(_, value)| csv_cell(*value)));
                writer
                    .write_record(&row)
                    .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            }
            writer.flush()?;
        }
        OutputFormat::Jsonl => {
            let mut sink = sink;
            for record in records {
                let mut object = Map::new();
                object.insert("id".to_string(), Value::String(record.id.clone()));
                for (key, value) in &record.fields {
                    object.insert(key.clone(), json_value(*value));
                }
                serde_json::to_writer(&mut sink, &Value::Object(object))
                    .map_err(|e| Error::Io(std::io::Error::other(e)))?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
        }
    }
    Ok(())
}
