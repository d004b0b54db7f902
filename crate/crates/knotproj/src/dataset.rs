//! JSONL dataset of enumeration records.
//!
//! The first line is `{"schema":1}`; every following line is one record,
//! ordered by `(n, code)`. Rationals are strings, `"p/q"` or `"k"`.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use knotproj_core::enumerate::EnumerationRecord;
use knotproj_core::invariants::ExactRational;
use knotproj_core::{canonicalize, parse_code};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    schema: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Line {
    code: String,
    n: usize,
    x: u64,
    tr: u64,
    face_degrees: Vec<usize>,
    monogons: usize,
    strong_bigons: usize,
    reduced: bool,
    prime: bool,
    #[serde(rename = "in_S")]
    in_s: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arnold: Option<String>,
}

impl From<&EnumerationRecord> for Line {
    fn from(r: &EnumerationRecord) -> Line {
        Line {
            code: r.code.to_string(),
            n: r.n,
            x: r.x,
            tr: r.tr,
            face_degrees: r.face_degrees.clone(),
            monogons: r.monogons,
            strong_bigons: r.strong_bigons,
            reduced: r.reduced,
            prime: r.prime,
            in_s: r.in_s,
            arnold: r.arnold.map(|a| a.to_string()),
        }
    }
}

impl Line {
    fn into_record(self) -> Result<EnumerationRecord, String> {
        let cd = parse_code(&self.code).map_err(|e| e.to_string())?;
        let code = canonicalize(&cd);
        if code.to_string() != self.code {
            return Err(format!("code `{}` is not canonical", self.code));
        }
        if code.n() != self.n {
            return Err(format!("n = {} but the code has {} crossings", self.n, code.n()));
        }
        let arnold = self
            .arnold
            .map(|a| a.parse::<ExactRational>().map_err(|e| e.to_string()))
            .transpose()?;
        Ok(EnumerationRecord {
            code,
            n: self.n,
            x: self.x,
            tr: self.tr,
            face_degrees: self.face_degrees,
            monogons: self.monogons,
            strong_bigons: self.strong_bigons,
            reduced: self.reduced,
            prime: self.prime,
            in_s: self.in_s,
            arnold,
        })
    }
}

/// One record as a single JSON line, without the trailing newline.
pub fn record_line(r: &EnumerationRecord) -> String {
    serde_json::to_string(&Line::from(r)).expect("records serialize")
}

/// Sorts by `(n, code)` and writes the header and one line per record.
pub fn write_records<W: Write>(records: &[EnumerationRecord], mut out: W) -> io::Result<()> {
    let mut sorted: Vec<&EnumerationRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.code.cmp(&b.code));
    writeln!(out, "{}", serde_json::to_string(&Header { schema: SCHEMA_VERSION })?)?;
    for r in sorted {
        writeln!(out, "{}", record_line(r))?;
    }
    out.flush()
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<EnumerationRecord>, DatasetError> {
    let mut lines = input.lines();
    let schema_err = |line, message: String| DatasetError::Schema { line, message };
    let first = lines
        .next()
        .transpose()?
        .ok_or_else(|| schema_err(1, "missing schema line".into()))?;
    let header: Header = serde_json::from_str(&first).map_err(|e| schema_err(1, e.to_string()))?;
    if header.schema != SCHEMA_VERSION {
        return Err(schema_err(1, format!("unsupported schema version {}", header.schema)));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let number = i + 2;
        let line = line?;
        let parsed: Line = serde_json::from_str(&line).map_err(|e| schema_err(number, e.to_string()))?;
        out.push(parsed.into_record().map_err(|m| schema_err(number, m))?);
    }
    Ok(out)
}

pub fn write_dataset(records: &[EnumerationRecord], path: &Path) -> Result<(), DatasetError> {
    let file = File::create(path)?;
    write_records(records, BufWriter::new(file))?;
    Ok(())
}

pub fn read_dataset(path: &Path) -> Result<Vec<EnumerationRecord>, DatasetError> {
    read_records(BufReader::new(File::open(path)?))
}
