//! Telemetry CSV export and re-import.
//!
//! Columns: `t,x,y,z,payload_mass,battery_remaining,event`, floats with six
//! decimals, empty event for plain samples.

use thiserror::Error;

use crate::sim::{TelemetryEvent, TelemetryLog};

pub const CSV_HEADER: [&str; 7] = [
    "t",
    "x",
    "y",
    "z",
    "payload_mass",
    "battery_remaining",
    "event",
];

#[derive(Debug, Error)]
pub enum TelemetryParseError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: {reason}")]
    Row { row: usize, reason: String },
}

/// A telemetry row as read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct TelemetryRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub payload_mass: f64,
    pub battery_remaining: f64,
    pub event: Option<TelemetryEvent>,
}

fn fixed(v: f64) -> String {
    // keep "-0.000000" out of the output
    let s = format!("{v:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn export_telemetry(log: &TelemetryLog) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in &log.records {
        writer
            .write_record([
                fixed(r.t),
                fixed(r.x),
                fixed(r.y),
                fixed(r.z),
                fixed(r.payload_mass),
                fixed(r.battery_remaining),
                r.event
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn parse_telemetry(text: &str) -> Result<Vec<TelemetryRow>, TelemetryParseError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(TelemetryParseError::Header(header));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let num = |col: usize| -> Result<f64, TelemetryParseError> {
            record[col].parse().map_err(|_| TelemetryParseError::Row {
                row,
                reason: format!(
                    "column {} is not a number: {:?}",
                    CSV_HEADER[col], &record[col]
                ),
            })
        };
        let event = match &record[6] {
            "" => None,
            name => Some(
                name.parse()
                    .map_err(|reason| TelemetryParseError::Row { row, reason })?,
            ),
        };
        rows.push(TelemetryRow {
            t: num(0)?,
            x: num(1)?,
            y: num(2)?,
            z: num(3)?,
            payload_mass: num(4)?,
            battery_remaining: num(5)?,
            event,
        });
    }
    Ok(rows)
}
