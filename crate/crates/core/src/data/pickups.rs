use std::path::Path;

use chrono::{DateTime, Datelike, NaiveDateTime, Timelike};
use log::warn;

use crate::error::{Error, Result};

/// One pickup: position in degrees and time in seconds since the epoch (UTC).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PickupRecord {
    pub latitude: f64,
    pub longitude: f64,
    pub timestamp: i64,
}

/// Header names of the three used columns, matched case-insensitively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickupColumns {
    pub latitude: String,
    pub longitude: String,
    pub datetime: String,
    pub delimiter: u8,
}

impl Default for PickupColumns {
    fn default() -> Self {
        PickupColumns {
            latitude: "Lat".into(),
            longitude: "Lon".into(),
            datetime: "Date/Time".into(),
            delimiter: b',',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PickupLoad {
    pub records: Vec<PickupRecord>,
    /// Rows dropped because a field did not parse.
    pub skipped: usize,
}

const FORMATS: [&str; 4] = ["%m/%d/%Y %H:%M:%S", "%m/%d/%Y %H:%M", "%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"];

/// Seconds since the epoch from `M/D/YYYY H:MM:SS` or ISO-8601.
/// Times without an offset are taken as UTC.
pub fn parse_datetime(s: &str) -> Option<i64> {
    let s = s.trim();
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.timestamp());
    }
    FORMATS
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
        .map(|t| t.and_utc().timestamp())
}

/// `M/D/YYYY H:MM:SS`, the layout of the public pickup exports.
pub fn format_datetime(ts: i64) -> String {
    let t = DateTime::from_timestamp(ts, 0).unwrap_or_default().naive_utc();
    format!(
        "{}/{}/{} {}:{:02}:{:02}",
        t.month(),
        t.day(),
        t.year(),
        t.hour(),
        t.minute(),
        t.second()
    )
}

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim().eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Input(format!("no column named '{name}'")))
}

/// Reads pickups in file order. Unparseable rows are skipped and counted;
/// `limit` stops after that many valid rows.
pub fn load_pickups(path: impl AsRef<Path>, limit: Option<usize>, columns: &PickupColumns) -> Result<PickupLoad> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(columns.delimiter)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let headers = reader.headers().map_err(|e| Error::Input(e.to_string()))?.clone();
    let (lat, lon, dt) = (
        column(&headers, &columns.latitude)?,
        column(&headers, &columns.longitude)?,
        column(&headers, &columns.datetime)?,
    );
    let mut records = Vec::new();
    let mut skipped = 0;
    for row in reader.records() {
        if limit.is_some_and(|l| records.len() >= l) {
            break;
        }
        let parsed = row.ok().and_then(|r| {
            let latitude: f64 = r.get(lat)?.trim().parse().ok()?;
            let longitude: f64 = r.get(lon)?.trim().parse().ok()?;
            let timestamp = parse_datetime(r.get(dt)?)?;
            (latitude.is_finite() && longitude.is_finite()).then_some(PickupRecord {
                latitude,
                longitude,
                timestamp,
            })
        });
        match parsed {
            Some(p) => records.push(p),
            None => skipped += 1,
        }
    }
    if skipped > 0 {
        warn!("{}: skipped {skipped} malformed rows", path.display());
    }
    if records.is_empty() {
        return Err(Error::Input(format!("{}: no valid pickup rows", path.display())));
    }
    Ok(PickupLoad { records, skipped })
}

/// Writes records with the given header names, readable by [`load_pickups`].
pub fn write_pickups(path: impl AsRef<Path>, records: &[PickupRecord], columns: &PickupColumns) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(columns.delimiter)
        .from_path(path)
        .map_err(|e| Error::Io(e.to_string()))?;
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record([&columns.datetime, &columns.latitude, &columns.longitude]).map_err(io)?;
    for r in records {
        w.write_record([format_datetime(r.timestamp), r.latitude.to_string(), r.longitude.to_string()])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
