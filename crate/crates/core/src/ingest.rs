//! Player files: comma-separated `name,role,avg,rate` with a header row.
//!
//! ```text
//! name,role,avg,rate
//! Sachin Tendulkar,batsman,45.12,86.26
//! Zaheer Khan,bowler,29.85,4.91
//! ```
//!
//! `rate` is the strike rate for a batsman and the economy rate for a
//! bowler. Lines that do not yield a valid record become warnings.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{PlayerRecord, Role};

pub const HEADER: [&str; 4] = ["name", "role", "avg", "rate"];
const HEADER_LINE: &str = "name,role,avg,rate";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlayerFile {
    pub path: Option<PathBuf>,
    pub records: Vec<PlayerRecord>,
    pub warnings: Vec<Warning>,
}

pub fn parse_players<R: Read>(source: R) -> Result<PlayerFile> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut rows = reader.records();

    let header = match rows.next() {
        Some(Ok(header)) => header,
        _ => {
            return Err(Error::MissingHeader {
                expected: HEADER_LINE,
            })
        }
    };
    if header.iter().ne(HEADER) {
        return Err(Error::MissingHeader {
            expected: HEADER_LINE,
        });
    }

    let mut file = PlayerFile::default();
    let mut data_lines = 0;
    for row in rows {
        data_lines += 1;
        match row {
            Ok(row) => {
                let line = row.position().map_or(0, |p| p.line());
                match parse_row(&row) {
                    Ok(record) => file.records.push(record),
                    Err(message) => file.warnings.push(Warning { line, message }),
                }
            }
            Err(err) => {
                let line = err.position().map_or(0, |p| p.line());
                file.warnings.push(Warning {
                    line,
                    message: err.to_string(),
                });
            }
        }
    }
    if data_lines == 0 {
        return Err(Error::EmptyFile);
    }
    Ok(file)
}

fn parse_row(row: &csv::StringRecord) -> std::result::Result<PlayerRecord, String> {
    if row.len() != HEADER.len() {
        return Err(format!(
            "expected {} fields, found {}",
            HEADER.len(),
            row.len()
        ));
    }
    let field = |i: usize| row.get(i).unwrap_or_default().trim();
    let name = field(0);
    if name.is_empty() {
        return Err("name is empty".into());
    }
    let role: Role = field(1).parse().map_err(|e: Error| e.to_string())?;
    let number = |i: usize, what: &str| -> std::result::Result<f64, String> {
        let text = field(i);
        let value: f64 = text
            .parse()
            .map_err(|_| format!("{what} `{text}` is not a number"))?;
        if !value.is_finite() {
            return Err(format!("{what} `{text}` is not a number"));
        }
        if value <= 0.0 {
            return Err(format!("{what} must be positive"));
        }
        Ok(value)
    };
    let avg = number(2, "avg")?;
    let rate = number(3, "rate")?;
    PlayerRecord::new(name, role, avg, rate).map_err(|e| e.to_string())
}

pub fn read_players(path: impl AsRef<Path>) -> Result<PlayerFile> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut parsed = parse_players(file)?;
    parsed.path = Some(path.to_path_buf());
    Ok(parsed)
}

/// Writes records in the canonical form accepted by [`parse_players`].
pub fn write_players<W: Write>(records: &[PlayerRecord], sink: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(HEADER)?;
    for record in records {
        writer.write_record([
            record.name(),
            record.role().as_str(),
            &record.avg().to_string(),
            &record.rate().to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
