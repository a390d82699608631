//! Delimiter-separated trade-file parsing and writing.
//!
//! Files carry a header row; column names and the timestamp format are
//! configurable. Bad rows are collected, not fatal, until their rate
//! exceeds the configured cap.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use chrono::{NaiveDate, NaiveDateTime};
use csv::{ReaderBuilder, StringRecord, Trim};
use serde::{Deserialize, Serialize};

use super::TradeRecord;
use crate::error::{Error, Result};

/// Column map and conventions for a trade file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeFormat {
    /// Field delimiter, a single byte.
    pub delimiter: u8,
    /// chrono format string for the timestamp column.
    pub timestamp_format: String,
    pub timestamp_column: String,
    pub price_column: String,
    pub bid_column: String,
    pub ask_column: String,
    /// Fatal when row_errors / total_rows exceeds this fraction.
    pub row_error_cap: f64,
}

impl Default for TradeFormat {
    fn default() -> Self {
        TradeFormat {
            delimiter: b',',
            timestamp_format: "%Y-%m-%d %H:%M:%S%.3f".into(),
            timestamp_column: "timestamp".into(),
            price_column: "price".into(),
            bid_column: "bid".into(),
            ask_column: "ask".into(),
            row_error_cap: 0.001,
        }
    }
}

/// One rejected input row with its 1-based line number.
#[derive(Debug, Clone)]
pub struct RowError {
    pub line: u64,
    pub reason: String,
}

/// Parsed records plus whatever rows were rejected.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub records: Vec<TradeRecord>,
    pub row_errors: Vec<RowError>,
}

struct ColumnIndices {
    timestamp: usize,
    price: usize,
    bid: usize,
    ask: usize,
}

impl ColumnIndices {
    fn from_headers(headers: &StringRecord, format: &TradeFormat) -> Result<Self> {
        let lookup = |name: &str| -> Result<usize> {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))
        };
        Ok(ColumnIndices {
            timestamp: lookup(&format.timestamp_column)?,
            price: lookup(&format.price_column)?,
            bid: lookup(&format.bid_column)?,
            ask: lookup(&format.ask_column)?,
        })
    }
}

/// Parse a delimiter-separated trade file.
///
/// Fatal errors: unreadable input, missing header columns, row-error rate
/// above the cap. Everything else lands in `row_errors`.
pub fn parse_trades<R: Read>(reader: R, format: &TradeFormat) -> Result<ParseOutcome> {
    let mut rdr = ReaderBuilder::new()
        .delimiter(format.delimiter)
        .trim(Trim::All)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let cols = ColumnIndices::from_headers(&headers, format)?;

    let mut records = Vec::new();
    let mut row_errors = Vec::new();
    let mut n_rows = 0usize;
    // Track order within the day; regressions are row errors.
    let mut last: Option<NaiveDateTime> = None;
    let mut last_date: Option<NaiveDate> = None;

    for (i, row) in rdr.records().enumerate() {
        let line = i as u64 + 2; // 1-based, after the header
        n_rows += 1;
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                row_errors.push(RowError { line, reason: format!("unreadable row: {e}") });
                continue;
            }
        };
        match parse_row(&row, &cols, format) {
            Ok(rec) => {
                let date = rec.timestamp.date();
                if last_date == Some(date) {
                    if let Some(prev) = last {
                        if rec.timestamp < prev {
                            row_errors.push(RowError {
                                line,
                                reason: "timestamp out of order within day".into(),
                            });
                            continue;
                        }
                    }
                }
                last = Some(rec.timestamp);
                last_date = Some(date);
                records.push(rec);
            }
            Err(reason) => row_errors.push(RowError { line, reason }),
        }
    }

    if n_rows > 0 {
        let rate = row_errors.len() as f64 / n_rows as f64;
        if rate > format.row_error_cap {
            return Err(Error::TooManyRowErrors {
                n_errors: row_errors.len(),
                n_rows,
                rate,
                cap: format.row_error_cap,
            });
        }
    }
    Ok(ParseOutcome { records, row_errors })
}

pub fn parse_trades_path(path: impl AsRef<Path>, format: &TradeFormat) -> Result<ParseOutcome> {
    parse_trades(File::open(path)?, format)
}

fn parse_row(row: &StringRecord, cols: &ColumnIndices, format: &TradeFormat) -> std::result::Result<TradeRecord, String> {
    let field = |idx: usize, name: &str| -> std::result::Result<&str, String> {
        row.get(idx).ok_or_else(|| format!("short row: no {name} field"))
    };
    let number = |idx: usize, name: &str| -> std::result::Result<f64, String> {
        let raw = field(idx, name)?;
        raw.parse::<f64>().map_err(|_| format!("bad {name}: {raw:?}"))
    };

    let raw_ts = field(cols.timestamp, "timestamp")?;
    let timestamp = NaiveDateTime::parse_from_str(raw_ts, &format.timestamp_format)
        .map_err(|_| format!("bad timestamp: {raw_ts:?}"))?;
    let price = number(cols.price, "price")?;
    let bid = number(cols.bid, "bid")?;
    let ask = number(cols.ask, "ask")?;

    if !(price.is_finite() && price > 0.0) {
        return Err(format!("nonpositive price: {price}"));
    }
    if !(bid.is_finite() && bid > 0.0) {
        return Err(format!("nonpositive bid: {bid}"));
    }
    if !ask.is_finite() || ask < bid {
        return Err(format!("crossed quote: bid {bid} ask {ask}"));
    }
    Ok(TradeRecord { timestamp, price, bid, ask })
}

/// Write trades in the same format `parse_trades` reads; the pair is a
/// lossless round trip on millisecond timestamps.
pub fn write_trades<W: Write>(w: W, trades: &[TradeRecord], format: &TradeFormat) -> Result<()> {
    let mut w = BufWriter::new(w);
    let d = format.delimiter as char;
    writeln!(
        w,
        "{}{d}{}{d}{}{d}{}",
        format.timestamp_column, format.price_column, format.bid_column, format.ask_column
    )?;
    for tr in trades {
        writeln!(
            w,
            "{}{d}{}{d}{}{d}{}",
            tr.timestamp.format(&format.timestamp_format),
            tr.price,
            tr.bid,
            tr.ask
        )?;
    }
    w.flush()?;
    Ok(())
}
