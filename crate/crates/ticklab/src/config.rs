//! Study configuration: sessions, phase calendar, tick schedules,
//! classification thresholds, input format, and selection knobs.
//!
//! Everything defaults to the bundled 2014 TSE pilot setup; a TOML file
//! overrides any subset. Example:
//!
//! ```toml
//! [sessions]
//! windows = [["09:00", "11:30"], ["12:30", "15:00"]]
//! trim_head_minutes = 60
//! trim_tail_minutes = 60
//!
//! [ticks]
//! preset = "tse-pilot"
//!
//! [thresholds]
//! balanced_min_eta = 0.45
//!
//! [selection]
//! min_days = 10
//!
//! [volatility]
//! grid_seconds = 300
//!
//! [format]
//! delimiter = ";"
//! price_column = "px"
//! ```
//!
//! Custom phases name their table, either one of the preset's
//! (`phase0`, `phase1`, `phase2`) or one defined inline:
//!
//! ```toml
//! [[ticks.tables]]
//! name = "flat"
//! bands = [[1000.0, 0.1]]
//! top_tick = 1.0
//!
//! [[phases]]
//! label = "before"
//! start = "2020-01-01"
//! end = "2020-06-30"
//! table = "flat"
//! ```

use std::collections::HashMap;
use std::path::Path;

use chrono::{NaiveDate, NaiveTime, TimeDelta};
use serde::Deserialize;

use crate::classify::Thresholds;
use crate::error::{Error, Result};
use crate::ingest::{PhaseWindow, SessionSpec, TickTable, TradeFormat};
use crate::tse;

#[derive(Debug, Clone)]
pub struct Config {
    pub sessions: SessionSpec,
    /// Phases with the tick schedule in force during each.
    pub phases: Vec<(PhaseWindow, TickTable)>,
    pub thresholds: Thresholds,
    pub format: TradeFormat,
    /// Single-tick day count both phases must exceed to qualify.
    pub min_days: usize,
    /// Sampling step of the realized-volatility grid.
    pub rv_grid: TimeDelta,
}

impl Default for Config {
    fn default() -> Self {
        let phases = tse::pilot_phases().into_iter().zip(tse::phase_tables()).collect();
        Config {
            sessions: tse::trading_sessions(),
            phases,
            thresholds: Thresholds::default(),
            format: TradeFormat::default(),
            min_days: 10,
            rv_grid: TimeDelta::minutes(5),
        }
    }
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))?;
        resolve(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// The phase labelled `label`, with its table.
    pub fn phase(&self, label: &str) -> Option<(&PhaseWindow, &TickTable)> {
        self.phases.iter().find(|(p, _)| p.label == label).map(|(p, t)| (p, t))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    sessions: Option<RawSessions>,
    phases: Option<Vec<RawPhase>>,
    ticks: Option<RawTicks>,
    thresholds: Option<RawThresholds>,
    selection: Option<RawSelection>,
    volatility: Option<RawVolatility>,
    format: Option<RawFormat>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSessions {
    windows: Vec<(String, String)>,
    #[serde(default)]
    trim_head_minutes: i64,
    #[serde(default)]
    trim_tail_minutes: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhase {
    label: String,
    #[serde(deserialize_with = "de_date")]
    start: NaiveDate,
    #[serde(deserialize_with = "de_date")]
    end: NaiveDate,
    /// Table name; defaults to the phase label.
    table: Option<String>,
}

/// Accept both the bare TOML date (`2013-06-03`) and the quoted string.
fn de_date<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<NaiveDate, D::Error> {
    use serde::de::Error as _;
    let s = match toml::Value::deserialize(d)? {
        toml::Value::String(s) => s,
        toml::Value::Datetime(dt) => dt.to_string(),
        other => return Err(D::Error::custom(format!("want a date, got {other}"))),
    };
    NaiveDate::parse_from_str(&s, "%Y-%m-%d")
        .map_err(|_| D::Error::custom(format!("bad date {s:?}, want YYYY-MM-DD")))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTicks {
    /// Only "tse-pilot" is known.
    preset: Option<String>,
    #[serde(default)]
    tables: Vec<RawTable>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    name: String,
    bands: Vec<(f64, f64)>,
    top_tick: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThresholds {
    large_tick_max_spread: Option<f64>,
    small_tick_min_spread: Option<f64>,
    balanced_min_eta: Option<f64>,
    forecast_large_max_eta: Option<f64>,
    forecast_small_min_eta: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSelection {
    min_days: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVolatility {
    grid_seconds: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormat {
    delimiter: Option<String>,
    timestamp_format: Option<String>,
    timestamp_column: Option<String>,
    price_column: Option<String>,
    bid_column: Option<String>,
    ask_column: Option<String>,
    row_error_cap: Option<f64>,
}

fn parse_time(s: &str) -> Result<NaiveTime> {
    NaiveTime::parse_from_str(s, "%H:%M:%S")
        .or_else(|_| NaiveTime::parse_from_str(s, "%H:%M"))
        .map_err(|_| Error::Config(format!("bad time of day {s:?}, want HH:MM or HH:MM:SS")))
}

fn resolve(raw: RawConfig) -> Result<Config> {
    let defaults = Config::default();

    let sessions = match raw.sessions {
        None => defaults.sessions,
        Some(s) => {
            let mut windows = Vec::new();
            for (open, close) in &s.windows {
                windows.push((parse_time(open)?, parse_time(close)?));
            }
            SessionSpec::new(
                windows,
                TimeDelta::minutes(s.trim_head_minutes),
                TimeDelta::minutes(s.trim_tail_minutes),
            )?
        }
    };

    let mut tables: HashMap<String, TickTable> = HashMap::new();
    let preset = raw.ticks.as_ref().and_then(|t| t.preset.as_deref()).unwrap_or("tse-pilot");
    match preset {
        "tse-pilot" => {
            for (phase, table) in tse::pilot_phases().into_iter().zip(tse::phase_tables()) {
                tables.insert(phase.label, table);
            }
        }
        "none" => {}
        other => return Err(Error::Config(format!("unknown tick preset {other:?}"))),
    }
    if let Some(ticks) = &raw.ticks {
        for t in &ticks.tables {
            let table = TickTable::new(t.bands.clone(), t.top_tick)?;
            tables.insert(t.name.clone(), table);
        }
    }

    let phases = match raw.phases {
        None => defaults.phases,
        Some(rows) => {
            let mut out = Vec::new();
            for r in rows {
                let window = PhaseWindow::new(r.label.clone(), r.start, r.end)?;
                let table_name = r.table.as_deref().unwrap_or(&r.label);
                let table = tables
                    .get(table_name)
                    .cloned()
                    .ok_or_else(|| Error::Config(format!("phase {:?} names unknown table {table_name:?}", r.label)))?;
                out.push((window, table));
            }
            out
        }
    };
    for i in 0..phases.len() {
        for j in i + 1..phases.len() {
            let (a, b) = (&phases[i].0, &phases[j].0);
            if a.start <= b.end && b.start <= a.end {
                return Err(Error::Config(format!("phases {:?} and {:?} overlap", a.label, b.label)));
            }
        }
    }

    let thresholds = match raw.thresholds {
        None => defaults.thresholds,
        Some(t) => {
            let d = Thresholds::default();
            let merged = Thresholds {
                large_tick_max_spread: t.large_tick_max_spread.unwrap_or(d.large_tick_max_spread),
                small_tick_min_spread: t.small_tick_min_spread.unwrap_or(d.small_tick_min_spread),
                balanced_min_eta: t.balanced_min_eta.unwrap_or(d.balanced_min_eta),
                forecast_large_max_eta: t.forecast_large_max_eta.unwrap_or(d.forecast_large_max_eta),
                forecast_small_min_eta: t.forecast_small_min_eta.unwrap_or(d.forecast_small_min_eta),
            };
            merged.validate()?;
            merged
        }
    };

    let format = match raw.format {
        None => defaults.format,
        Some(f) => {
            let d = TradeFormat::default();
            let delimiter = match f.delimiter {
                None => d.delimiter,
                Some(s) if s.len() == 1 => s.as_bytes()[0],
                Some(s) => return Err(Error::Config(format!("delimiter must be one byte, got {s:?}"))),
            };
            let cap = f.row_error_cap.unwrap_or(d.row_error_cap);
            if !(0.0..=1.0).contains(&cap) {
                return Err(Error::Config(format!("row_error_cap {cap} outside [0, 1]")));
            }
            TradeFormat {
                delimiter,
                timestamp_format: f.timestamp_format.unwrap_or(d.timestamp_format),
                timestamp_column: f.timestamp_column.unwrap_or(d.timestamp_column),
                price_column: f.price_column.unwrap_or(d.price_column),
                bid_column: f.bid_column.unwrap_or(d.bid_column),
                ask_column: f.ask_column.unwrap_or(d.ask_column),
                row_error_cap: cap,
            }
        }
    };

    let min_days = raw.selection.and_then(|s| s.min_days).unwrap_or(defaults.min_days);
    let rv_grid = match raw.volatility.and_then(|v| v.grid_seconds) {
        None => defaults.rv_grid,
        Some(s) if s > 0 => TimeDelta::seconds(s),
        Some(s) => return Err(Error::Config(format!("grid_seconds must be positive, got {s}"))),
    };

    Ok(Config { sessions, phases, thresholds, format, min_days, rv_grid })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_the_pilot_setup() {
        let cfg = Config::default();
        assert_eq!(cfg.phases.len(), 3);
        assert_eq!(cfg.phases[0].0.label, "phase0");
        assert_eq!(cfg.phases[0].1.tick_value(4000.0), 5.0);
        assert_eq!(cfg.phases[1].1.tick_value(4000.0), 1.0);
        assert_eq!(cfg.phases[2].1.tick_value(4000.0), 0.5);
        assert_eq!(cfg.min_days, 10);
        assert_eq!(cfg.rv_grid, TimeDelta::minutes(5));
        assert_eq!(cfg.thresholds, Thresholds::default());
    }

    #[test]
    fn empty_toml_equals_default() {
        let cfg = Config::from_toml_str("").unwrap();
        assert_eq!(cfg.phases.len(), 3);
        assert_eq!(cfg.format.delimiter, b',');
    }

    #[test]
    fn partial_threshold_override_keeps_the_rest() {
        let cfg = Config::from_toml_str("[thresholds]\nbalanced_min_eta = 0.45\n").unwrap();
        assert_eq!(cfg.thresholds.balanced_min_eta, 0.45);
        assert_eq!(cfg.thresholds.large_tick_max_spread, 1.5);
    }

    #[test]
    fn custom_phase_with_inline_table() {
        let text = r#"
            [[ticks.tables]]
            name = "flat"
            bands = [[1000.0, 0.1]]
            top_tick = 1.0

            [[phases]]
            label = "before"
            start = "2020-01-01"
            end = "2020-06-30"
            table = "flat"

            [[phases]]
            label = "after"
            start = "2020-07-01"
            end = "2020-12-31"
            table = "flat"
        "#;
        let cfg = Config::from_toml_str(text).unwrap();
        assert_eq!(cfg.phases.len(), 2);
        assert_eq!(cfg.phases[0].1.tick_value(500.0), 0.1);
        assert_eq!(cfg.phases[0].1.tick_value(5000.0), 1.0);
        let (w, _) = cfg.phase("after").unwrap();
        assert_eq!(w.start, NaiveDate::from_ymd_opt(2020, 7, 1).unwrap());
    }

    #[test]
    fn phase_defaults_to_table_named_like_it() {
        let text = r#"
            [[phases]]
            label = "phase1"
            start = "2014-01-14"
            end = "2014-07-21"
        "#;
        let cfg = Config::from_toml_str(text).unwrap();
        assert_eq!(cfg.phases[0].1.tick_value(4000.0), 1.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Config::from_toml_str("[ticks]\npreset = \"nope\"\n").is_err());
        assert!(Config::from_toml_str("[format]\ndelimiter = \"ab\"\n").is_err());
        assert!(Config::from_toml_str("[volatility]\ngrid_seconds = 0\n").is_err());
        assert!(Config::from_toml_str("[sessions]\nwindows = [[\"9am\", \"11:30\"]]\n").is_err());
        assert!(Config::from_toml_str("[typo]\nx = 1\n").is_err());
        let overlap = r#"
            [[phases]]
            label = "phase0"
            start = "2013-06-03"
            end = "2014-01-13"
            [[phases]]
            label = "phase1"
            start = "2014-01-10"
            end = "2014-07-21"
        "#;
        assert!(Config::from_toml_str(overlap).is_err());
    }

    #[test]
    fn custom_sessions_and_format() {
        let text = r#"
            [sessions]
            windows = [["08:00", "16:00:00"]]
            trim_head_minutes = 30
            trim_tail_minutes = 30

            [format]
            delimiter = ";"
            price_column = "px"
        "#;
        let cfg = Config::from_toml_str(text).unwrap();
        let kept = cfg.sessions.kept_windows();
        assert_eq!(kept[0].0, NaiveTime::from_hms_opt(8, 30, 0).unwrap());
        assert_eq!(kept[0].1, NaiveTime::from_hms_opt(15, 30, 0).unwrap());
        assert_eq!(cfg.format.delimiter, b';');
        assert_eq!(cfg.format.price_column, "px");
        assert_eq!(cfg.format.timestamp_column, "timestamp");
    }
}
