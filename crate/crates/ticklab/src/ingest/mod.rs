//! Trade-file ingestion and day preparation.
//!
//! - [`TradeRecord`]: one transaction with its prevailing quote
//! - [`parse_trades`]: delimiter-separated files with a configurable column map
//! - [`SessionSpec`] / [`session_filter`]: intraday session windows with
//!   open/close trimming
//! - [`TickTable`]: price-banded tick values as a step function
//! - [`select_days`]: drop days that traded on multiple or off-reference ticks

mod parse;

pub use parse::{parse_trades, parse_trades_path, write_trades, ParseOutcome, RowError, TradeFormat};

use chrono::{NaiveDate, NaiveDateTime, NaiveTime, TimeDelta};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::DayStats;

/// Relative tolerance when comparing tick values for equality.
/// Tick values are short decimals; this absorbs binary representation noise.
pub const TICK_EQ_TOL: f64 = 1e-9;

/// One transaction: timestamp, traded price, and the quote in force just
/// before the trade.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeRecord {
    pub timestamp: NaiveDateTime,
    pub price: f64,
    pub bid: f64,
    pub ask: f64,
}

impl TradeRecord {
    pub fn date(&self) -> NaiveDate {
        self.timestamp.date()
    }
}

/// Intraday trading sessions with head/tail trims.
///
/// The trim removes warm-up at the open of the first session and wind-down
/// at the close of the last session; interior session boundaries are kept
/// as-is. Each kept window is closed at its start and open at its end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionSpec {
    sessions: Vec<(NaiveTime, NaiveTime)>,
    trim_head: TimeDelta,
    trim_tail: TimeDelta,
}

impl SessionSpec {
    pub fn new(
        sessions: Vec<(NaiveTime, NaiveTime)>,
        trim_head: TimeDelta,
        trim_tail: TimeDelta,
    ) -> Result<Self> {
        if sessions.is_empty() {
            return Err(Error::Config("session spec needs at least one session".into()));
        }
        if trim_head < TimeDelta::zero() || trim_tail < TimeDelta::zero() {
            return Err(Error::Config("session trims must be non-negative".into()));
        }
        let mut prev_close: Option<NaiveTime> = None;
        for &(open, close) in &sessions {
            if open >= close {
                return Err(Error::Config(format!("session open {open} not before close {close}")));
            }
            if let Some(pc) = prev_close {
                if open < pc {
                    return Err(Error::Config("sessions overlap or are out of order".into()));
                }
            }
            prev_close = Some(close);
        }
        let spec = SessionSpec { sessions, trim_head, trim_tail };
        for (start, end) in spec.kept_windows() {
            if start >= end {
                return Err(Error::Config("trims leave an empty session window".into()));
            }
        }
        Ok(spec)
    }

    pub fn sessions(&self) -> &[(NaiveTime, NaiveTime)] {
        &self.sessions
    }

    /// Session windows that survive the trims, in time order.
    pub fn kept_windows(&self) -> Vec<(NaiveTime, NaiveTime)> {
        let last = self.sessions.len() - 1;
        self.sessions
            .iter()
            .enumerate()
            .map(|(i, &(open, close))| {
                let start = if i == 0 { open + self.trim_head } else { open };
                let end = if i == last { close - self.trim_tail } else { close };
                (start, end)
            })
            .collect()
    }

    /// Whether a time of day falls in a kept window ([start, end)).
    pub fn contains(&self, t: NaiveTime) -> bool {
        self.kept_windows().iter().any(|&(start, end)| t >= start && t < end)
    }
}

/// Keep only trades inside the kept windows of `spec`.
pub fn session_filter(trades: &[TradeRecord], spec: &SessionSpec) -> Vec<TradeRecord> {
    let windows = spec.kept_windows();
    trades
        .iter()
        .filter(|tr| {
            let t = tr.timestamp.time();
            windows.iter().any(|&(start, end)| t >= start && t < end)
        })
        .cloned()
        .collect()
}

/// Inclusive date window naming one phase of a tick regime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseWindow {
    pub label: String,
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl PhaseWindow {
    pub fn new(label: impl Into<String>, start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if start > end {
            return Err(Error::Config("phase window start after end".into()));
        }
        Ok(PhaseWindow { label: label.into(), start, end })
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        date >= self.start && date <= self.end
    }
}

/// Tick value as a step function of price.
///
/// `bands` holds (upper_bound, tick) pairs with strictly increasing bounds;
/// a price takes the tick of the first band whose upper bound strictly
/// exceeds it, and `top_tick` applies above the last bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TickTable {
    bands: Vec<(f64, f64)>,
    top_tick: f64,
}

impl TickTable {
    pub fn new(bands: Vec<(f64, f64)>, top_tick: f64) -> Result<Self> {
        let mut prev_upper = 0.0;
        let mut prev_tick = 0.0;
        for &(upper, tick) in &bands {
            if upper <= prev_upper {
                return Err(Error::Config("tick band bounds must be strictly increasing".into()));
            }
            if tick <= 0.0 || !tick.is_finite() {
                return Err(Error::Config("tick values must be positive and finite".into()));
            }
            if tick < prev_tick {
                return Err(Error::Config("tick values must be non-decreasing in price".into()));
            }
            prev_upper = upper;
            prev_tick = tick;
        }
        if top_tick < prev_tick || top_tick <= 0.0 || !top_tick.is_finite() {
            return Err(Error::Config("top tick must be positive and not below the last band".into()));
        }
        Ok(TickTable { bands, top_tick })
    }

    /// Uniform table: one tick for every price.
    pub fn uniform(tick: f64) -> Result<Self> {
        TickTable::new(Vec::new(), tick)
    }

    /// Tick value in force at `price`.
    pub fn tick_value(&self, price: f64) -> f64 {
        for &(upper, tick) in &self.bands {
            if price < upper {
                return tick;
            }
        }
        self.top_tick
    }

    pub fn bands(&self) -> &[(f64, f64)] {
        &self.bands
    }

    pub fn top_tick(&self) -> f64 {
        self.top_tick
    }
}

pub fn ticks_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= TICK_EQ_TOL * a.abs().max(b.abs())
}

/// Day lists retained for a before/after period pair.
#[derive(Debug, Clone)]
pub struct DaySelection {
    pub a: Vec<DayStats>,
    pub b: Vec<DayStats>,
    /// True when both retained counts exceed the minimum.
    pub qualified: bool,
}

/// Reference ticks for a period pair: the tick of the last single-tick day
/// before the change and of the first single-tick day after it.
pub fn reference_ticks(days_a: &[DayStats], days_b: &[DayStats]) -> Option<(f64, f64)> {
    let a = days_a.iter().rev().find_map(|d| d.tick)?;
    let b = days_b.iter().find_map(|d| d.tick)?;
    Some((a, b))
}

/// Retain days that traded on exactly one tick value equal to the period's
/// reference tick. The pair qualifies only if both retained counts exceed
/// `min_days`.
pub fn select_days(
    days_a: &[DayStats],
    days_b: &[DayStats],
    refs: (f64, f64),
    min_days: usize,
) -> DaySelection {
    let keep = |days: &[DayStats], reference: f64| -> Vec<DayStats> {
        days.iter()
            .filter(|d| matches!(d.tick, Some(t) if ticks_equal(t, reference)))
            .cloned()
            .collect()
    };
    let a = keep(days_a, refs.0);
    let b = keep(days_b, refs.1);
    let qualified = a.len() > min_days && b.len() > min_days;
    DaySelection { a, b, qualified }
}
