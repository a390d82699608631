//! Tick-aggressiveness estimation from transaction-price jumps.
//!
//! The parameter eta measures how deep inside a tick the efficient price
//! must travel before the transaction price follows. It is estimated from
//! the mix of continuations (a one-tick jump in the same direction as the
//! previous one) and alternations (opposite direction):
//!
//! ```text
//! eta_hat = n_continuations / (2 * n_alternations)
//! ```
//!
//! Estimation is per day; a period estimate is the mean of daily values
//! with a dispersion band from the 25% and 75% daily quantiles.

use chrono::{NaiveDate, TimeDelta};

use crate::classify;
use crate::costs;
use crate::ingest::{ticks_equal, TickTable, TradeRecord};

/// Relative tolerance for a price change to count as a whole number of ticks.
pub const GRID_TOL: f64 = 1e-6;

/// Signed transaction-price jumps of one day, in ticks.
///
/// Equal consecutive prices are collapsed first, so 0 never arises from
/// data; a 0 entry marks a change that was off the tick grid and only
/// resets pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpSequence {
    pub sizes: Vec<i64>,
}

/// Collapse equal consecutive prices and express each change in ticks.
///
/// A change within [`GRID_TOL`] (relative) of a whole tick count keeps that
/// count; anything else becomes the off-grid marker 0.
pub fn extract_jumps(prices: &[f64], tick: f64) -> JumpSequence {
    assert!(tick > 0.0, "tick must be positive");
    let mut sizes = Vec::new();
    let mut prev: Option<f64> = None;
    for &p in prices {
        if let Some(q) = prev {
            if p != q {
                let steps = (p - q) / tick;
                let rounded = steps.round();
                if rounded != 0.0 && (steps - rounded).abs() <= GRID_TOL * steps.abs().max(1.0) {
                    sizes.push(rounded as i64);
                } else {
                    sizes.push(0);
                }
                prev = Some(p);
            }
        } else {
            prev = Some(p);
        }
    }
    JumpSequence { sizes }
}

/// Count (continuations, alternations) over consecutive one-tick jumps.
///
/// Jumps of two or more ticks (and off-grid changes) are never counted and
/// break the pairing: the jump after one has no predecessor.
pub fn count_transitions(jumps: &JumpSequence) -> (u64, u64) {
    let mut n_cont = 0u64;
    let mut n_alt = 0u64;
    let mut prev: Option<i64> = None;
    for &size in &jumps.sizes {
        if size.abs() == 1 {
            if let Some(p) = prev {
                if p == size {
                    n_cont += 1;
                } else {
                    n_alt += 1;
                }
            }
            prev = Some(size);
        } else {
            prev = None;
        }
    }
    (n_cont, n_alt)
}

/// Daily estimate; undefined until at least one alternation is observed.
pub fn eta_day(n_continuations: u64, n_alternations: u64) -> Option<f64> {
    if n_alternations == 0 {
        return None;
    }
    Some(n_continuations as f64 / (2.0 * n_alternations as f64))
}

/// Period-level estimate: mean of daily values with a 25%-75% daily band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaEstimate {
    pub mean: f64,
    pub q25: f64,
    pub q75: f64,
    pub n_days: usize,
}

/// Aggregate daily estimates into a period estimate.
pub fn eta_period(daily: &[f64]) -> Option<EtaEstimate> {
    if daily.is_empty() {
        return None;
    }
    let mut sorted = daily.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    Some(EtaEstimate {
        mean,
        q25: quantile(&sorted, 0.25),
        q75: quantile(&sorted, 0.75),
        n_days: sorted.len(),
    })
}

/// Linear-interpolation quantile (the "type 7" convention) of a sorted,
/// non-empty sample: index h = (n - 1) p, interpolated between neighbors.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    assert!((0.0..=1.0).contains(&p), "quantile level outside [0, 1]");
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

/// Per-day summary row feeding selection, estimation, and reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct DayStats {
    pub date: NaiveDate,
    /// The day's tick value when the day traded on exactly one.
    pub tick: Option<f64>,
    /// Distinct tick values observed across the day's trades, ascending.
    pub observed_ticks: Vec<f64>,
    pub n_trades: usize,
    pub n_continuations: u64,
    pub n_alternations: u64,
    pub eta: Option<f64>,
    pub avg_spread_ticks: Option<f64>,
    /// Realized daily volatility of the traded price, in currency.
    pub sigma: Option<f64>,
}

/// Build the summary row for one day of trades (already session-filtered,
/// in timestamp order).
pub fn day_stats(
    date: NaiveDate,
    trades: &[TradeRecord],
    table: &TickTable,
    rv_grid: TimeDelta,
) -> DayStats {
    let mut observed: Vec<f64> = Vec::new();
    for tr in trades {
        let t = table.tick_value(tr.price);
        if !observed.iter().any(|&o| ticks_equal(o, t)) {
            observed.push(t);
        }
    }
    observed.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tick = if observed.len() == 1 { Some(observed[0]) } else { None };

    let (n_cont, n_alt, eta, spread) = match tick {
        Some(alpha) => {
            let prices: Vec<f64> = trades.iter().map(|t| t.price).collect();
            let jumps = extract_jumps(&prices, alpha);
            let (nc, na) = count_transitions(&jumps);
            (nc, na, eta_day(nc, na), classify::avg_spread_ticks(trades, alpha))
        }
        None => (0, 0, None, None),
    };

    DayStats {
        date,
        tick,
        observed_ticks: observed,
        n_trades: trades.len(),
        n_continuations: n_cont,
        n_alternations: n_alt,
        eta,
        avg_spread_ticks: spread,
        sigma: costs::realized_vol(trades, rv_grid).map(|v| v.sigma),
    }
}
