//! Trading costs implied by the zone width, and the volatility link.
//!
//! With tick `alpha` and friction `eta`, a market order taking the touch
//! pays `alpha / 2 - eta * alpha` against the efficient price, and a
//! round trip of limit orders earns the implicit spread `2 * eta * alpha`.
//! Across stocks the product `eta * alpha` lines up with
//! `c * sigma / sqrt(M)` (daily volatility over the square root of the
//! daily trade count), with `c` of order one.

use chrono::{NaiveDateTime, TimeDelta};

use crate::ingest::TradeRecord;

/// Cost of crossing the spread with a market order, per share, in
/// currency, measured against the efficient price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketOrderCost {
    pub value: f64,
    /// Taking liquidity costs more than posting it by enough that
    /// quoted spreads wider than one tick should appear.
    pub spread_widening_expected: bool,
}

pub fn market_order_cost(alpha: f64, eta: f64) -> MarketOrderCost {
    MarketOrderCost {
        value: alpha / 2.0 - eta * alpha,
        spread_widening_expected: eta > 0.5,
    }
}

/// Average gain of a completed limit-order round trip, per share.
pub fn implicit_spread(alpha: f64, eta: f64) -> f64 {
    2.0 * eta * alpha
}

/// Market-maker edge per share: half the quoted spread minus the
/// adverse-selection term `c * sigma / sqrt(m)`.
pub fn mm_edge(spread_ticks: f64, alpha: f64, c: f64, sigma: f64, m: u64) -> f64 {
    spread_ticks * alpha / 2.0 - c * sigma / (m as f64).sqrt()
}

/// Both cost views of one (tick, eta) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub tick: f64,
    pub eta: f64,
    pub market_order: MarketOrderCost,
    pub implicit_spread: f64,
}

pub fn cost_report(tick: f64, eta: f64) -> CostReport {
    CostReport {
        tick,
        eta,
        market_order: market_order_cost(tick, eta),
        implicit_spread: implicit_spread(tick, eta),
    }
}

/// Realized volatility of one day of trades.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolStat {
    /// Square root of the sum of squared price increments over the grid.
    pub sigma: f64,
    /// Trades that day.
    pub m: u64,
}

/// Realized volatility over a calendar grid anchored at midnight.
///
/// The price is sampled at every grid point inside the traded span by
/// carrying the last trade at or before the point, and increments are
/// plain price differences. Returns `None` with fewer than two samples.
pub fn realized_vol(trades: &[TradeRecord], grid: TimeDelta) -> Option<VolStat> {
    assert!(grid > TimeDelta::zero(), "grid step must be positive");
    if trades.is_empty() {
        return None;
    }
    let first = trades.first().unwrap().timestamp;
    let last = trades.last().unwrap().timestamp;
    let midnight = first.date().and_hms_opt(0, 0, 0).unwrap();

    let step = grid.num_milliseconds();
    let offset_ms = (first - midnight).num_milliseconds();
    let mut k = offset_ms / step;
    if k * step < offset_ms {
        k += 1;
    }

    let mut samples: Vec<f64> = Vec::new();
    let mut idx = 0usize;
    loop {
        let t: NaiveDateTime = midnight + TimeDelta::milliseconds(k * step);
        if t > last {
            break;
        }
        while idx + 1 < trades.len() && trades[idx + 1].timestamp <= t {
            idx += 1;
        }
        samples.push(trades[idx].price);
        k += 1;
    }

    if samples.len() < 2 {
        return None;
    }
    let ss: f64 = samples.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum();
    Some(VolStat { sigma: ss.sqrt(), m: trades.len() as u64 })
}

/// Through-origin least-squares slope of `y` on `x`.
///
/// Points are `(sigma / sqrt(m), eta * alpha)` pairs across stocks;
/// the slope is the proportionality constant `c`. Returns `None`
/// when no point has a nonzero `x`.
pub fn fit_c(points: &[(f64, f64)]) -> Option<f64> {
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    Some(sxy / sxx)
}
