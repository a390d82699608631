//! Tick-regime and cost-balance classification.
//!
//! A tick is "large" when the spread is pinned to it (average spread at
//! most 1.5 ticks) and "small" when quotes routinely sit wider (above
//! 1.6); the band between is left ambiguous. Under a large tick, costs
//! between market and limit orders balance once eta reaches 0.4.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::TradeRecord;

/// Spread-based tick regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeLabel {
    #[serde(rename = "large-tick")]
    LargeTick,
    #[serde(rename = "small-tick")]
    SmallTick,
    #[serde(rename = "ambiguous")]
    Ambiguous,
}

impl std::fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegimeLabel::LargeTick => "large-tick",
            RegimeLabel::SmallTick => "small-tick",
            RegimeLabel::Ambiguous => "ambiguous",
        })
    }
}

/// Who the tick favors: nobody in particular, or the market maker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BalanceLabel {
    #[serde(rename = "balanced")]
    Balanced,
    #[serde(rename = "maker-favorable")]
    MarketMakerFavorable,
}

impl std::fmt::Display for BalanceLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BalanceLabel::Balanced => "balanced",
            BalanceLabel::MarketMakerFavorable => "maker-favorable",
        })
    }
}

/// Classification cut points. The defaults are the study values; override
/// through configuration when exploring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Average spread (ticks) at or below which the tick is large.
    pub large_tick_max_spread: f64,
    /// Average spread (ticks) above which the tick is small.
    pub small_tick_min_spread: f64,
    /// Eta at or above which a large-tick stock is balanced.
    pub balanced_min_eta: f64,
    /// Forecast eta below which the post-change tick stays large.
    pub forecast_large_max_eta: f64,
    /// Forecast eta at or above which the post-change tick turns small.
    pub forecast_small_min_eta: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            large_tick_max_spread: 1.5,
            small_tick_min_spread: 1.6,
            balanced_min_eta: 0.4,
            forecast_large_max_eta: 0.5,
            forecast_small_min_eta: 0.55,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        if self.large_tick_max_spread > self.small_tick_min_spread {
            return Err(Error::Config("large-tick spread bound above small-tick bound".into()));
        }
        if self.forecast_large_max_eta > self.forecast_small_min_eta {
            return Err(Error::Config("forecast large-tick bound above small-tick bound".into()));
        }
        Ok(())
    }
}

/// Period-level spread statistic: mean of daily average spreads, in ticks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadStat {
    pub mean_ticks: f64,
    pub n_days: usize,
}

/// Mean quoted spread in ticks over a slice of trades, taken right before
/// each transaction. None when there are no trades.
pub fn avg_spread_ticks(trades: &[TradeRecord], tick: f64) -> Option<f64> {
    assert!(tick > 0.0, "tick must be positive");
    if trades.is_empty() {
        return None;
    }
    let sum: f64 = trades.iter().map(|t| (t.ask - t.bid) / tick).sum();
    Some(sum / trades.len() as f64)
}

/// Aggregate daily average spreads into the period statistic.
pub fn spread_period(daily: &[f64]) -> Option<SpreadStat> {
    if daily.is_empty() {
        return None;
    }
    Some(SpreadStat {
        mean_ticks: daily.iter().sum::<f64>() / daily.len() as f64,
        n_days: daily.len(),
    })
}

pub fn classify_regime(avg_spread_ticks: f64) -> RegimeLabel {
    classify_regime_with(avg_spread_ticks, &Thresholds::default())
}

pub fn classify_regime_with(avg_spread_ticks: f64, th: &Thresholds) -> RegimeLabel {
    if avg_spread_ticks <= th.large_tick_max_spread {
        RegimeLabel::LargeTick
    } else if avg_spread_ticks > th.small_tick_min_spread {
        RegimeLabel::SmallTick
    } else {
        RegimeLabel::Ambiguous
    }
}

/// Balance from the realized regime and eta. A small tick is balanced by
/// construction; otherwise eta must clear the threshold.
pub fn classify_balance(regime: RegimeLabel, eta: f64) -> BalanceLabel {
    classify_balance_with(regime, eta, &Thresholds::default())
}

pub fn classify_balance_with(regime: RegimeLabel, eta: f64, th: &Thresholds) -> BalanceLabel {
    match regime {
        RegimeLabel::SmallTick => BalanceLabel::Balanced,
        RegimeLabel::LargeTick | RegimeLabel::Ambiguous => {
            if eta >= th.balanced_min_eta {
                BalanceLabel::Balanced
            } else {
                BalanceLabel::MarketMakerFavorable
            }
        }
    }
}

/// A tick is suitable when it is large and costs are balanced.
pub fn suitable_tick(regime: RegimeLabel, balance: BalanceLabel) -> bool {
    regime == RegimeLabel::LargeTick && balance == BalanceLabel::Balanced
}
