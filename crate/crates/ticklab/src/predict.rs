//! Forecasting eta across a tick change.
//!
//! Near the cost-balance point, implicit spread scales with the square
//! root of the tick, which pins how eta moves when the tick moves:
//!
//! ```text
//! eta_new = (eta_old + 0.1) * sqrt(alpha_old / alpha_new) - 0.1
//! ```
//!
//! Inverting at the balance value 0.5 gives the tick that would balance
//! costs: alpha* = ((eta_old + 0.1) / 0.6)^2 * alpha_old.

use serde::{Deserialize, Serialize};

use crate::classify::{BalanceLabel, RegimeLabel, Thresholds};
use crate::error::{Error, Result};
use crate::estimator::EtaEstimate;

/// A tick-value change, `from` the old tick `to` the new one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TickChange {
    pub from: f64,
    pub to: f64,
}

impl TickChange {
    pub fn new(from: f64, to: f64) -> Result<Self> {
        if !(from > 0.0 && from.is_finite() && to > 0.0 && to.is_finite()) {
            return Err(Error::Config(format!("tick change needs positive ticks, got {from} -> {to}")));
        }
        Ok(TickChange { from, to })
    }

    pub fn ratio(&self) -> f64 {
        self.from / self.to
    }
}

impl std::fmt::Display for TickChange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

/// Point forecast of eta after the tick change.
pub fn predict_eta(eta0: f64, change: TickChange) -> f64 {
    (eta0 + 0.1) * change.ratio().sqrt() - 0.1
}

/// Tick value that would put the stock at the cost-balance point
/// (where the forecast eta equals 0.5).
pub fn optimal_tick(eta0: f64, alpha0: f64) -> f64 {
    let k = (eta0 + 0.1) / 0.6;
    k * k * alpha0
}

/// Forecast regime of the post-change tick from the forecast eta.
pub fn classify_prediction(eta_p: f64) -> RegimeLabel {
    classify_prediction_with(eta_p, &Thresholds::default())
}

pub fn classify_prediction_with(eta_p: f64, th: &Thresholds) -> RegimeLabel {
    if eta_p >= th.forecast_small_min_eta {
        RegimeLabel::SmallTick
    } else if eta_p < th.forecast_large_max_eta {
        RegimeLabel::LargeTick
    } else {
        RegimeLabel::Ambiguous
    }
}

/// Forecast balance: a forecast small tick is balanced by construction,
/// otherwise the forecast eta must clear the balance threshold.
pub fn balance_forecast(eta_p: f64, regime_p: RegimeLabel) -> BalanceLabel {
    balance_forecast_with(eta_p, regime_p, &Thresholds::default())
}

pub fn balance_forecast_with(eta_p: f64, regime_p: RegimeLabel, th: &Thresholds) -> BalanceLabel {
    if regime_p == RegimeLabel::SmallTick || eta_p >= th.balanced_min_eta {
        BalanceLabel::Balanced
    } else {
        BalanceLabel::MarketMakerFavorable
    }
}

/// Forecast with a dispersion band mapped from the daily 25%-75% band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    /// Point forecast, clamped into `ci` when it falls outside.
    pub eta: f64,
    /// Forecasts of the 25% and 75% daily quantiles.
    pub ci: (f64, f64),
    pub clamped: bool,
    /// Regime of the unclamped point forecast.
    pub regime: RegimeLabel,
    pub balance: BalanceLabel,
}

/// Map a period estimate through the tick change.
///
/// The band comes from forecasting the daily quartiles; a point forecast
/// outside the band is replaced by the nearest bound (skewed daily
/// distributions put the mean outside the quartiles now and then).
/// The regime is judged on the unclamped point, the balance on the
/// reported (clamped) one.
pub fn predict_with_ci(est: &EtaEstimate, change: TickChange) -> Prediction {
    predict_with_ci_thresholds(est, change, &Thresholds::default())
}

pub fn predict_with_ci_thresholds(est: &EtaEstimate, change: TickChange, th: &Thresholds) -> Prediction {
    let raw = predict_eta(est.mean, change);
    let ci = (predict_eta(est.q25, change), predict_eta(est.q75, change));
    let eta = raw.clamp(ci.0, ci.1);
    let clamped = eta != raw;
    let regime = classify_prediction_with(raw, th);
    let balance = balance_forecast_with(eta, regime, th);
    Prediction { eta, ci, clamped, regime, balance }
}
