//! Study orchestration: run the pipeline per stock across a tick change,
//! score forecasts against what happened, and render tables and plot data.

mod render;

pub use render::{eta_history, render_plot, render_reports, OutputFormat, PlotPoint};

use chrono::NaiveDate;
use serde::Serialize;

use crate::classify::{classify_balance_with, classify_regime_with, spread_period, BalanceLabel, RegimeLabel};
use crate::config::Config;
use crate::error::Result;
use crate::estimator::{day_stats, eta_period, DayStats};
use crate::ingest::{
    reference_ticks, select_days, session_filter, ticks_equal, PhaseWindow, TickTable, TradeRecord,
};
use crate::predict::{predict_with_ci_thresholds, TickChange};
use crate::tse::PanelRow;

/// How a forecast scored against the realized phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreCard {
    /// Correct label forecasts out of two (regime, balance).
    pub stars: u8,
    /// Regime comparisons involving an ambiguous label, scored correct.
    pub ambiguous_stars: u8,
    /// |forecast eta - realized eta| / realized eta, when defined.
    pub relative_error: Option<f64>,
}

/// Score one forecast. A label match earns a star; a regime comparison
/// where either side is ambiguous earns a bracketed star instead.
pub fn score(
    regime_p: RegimeLabel,
    balance_p: BalanceLabel,
    regime_real: RegimeLabel,
    balance_real: BalanceLabel,
    eta_p: f64,
    eta_real: f64,
) -> ScoreCard {
    let mut stars = 0;
    let mut ambiguous_stars = 0;
    if regime_p == regime_real {
        stars += 1;
    } else if regime_p == RegimeLabel::Ambiguous || regime_real == RegimeLabel::Ambiguous {
        ambiguous_stars += 1;
    }
    if balance_p == balance_real {
        stars += 1;
    }
    let relative_error = (eta_real > 0.0).then(|| (eta_p - eta_real).abs() / eta_real);
    ScoreCard { stars, ambiguous_stars, relative_error }
}

/// Mean relative error over the cards that have one defined.
pub fn aggregate_error<'a>(cards: impl IntoIterator<Item = &'a ScoreCard>) -> Option<f64> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for c in cards {
        if let Some(e) = c.relative_error {
            sum += e;
            n += 1;
        }
    }
    (n > 0).then(|| sum / n as f64)
}

/// One stock's evaluated line: both phases plus the forecast.
#[derive(Debug, Clone, Serialize)]
pub struct StockRow {
    pub name: String,
    pub spread_before: f64,
    pub eta_before: f64,
    pub spread_after: f64,
    pub eta_after: f64,
    pub regime_after: RegimeLabel,
    pub balance_after: BalanceLabel,
    pub eta_predicted: f64,
    pub ci: (f64, f64),
    pub clamped: bool,
    pub regime_predicted: RegimeLabel,
    pub balance_predicted: BalanceLabel,
    /// Retained single-tick day counts (before, after).
    pub days_used: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalOutcome {
    pub row: StockRow,
    pub score: ScoreCard,
}

/// Per-stock result of a phase-pair evaluation.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum StockReport {
    Evaluated(EvalOutcome),
    Disqualified { name: String, reason: String },
}

impl StockReport {
    pub fn outcome(&self) -> Option<&EvalOutcome> {
        match self {
            StockReport::Evaluated(o) => Some(o),
            StockReport::Disqualified { .. } => None,
        }
    }
}

/// A stock's raw trades covering both phases of a pair.
#[derive(Debug, Clone)]
pub struct StockData {
    pub name: String,
    pub trades: Vec<TradeRecord>,
}

fn split_days(trades: &[TradeRecord]) -> Vec<(NaiveDate, &[TradeRecord])> {
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 1..=trades.len() {
        if i == trades.len() || trades[i].date() != trades[start].date() {
            out.push((trades[start].date(), &trades[start..i]));
            start = i;
        }
    }
    out
}

fn phase_day_stats(
    days: &[(NaiveDate, &[TradeRecord])],
    window: &PhaseWindow,
    table: &TickTable,
    cfg: &Config,
) -> Vec<DayStats> {
    days.iter()
        .filter(|(date, _)| window.contains(*date))
        .map(|(date, trades)| day_stats(*date, trades, table, cfg.rv_grid))
        .collect()
}

fn disqualify(name: &str, reason: impl Into<String>) -> StockReport {
    StockReport::Disqualified { name: name.to_string(), reason: reason.into() }
}

/// Run the full pipeline for one stock across one tick change:
/// session-filter, split into days, anchor the reference ticks, keep
/// single-tick days, estimate both phases, forecast from the before
/// phase, classify the after phase, and score.
pub fn evaluate_stock(
    name: &str,
    trades: &[TradeRecord],
    phase_a: &PhaseWindow,
    table_a: &TickTable,
    phase_b: &PhaseWindow,
    table_b: &TickTable,
    cfg: &Config,
) -> Result<StockReport> {
    let kept = session_filter(trades, &cfg.sessions);
    let by_day = split_days(&kept);
    let days_a = phase_day_stats(&by_day, phase_a, table_a, cfg);
    let days_b = phase_day_stats(&by_day, phase_b, table_b, cfg);

    let Some(refs) = reference_ticks(&days_a, &days_b) else {
        return Ok(disqualify(name, "no single-tick day to anchor the reference tick"));
    };
    if ticks_equal(refs.0, refs.1) {
        return Ok(disqualify(name, "tick value unchanged between the phases"));
    }
    let sel = select_days(&days_a, &days_b, refs, cfg.min_days);
    if !sel.qualified {
        return Ok(disqualify(
            name,
            format!(
                "too few single-tick days at the reference tick ({} before, {} after, need more than {})",
                sel.a.len(),
                sel.b.len(),
                cfg.min_days
            ),
        ));
    }

    let etas_a: Vec<f64> = sel.a.iter().filter_map(|d| d.eta).collect();
    let etas_b: Vec<f64> = sel.b.iter().filter_map(|d| d.eta).collect();
    let spreads_a: Vec<f64> = sel.a.iter().filter_map(|d| d.avg_spread_ticks).collect();
    let spreads_b: Vec<f64> = sel.b.iter().filter_map(|d| d.avg_spread_ticks).collect();
    let (Some(est_a), Some(est_b)) = (eta_period(&etas_a), eta_period(&etas_b)) else {
        return Ok(disqualify(name, "no day with an eta estimate in one of the phases"));
    };
    let (Some(sp_a), Some(sp_b)) = (spread_period(&spreads_a), spread_period(&spreads_b)) else {
        return Ok(disqualify(name, "no day with a spread estimate in one of the phases"));
    };

    let th = &cfg.thresholds;
    let regime_a = classify_regime_with(sp_a.mean_ticks, th);
    if regime_a != RegimeLabel::LargeTick {
        return Ok(disqualify(name, format!("{regime_a} in the before phase, need large-tick")));
    }

    let pred = predict_with_ci_thresholds(&est_a, TickChange::new(refs.0, refs.1)?, th);
    let regime_b = classify_regime_with(sp_b.mean_ticks, th);
    let balance_b = classify_balance_with(regime_b, est_b.mean, th);
    let card = score(pred.regime, pred.balance, regime_b, balance_b, pred.eta, est_b.mean);

    Ok(StockReport::Evaluated(EvalOutcome {
        row: StockRow {
            name: name.to_string(),
            spread_before: sp_a.mean_ticks,
            eta_before: est_a.mean,
            spread_after: sp_b.mean_ticks,
            eta_after: est_b.mean,
            regime_after: regime_b,
            balance_after: balance_b,
            eta_predicted: pred.eta,
            ci: pred.ci,
            clamped: pred.clamped,
            regime_predicted: pred.regime,
            balance_predicted: pred.balance,
            days_used: (sel.a.len(), sel.b.len()),
        },
        score: card,
    }))
}

/// Evaluate every stock of a data set across one phase pair.
pub fn evaluate_phase_pair(
    stocks: &[StockData],
    phase_a: &PhaseWindow,
    table_a: &TickTable,
    phase_b: &PhaseWindow,
    table_b: &TickTable,
    cfg: &Config,
) -> Result<Vec<StockReport>> {
    stocks
        .iter()
        .map(|s| evaluate_stock(&s.name, &s.trades, phase_a, table_a, phase_b, table_b, cfg))
        .collect()
}

/// Rebuild evaluated outcomes from a frozen reference panel, rescoring
/// its printed labels and values.
pub fn from_reference(panel: &[PanelRow]) -> Vec<EvalOutcome> {
    panel
        .iter()
        .map(|r| {
            let card = score(
                r.regime_predicted,
                r.balance_predicted,
                r.regime_after,
                r.balance_after,
                r.eta_predicted,
                r.eta_after,
            );
            EvalOutcome {
                row: StockRow {
                    name: r.name.to_string(),
                    spread_before: r.spread_before,
                    eta_before: r.eta_before,
                    spread_after: r.spread_after,
                    eta_after: r.eta_after,
                    regime_after: r.regime_after,
                    balance_after: r.balance_after,
                    eta_predicted: r.eta_predicted,
                    ci: r.ci,
                    clamped: r.eta_predicted <= r.ci.0 || r.eta_predicted >= r.ci.1,
                    regime_predicted: r.regime_predicted,
                    balance_predicted: r.balance_predicted,
                    days_used: (0, 0),
                },
                score: card,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::TickTable;
    use crate::sim::{simulate, SimConfig};
    use crate::tse;
    use chrono::NaiveDate;
    use BalanceLabel::{Balanced as BAL, MarketMakerFavorable as MMF};
    use RegimeLabel::{Ambiguous as AMB, LargeTick as LT, SmallTick as ST};

    #[test]
    fn star_patterns_match_hand_scores() {
        assert_eq!(score(LT, MMF, LT, MMF, 0.26, 0.23).stars, 2);
        // forecast large vs realized ambiguous, balance right
        let c = score(LT, BAL, AMB, BAL, 0.49, 0.51);
        assert_eq!((c.stars, c.ambiguous_stars), (1, 1));
        // forecast ambiguous vs realized small, balance right
        let c = score(AMB, BAL, ST, BAL, 0.50, 0.81);
        assert_eq!((c.stars, c.ambiguous_stars), (1, 1));
        // both wrong, nothing ambiguous
        let c = score(LT, MMF, ST, BAL, 0.36, 0.51);
        assert_eq!((c.stars, c.ambiguous_stars), (0, 0));
        // ambiguous forecast, wrong balance
        let c = score(LT, MMF, AMB, BAL, 0.36, 0.43);
        assert_eq!((c.stars, c.ambiguous_stars), (0, 1));
    }

    #[test]
    fn relative_error_from_printed_pair() {
        let c = score(LT, MMF, LT, MMF, 0.26, 0.23);
        assert!((c.relative_error.unwrap() - 0.03 / 0.23).abs() < 1e-12);
        assert_eq!(score(LT, MMF, LT, MMF, 0.26, 0.0).relative_error, None);
    }

    #[test]
    fn aggregate_is_plain_mean() {
        let cards: Vec<ScoreCard> = [0.1, 0.2, 0.3]
            .iter()
            .map(|&e| ScoreCard { stars: 0, ambiguous_stars: 0, relative_error: Some(e) })
            .collect();
        assert!((aggregate_error(&cards).unwrap() - 0.2).abs() < 1e-12);
        assert!((aggregate_error(&cards[..1]).unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(aggregate_error(&[]), None);
    }

    #[test]
    fn reference_panels_rescore_to_their_printed_stars() {
        for panel in [tse::phase01_panel(), tse::phase12_panel()] {
            for (row, out) in panel.iter().zip(from_reference(&panel)) {
                assert_eq!(out.score.stars, row.stars, "{}", row.name);
                assert_eq!(out.score.ambiguous_stars, row.ambiguous_stars, "{}", row.name);
            }
        }
    }

    fn two_phase_setup(tick_b: f64) -> (Config, Vec<TradeRecord>) {
        let mut cfg_a = SimConfig::new(0.2, 1.0);
        cfg_a.n_changes = 6000;
        cfg_a.start_date = NaiveDate::from_ymd_opt(2020, 1, 6).unwrap();
        cfg_a.seed = 11;
        let mut cfg_b = SimConfig::new(0.3, tick_b);
        cfg_b.n_changes = 6000;
        cfg_b.start_date = NaiveDate::from_ymd_opt(2020, 3, 2).unwrap();
        cfg_b.seed = 12;
        let a = simulate(&cfg_a).unwrap();
        let b = simulate(&cfg_b).unwrap();
        let mut trades = a.trades;
        trades.extend(b.trades);

        let cfg = Config {
            phases: vec![
                (
                    PhaseWindow::new("before", NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(), NaiveDate::from_ymd_opt(2020, 2, 28).unwrap()).unwrap(),
                    TickTable::uniform(1.0).unwrap(),
                ),
                (
                    PhaseWindow::new("after", NaiveDate::from_ymd_opt(2020, 3, 1).unwrap(), NaiveDate::from_ymd_opt(2020, 4, 30).unwrap()).unwrap(),
                    TickTable::uniform(tick_b).unwrap(),
                ),
            ],
            min_days: 1,
            ..Config::default()
        };
        (cfg, trades)
    }

    #[test]
    fn pipeline_evaluates_a_synthetic_stock() {
        let (cfg, trades) = two_phase_setup(0.5);
        let (pa, ta) = cfg.phase("before").map(|(p, t)| (p.clone(), t.clone())).unwrap();
        let (pb, tb) = cfg.phase("after").map(|(p, t)| (p.clone(), t.clone())).unwrap();
        let report = evaluate_stock("synthetic", &trades, &pa, &ta, &pb, &tb, &cfg).unwrap();
        let out = report.outcome().expect("should qualify");
        assert!(out.row.days_used.0 >= 2 && out.row.days_used.1 >= 2);
        assert!((out.row.eta_before - 0.2).abs() < 0.05, "eta_before {}", out.row.eta_before);
        assert!((out.row.eta_after - 0.3).abs() < 0.05, "eta_after {}", out.row.eta_after);
        assert_eq!(out.row.regime_after, LT);
        assert!((out.row.spread_before - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unchanged_tick_disqualifies() {
        let (cfg, trades) = two_phase_setup(1.0);
        let (pa, ta) = cfg.phase("before").map(|(p, t)| (p.clone(), t.clone())).unwrap();
        let (pb, tb) = cfg.phase("after").map(|(p, t)| (p.clone(), t.clone())).unwrap();
        let report = evaluate_stock("synthetic", &trades, &pa, &ta, &pb, &tb, &cfg).unwrap();
        match report {
            StockReport::Disqualified { reason, .. } => assert!(reason.contains("unchanged")),
            StockReport::Evaluated(_) => panic!("tick did not change; must disqualify"),
        }
    }
}
