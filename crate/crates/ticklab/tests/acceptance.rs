//! One test per acceptance criterion, each printing a single pass or fail
//! line through `verdict`.
//!
//! Two tests assert exact-reproduction targets that the bundled reference
//! tables cannot meet, because those tables carry their inputs rounded to
//! two decimals: `criterion_1_strict_point_forecast_reproduction` and
//! `criterion_3_predicted_panel_labels`. They fail by design and stay
//! red; each has a green companion that pins down exactly how far the
//! rounded inputs can be pushed, so any regression beyond the known gap
//! still surfaces.

use std::fs::File;

use chrono::NaiveDate;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestError, TestRunner};

use ticklab::classify::{classify_balance, classify_regime, RegimeLabel};
use ticklab::config::Config;
use ticklab::costs::{implicit_spread, market_order_cost};
use ticklab::estimator::{count_transitions, eta_day, eta_period, extract_jumps};
use ticklab::ingest::{
    parse_trades_path, session_filter, write_trades, PhaseWindow, TickTable, TradeRecord,
};
use ticklab::predict::{
    balance_forecast, classify_prediction, optimal_tick, predict_eta, predict_with_ci, TickChange,
};
use ticklab::report::{aggregate_error, evaluate_stock, from_reference};
use ticklab::sim::{continuation_prob, simulate, SimConfig};
use ticklab::tse::{phase0_cross_section, phase01_panel, phase12_panel, PanelRow};

/// Print the one-line outcome for a criterion, then enforce it.
fn verdict(name: &str, ok: bool, detail: String) {
    println!("{name}: {} -- {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn both_panels() -> Vec<PanelRow> {
    let mut rows = phase01_panel();
    rows.extend(phase12_panel());
    rows
}

fn change(from: f64, to: f64) -> TickChange {
    TickChange::new(from, to).unwrap()
}

#[test]
fn criterion_1_strict_point_forecast_reproduction() {
    let mut fails = Vec::new();
    let mut worst = 0.0f64;
    let rows = both_panels();
    for r in &rows {
        let computed = predict_eta(r.eta_before, change(r.tick_ratio, 1.0));
        let dev = (computed - r.eta_predicted).abs();
        worst = worst.max(dev);
        if dev > 0.005 {
            fails.push(format!("{} {:+.4}", r.name, computed - r.eta_predicted));
        }
    }
    verdict(
        "criterion 1: all 60 bundled point forecasts within 0.005 of the formula output",
        fails.is_empty(),
        format!(
            "{} of {} rows deviate by more than 0.005 (worst {:.4}); the bundled inputs are \
             two-decimal roundings, so up to 0.005 of input error is scaled by sqrt(ratio) \
             before the output is rounded again: {}",
            fails.len(),
            rows.len(),
            worst,
            fails.join(", ")
        ),
    );
}

#[test]
fn criterion_1_companion_forecasts_within_propagated_rounding() {
    // an input off by up to 0.005 moves the forecast by 0.005 * sqrt(ratio),
    // and the reported forecast itself carries up to 0.005 of rounding
    let mut worst_margin = f64::INFINITY;
    let mut worst_dev = 0.0f64;
    let mut ok = true;
    for r in both_panels() {
        let computed = predict_eta(r.eta_before, change(r.tick_ratio, 1.0));
        let dev = (computed - r.eta_predicted).abs();
        let bound = 0.005 * (1.0 + r.tick_ratio.sqrt());
        ok &= dev <= bound;
        worst_dev = worst_dev.max(dev);
        worst_margin = worst_margin.min(bound - dev);
    }
    verdict(
        "criterion 1 companion: all 60 forecasts within the propagated two-decimal rounding bound",
        ok,
        format!("worst deviation {worst_dev:.4}, tightest margin under the bound {worst_margin:.4}"),
    );
}

#[test]
fn criterion_2_aggregate_relative_error_bounds() {
    let agg = |panel: &[PanelRow]| {
        let outcomes = from_reference(panel);
        aggregate_error(outcomes.iter().map(|o| &o.score)).unwrap()
    };
    let first = agg(&phase01_panel());
    let second = agg(&phase12_panel());
    verdict(
        "criterion 2: mean relative forecast error below 0.18 (first reduction) and 0.17 (second)",
        first < 0.18 && second < 0.17,
        format!("first {first:.6}, second {second:.6}"),
    );
}

#[test]
fn criterion_3_cross_section_labels() {
    let rows = phase0_cross_section();
    let bad: Vec<&str> = rows
        .iter()
        .filter(|r| {
            let regime = classify_regime(r.spread_ticks);
            (regime, classify_balance(regime, r.eta)) != (r.regime, r.balance)
        })
        .map(|r| r.name)
        .collect();
    verdict(
        "criterion 3a: all 55 cross-section labels recompute from spread and eta",
        bad.is_empty(),
        format!("{} of {} match, mismatches {:?}", rows.len() - bad.len(), rows.len(), bad),
    );
}

#[test]
fn criterion_3_realized_panel_labels() {
    let rows = both_panels();
    let bad: Vec<&str> = rows
        .iter()
        .filter(|r| {
            let regime = classify_regime(r.spread_after);
            (regime, classify_balance(regime, r.eta_after)) != (r.regime_after, r.balance_after)
        })
        .map(|r| r.name)
        .collect();
    verdict(
        "criterion 3b: all 60 realized panel labels recompute from the after-phase numbers",
        bad.is_empty(),
        format!("{} of {} match, mismatches {:?}", rows.len() - bad.len(), rows.len(), bad),
    );
}

#[test]
fn criterion_3_predicted_panel_labels() {
    let rows = both_panels();
    let mut bad = Vec::new();
    for r in &rows {
        let regime = classify_prediction(r.eta_predicted);
        let balance = balance_forecast(r.eta_predicted, regime);
        if (regime, balance) != (r.regime_predicted, r.balance_predicted) {
            bad.push(format!(
                "{}: forecast {:.2} classifies as {}/{}, bundled row says {}/{}",
                r.name, r.eta_predicted, regime, balance, r.regime_predicted, r.balance_predicted
            ));
        }
    }
    verdict(
        "criterion 3c: all 60 forecast labels recompute from the reported forecast values",
        bad.is_empty(),
        format!(
            "{} of {} match; the remaining rows carry a label inconsistent with their own \
             reported forecast under the stated thresholds: {}",
            rows.len() - bad.len(),
            rows.len(),
            bad.join("; ")
        ),
    );
}

#[test]
fn criterion_3_companion_single_inconsistent_forecast_label() {
    let rows = both_panels();
    let bad: Vec<&PanelRow> = rows
        .iter()
        .filter(|r| {
            let regime = classify_prediction(r.eta_predicted);
            (regime, balance_forecast(r.eta_predicted, regime))
                != (r.regime_predicted, r.balance_predicted)
        })
        .collect();
    let only_known = bad.len() == 1
        && bad[0].name == "Marubeni Corp"
        && bad[0].eta_predicted == 0.54
        && bad[0].regime_predicted == RegimeLabel::SmallTick
        && classify_prediction(0.54) == RegimeLabel::Ambiguous
        && balance_forecast(0.54, RegimeLabel::Ambiguous) == bad[0].balance_predicted;
    verdict(
        "criterion 3 companion: the only forecast-label divergence is one row whose 0.54 \
         forecast sits in the ambiguous band yet is reported small-tick",
        only_known,
        format!("divergent rows: {:?}", bad.iter().map(|r| r.name).collect::<Vec<_>>()),
    );
}

#[test]
fn criterion_3_star_annotations() {
    let rows = both_panels();
    let bad: Vec<&str> = rows
        .iter()
        .filter(|r| {
            let card = ticklab::report::score(
                r.regime_predicted,
                r.balance_predicted,
                r.regime_after,
                r.balance_after,
                r.eta_predicted,
                r.eta_after,
            );
            (card.stars, card.ambiguous_stars) != (r.stars, r.ambiguous_stars)
        })
        .map(|r| r.name)
        .collect();
    verdict(
        "criterion 3d: star and bracketed-star annotations recompute for all 60 panel rows",
        bad.is_empty(),
        format!("{} of {} match, mismatches {:?}", rows.len() - bad.len(), rows.len(), bad),
    );
}

fn daily_etas(trades: &[TradeRecord], tick: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut start = 0usize;
    for j in 1..=trades.len() {
        if j == trades.len() || trades[j].date() != trades[start].date() {
            let prices: Vec<f64> = trades[start..j].iter().map(|t| t.price).collect();
            let (nc, na) = count_transitions(&extract_jumps(&prices, tick));
            if let Some(e) = eta_day(nc, na) {
                out.push(e);
            }
            start = j;
        }
    }
    out
}

#[test]
fn criterion_4_estimator_consistency_on_simulated_streams() {
    let mut ok = true;
    let mut details = Vec::new();
    for (i, &eta) in [0.05, 0.15, 0.30, 0.45].iter().enumerate() {
        let mut cfg = SimConfig::new(eta, 1.0);
        cfg.n_changes = 120_000;
        cfg.trades_between = 0.0;
        cfg.seed = 101 + i as u64;
        let path = simulate(&cfg).unwrap();

        let prices: Vec<f64> = path.trades.iter().map(|t| t.price).collect();
        let (nc, na) = count_transitions(&extract_jumps(&prices, cfg.tick));
        let pooled = eta_day(nc, na).unwrap();
        let period = eta_period(&daily_etas(&path.trades, cfg.tick)).unwrap().mean;

        let n = path.directions.len() - 1;
        let cont = path.directions.windows(2).filter(|w| w[0] == w[1]).count();
        let freq = cont as f64 / n as f64;
        let p = continuation_prob(eta);
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let sigmas = (freq - p).abs() / se;

        let here = (pooled - eta).abs() <= 0.02 && (period - eta).abs() <= 0.02 && sigmas <= 3.0;
        ok &= here;
        details.push(format!(
            "eta {eta}: pooled {pooled:.4}, daily-mean {period:.4}, continuation freq off by {sigmas:.2} se"
        ));
    }
    verdict(
        "criterion 4: estimates within 0.02 of the generator and continuation frequency within 3 se",
        ok,
        details.join("; "),
    );
}

fn note<T: std::fmt::Debug>(failures: &mut Vec<String>, label: &str, r: Result<(), TestError<T>>) {
    if let Err(e) = r {
        failures.push(format!("{label}: {e}"));
    }
}

#[test]
fn criterion_5_algebraic_invariants() {
    let mut failures: Vec<String> = Vec::new();
    let cases = PtConfig { cases: 2000, ..PtConfig::default() };

    // identity at an unchanged tick, to float precision
    note(
        &mut failures,
        "identity",
        TestRunner::new(cases.clone()).run(&(0.0..1.5f64, 1e-3..1e3f64), |(eta0, alpha)| {
            let out = predict_eta(eta0, change(alpha, alpha));
            prop_assert!((out - eta0).abs() <= 1e-15, "{out} vs {eta0}");
            Ok(())
        }),
    );

    // feeding the optimal tick back lands on one half, to 1e-12 relative
    note(
        &mut failures,
        "round trip",
        TestRunner::new(cases.clone()).run(&(0.0..1.5f64, 1e-3..1e3f64), |(eta0, alpha0)| {
            let astar = optimal_tick(eta0, alpha0);
            let out = predict_eta(eta0, change(alpha0, astar));
            prop_assert!((out - 0.5).abs() <= 0.5 * 1e-12, "{out}");
            Ok(())
        }),
    );

    // strictly increasing in eta0, strictly decreasing in the new tick,
    // strictly increasing in the old tick
    note(
        &mut failures,
        "monotonicity",
        TestRunner::new(cases.clone()).run(
            &(0.0..1.4f64, 1e-4..0.5f64, 0.01..100.0f64, 0.01..100.0f64, 1e-3..10.0f64),
            |(eta0, de, alpha0, alpha, da)| {
                let base = predict_eta(eta0, change(alpha0, alpha));
                prop_assert!(predict_eta(eta0 + de, change(alpha0, alpha)) > base);
                prop_assert!(predict_eta(eta0, change(alpha0, alpha * (1.0 + da))) < base);
                prop_assert!(predict_eta(eta0, change(alpha0 * (1.0 + da), alpha)) > base);
                Ok(())
            },
        ),
    );

    // taker cost plus half the implicit spread recombines to half the tick:
    // to the last bit for eta in [0.25, 0.55], within one ulp elsewhere
    note(
        &mut failures,
        "cost recombination",
        TestRunner::new(cases).run(&(-8.0..12.0f64, 0.0..0.55f64), |(log_alpha, eta)| {
            let alpha = log_alpha.exp();
            let lhs = market_order_cost(alpha, eta).value + implicit_spread(alpha, eta) / 2.0;
            let rhs = alpha / 2.0;
            let within_ulp = lhs == rhs || lhs == rhs.next_up() || lhs == rhs.next_down();
            prop_assert!(within_ulp, "alpha {alpha}, eta {eta}: {lhs} vs {rhs}");
            if (0.25..=0.55).contains(&eta) {
                prop_assert!(lhs == rhs, "alpha {alpha}, eta {eta}: {lhs} != {rhs}");
            }
            Ok(())
        }),
    );

    verdict(
        "criterion 5: identity, round trip to 1e-12, monotonicity in both arguments, and cost \
         recombination (bit-exact for eta in [0.25, 0.55], one ulp elsewhere)",
        failures.is_empty(),
        if failures.is_empty() {
            "2000 random cases per property".to_string()
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_6_closed_loop_through_the_full_pipeline() {
    let d = |y: i32, m: u32, day: u32| NaiveDate::from_ymd_opt(y, m, day).unwrap();
    let (tick_a, tick_b) = (10.0, 5.0);

    let mut cfg_a = SimConfig::new(0.15, tick_a);
    cfg_a.n_changes = 150_000;
    cfg_a.trades_between = 0.0;
    cfg_a.seed = 61;
    cfg_a.start_date = d(2020, 1, 6);
    let a = simulate(&cfg_a).unwrap();

    let cfg = Config {
        phases: vec![
            (
                PhaseWindow::new("before", d(2020, 1, 1), d(2020, 6, 30)).unwrap(),
                TickTable::uniform(tick_a).unwrap(),
            ),
            (
                PhaseWindow::new("after", d(2020, 7, 1), d(2020, 12, 31)).unwrap(),
                TickTable::uniform(tick_b).unwrap(),
            ),
        ],
        ..Config::default()
    };

    // forecast from the before phase exactly as the pipeline will
    let kept = session_filter(&a.trades, &cfg.sessions);
    let est = eta_period(&daily_etas(&kept, tick_a)).unwrap();
    let pred = predict_with_ci(&est, change(tick_a, tick_b));

    // regenerate the after phase at the forecast value
    let mut cfg_b = SimConfig::new(pred.eta, tick_b);
    cfg_b.n_changes = 150_000;
    cfg_b.trades_between = 0.0;
    cfg_b.seed = 62;
    cfg_b.start_date = d(2020, 7, 1);
    let b = simulate(&cfg_b).unwrap();

    // through a real file and back, then the full evaluation
    let mut all = a.trades;
    all.extend(b.trades);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("SyntheticStock.csv");
    write_trades(File::create(&file).unwrap(), &all, &cfg.format).unwrap();
    let parsed = parse_trades_path(&file, &cfg.format).unwrap();
    assert!(parsed.row_errors.is_empty(), "clean export re-ingests without row errors");

    let (phase_a, table_a) = cfg.phase("before").unwrap();
    let (phase_b, table_b) = cfg.phase("after").unwrap();
    let report =
        evaluate_stock("SyntheticStock", &parsed.records, phase_a, table_a, phase_b, table_b, &cfg)
            .unwrap();
    let outcome = report.outcome().expect("synthetic stock qualifies");
    assert_eq!(
        outcome.row.eta_predicted, pred.eta,
        "pipeline forecast equals the one the after phase was generated at"
    );

    let rel = outcome.score.relative_error.unwrap();
    verdict(
        "criterion 6: closed loop scores 2 stars with relative error below 0.02",
        outcome.score.stars == 2 && rel < 0.02,
        format!(
            "stars {}, relative error {rel:.4}, forecast {:.4}, realized {:.4}",
            outcome.score.stars, outcome.row.eta_predicted, outcome.row.eta_after
        ),
    );
}

#[test]
fn criterion_7_real_venue_data_note() {
    verdict(
        "criterion 7: realized venue values enter only as bundled reference tables",
        true,
        "recomputing them needs proprietary venue tick data; nothing here re-derives them".to_string(),
    );
}
