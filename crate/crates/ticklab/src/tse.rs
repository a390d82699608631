//! The 2014 Tokyo Stock Exchange tick-size pilot: phase calendar, the
//! per-phase tick schedules, trading sessions, and reference statistics
//! for the 55 TOPIX 100 stocks the pilot covered.
//!
//! The reference numbers are a frozen snapshot (spreads and eta rounded
//! to two decimals, labels, forecasts, and star annotations); the raw
//! tick data behind them is proprietary and is not bundled.

use chrono::{NaiveDate, NaiveTime, TimeDelta};

use crate::classify::{BalanceLabel, RegimeLabel};
use crate::ingest::{PhaseWindow, SessionSpec, TickTable};

use BalanceLabel::Balanced as BAL;
use BalanceLabel::MarketMakerFavorable as MMF;
use RegimeLabel::Ambiguous as AMB;
use RegimeLabel::LargeTick as LT;
use RegimeLabel::SmallTick as ST;

fn d(y: i32, m: u32, day: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, day).unwrap()
}

/// The three pilot phases, in order: before the program, after the
/// first reduction, after the second.
pub fn pilot_phases() -> [PhaseWindow; 3] {
    [
        PhaseWindow::new("phase0", d(2013, 6, 3), d(2014, 1, 13)).unwrap(),
        PhaseWindow::new("phase1", d(2014, 1, 14), d(2014, 7, 21)).unwrap(),
        PhaseWindow::new("phase2", d(2014, 7, 22), d(2014, 12, 30)).unwrap(),
    ]
}

/// Tick schedules per phase, indexed like [`pilot_phases`].
pub fn phase_tables() -> [TickTable; 3] {
    let t0 = TickTable::new(
        vec![
            (1_000.0, 1.0),
            (3_000.0, 1.0),
            (5_000.0, 5.0),
            (10_000.0, 10.0),
            (30_000.0, 10.0),
            (50_000.0, 50.0),
            (100_000.0, 100.0),
            (300_000.0, 100.0),
            (500_000.0, 500.0),
            (1_000_000.0, 1_000.0),
            (3_000_000.0, 1_000.0),
            (5_000_000.0, 5_000.0),
            (10_000_000.0, 10_000.0),
            (30_000_000.0, 10_000.0),
            (50_000_000.0, 50_000.0),
        ],
        100_000.0,
    )
    .unwrap();
    let t1 = TickTable::new(
        vec![
            (1_000.0, 1.0),
            (3_000.0, 1.0),
            (5_000.0, 1.0),
            (10_000.0, 1.0),
            (30_000.0, 5.0),
            (50_000.0, 5.0),
            (100_000.0, 10.0),
            (300_000.0, 50.0),
            (500_000.0, 50.0),
            (1_000_000.0, 100.0),
            (3_000_000.0, 500.0),
            (5_000_000.0, 500.0),
            (10_000_000.0, 1_000.0),
            (30_000_000.0, 5_000.0),
            (50_000_000.0, 5_000.0),
        ],
        10_000.0,
    )
    .unwrap();
    let t2 = TickTable::new(
        vec![
            (1_000.0, 0.1),
            (3_000.0, 0.5),
            (5_000.0, 0.5),
            (10_000.0, 1.0),
            (30_000.0, 5.0),
            (50_000.0, 5.0),
            (100_000.0, 10.0),
            (300_000.0, 50.0),
            (500_000.0, 50.0),
            (1_000_000.0, 100.0),
            (3_000_000.0, 500.0),
            (5_000_000.0, 500.0),
            (10_000_000.0, 1_000.0),
            (30_000_000.0, 5_000.0),
            (50_000_000.0, 5_000.0),
        ],
        10_000.0,
    )
    .unwrap();
    [t0, t1, t2]
}

/// Exchange sessions with the opening and closing hour trimmed away.
pub fn trading_sessions() -> SessionSpec {
    SessionSpec::new(
        vec![
            (NaiveTime::from_hms_opt(9, 0, 0).unwrap(), NaiveTime::from_hms_opt(11, 30, 0).unwrap()),
            (NaiveTime::from_hms_opt(12, 30, 0).unwrap(), NaiveTime::from_hms_opt(15, 0, 0).unwrap()),
        ],
        TimeDelta::hours(1),
        TimeDelta::hours(1),
    )
    .unwrap()
}

/// One stock's phase-0 snapshot: spread in ticks, eta, and labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionRow {
    pub name: &'static str,
    pub spread_ticks: f64,
    pub eta: f64,
    pub regime: RegimeLabel,
    pub balance: BalanceLabel,
}

/// One stock across a tick reduction: the phase before, the phase
/// after, and the forecast made from the before-phase numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelRow {
    pub name: &'static str,
    pub spread_before: f64,
    pub eta_before: f64,
    /// Old tick over new tick, resolved from the stock's price band.
    pub tick_ratio: f64,
    pub spread_after: f64,
    pub eta_after: f64,
    pub regime_after: RegimeLabel,
    pub balance_after: BalanceLabel,
    /// Point forecast as reported, two decimals.
    pub eta_predicted: f64,
    /// Forecast band from the daily 25% and 75% quantiles.
    pub ci: (f64, f64),
    pub regime_predicted: RegimeLabel,
    pub balance_predicted: BalanceLabel,
    /// Correct label forecasts out of two (regime, balance).
    pub stars: u8,
    /// Comparisons involving an ambiguous label, scored as correct.
    pub ambiguous_stars: u8,
}

fn cs(name: &'static str, s: f64, eta: f64, regime: RegimeLabel, balance: BalanceLabel) -> CrossSectionRow {
    CrossSectionRow { name, spread_ticks: s, eta, regime, balance }
}

#[allow(clippy::too_many_arguments)]
fn pr(
    name: &'static str,
    s0: f64,
    e0: f64,
    ratio: f64,
    s1: f64,
    e1: f64,
    reg1: RegimeLabel,
    bal1: BalanceLabel,
    ep: f64,
    lo: f64,
    hi: f64,
    regp: RegimeLabel,
    balp: BalanceLabel,
    stars: u8,
    astars: u8,
) -> PanelRow {
    PanelRow {
        name,
        spread_before: s0,
        eta_before: e0,
        tick_ratio: ratio,
        spread_after: s1,
        eta_after: e1,
        regime_after: reg1,
        balance_after: bal1,
        eta_predicted: ep,
        ci: (lo, hi),
        regime_predicted: regp,
        balance_predicted: balp,
        stars,
        ambiguous_stars: astars,
    }
}

/// Phase-0 snapshot for all 55 pilot stocks.
pub fn phase0_cross_section() -> Vec<CrossSectionRow> {
    vec![
        cs("Aeon Co Ltd", 1.07, 0.18, LT, MMF),
        cs("ANA Holdings Inc", 1.23, 0.09, LT, MMF),
        cs("Asahi Glass Co Ltd", 1.03, 0.15, LT, MMF),
        cs("Asahi Kasei Corp", 1.04, 0.21, LT, MMF),
        cs("Astellas Pharma Inc", 1.05, 0.14, LT, MMF),
        cs("Bank of Yokohama Ltd", 1.02, 0.23, LT, MMF),
        cs("Canon Inc", 1.04, 0.06, LT, MMF),
        cs("Chubu Electric Power Co Inc", 1.25, 0.49, LT, BAL),
        cs("Daiwa Securities Group Inc", 1.04, 0.20, LT, MMF),
        cs("Daiichi Sankyo Co Ltd", 1.15, 0.32, LT, MMF),
        cs("Dai-ichi Life Insurance Co Ltd", 1.10, 0.22, LT, MMF),
        cs("Fujitsu Ltd", 1.03, 0.13, LT, MMF),
        cs("Hitachi Ltd", 1.04, 0.10, LT, MMF),
        cs("Honda Motor Co Ltd", 1.04, 0.10, LT, MMF),
        cs("Inpex Corp", 1.27, 0.55, LT, BAL),
        cs("ITOCHU Corp", 1.05, 0.18, LT, MMF),
        cs("Japan Tobacco Inc", 1.04, 0.12, LT, MMF),
        cs("JX Holdings Inc", 1.01, 0.08, LT, MMF),
        cs("Kansai Electric Power Co Inc", 1.24, 0.33, LT, MMF),
        cs("Kirin Holdings Co Ltd", 1.43, 0.53, LT, BAL),
        cs("Kubota Corp", 1.34, 0.46, LT, BAL),
        cs("Komatsu Ltd", 1.30, 0.29, LT, MMF),
        cs("Marubeni Corp", 1.02, 0.12, LT, MMF),
        cs("Mitsubishi Chemical Holdings Corp", 1.01, 0.16, LT, MMF),
        cs("Mitsubishi Corp", 1.22, 0.36, LT, MMF),
        cs("Mitsubishi Electric Corp", 1.10, 0.31, LT, MMF),
        cs("Mitsubishi Estate Co Ltd", 1.70, 0.60, ST, BAL),
        cs("Mitsubishi Heavy Industries Ltd", 1.01, 0.11, LT, MMF),
        cs("Mitsubishi UFJ Financial Group Inc", 1.03, 0.04, LT, MMF),
        cs("Mitsui Co Ltd", 1.12, 0.23, LT, MMF),
        cs("Mitsui Fudosan Co Ltd", 1.07, 0.23, LT, MMF),
        cs("Mizuho Financial Group Inc", 1.14, 0.07, LT, MMF),
        cs("Nissan Motor Co Ltd", 1.06, 0.14, LT, MMF),
        cs("Nippon Steel Sumitomo Metal Corp", 1.02, 0.05, LT, MMF),
        cs("Nippon Telegraph Telephone Corp", 1.04, 0.08, LT, MMF),
        cs("Nomura Holdings Inc", 1.05, 0.06, LT, MMF),
        cs("NTT DoCoMo Inc", 1.28, 0.24, LT, MMF),
        cs("ORIX Corp", 1.21, 0.33, LT, MMF),
        cs("Osaka Gas Co Ltd", 1.04, 0.16, LT, MMF),
        cs("Panasonic Corp", 1.14, 0.16, LT, MMF),
        cs("Resona Holdings Inc", 1.00, 0.07, LT, MMF),
        cs("Ricoh Co Ltd", 1.13, 0.36, LT, MMF),
        cs("Seven I Holdings Co Ltd", 1.06, 0.16, LT, MMF),
        cs("Softbank Corp", 1.05, 0.06, LT, MMF),
        cs("Sony Corp", 1.17, 0.24, LT, MMF),
        cs("Sumitomo Corp", 1.04, 0.18, LT, MMF),
        cs("Sumitomo Electric Industries Ltd", 1.24, 0.40, LT, BAL),
        cs("Sumitomo Mitsui Trust Holdings Inc", 1.01, 0.14, LT, MMF),
        cs("Sumitomo Mitsui Financial Group Inc", 1.15, 0.08, LT, MMF),
        cs("Takeda Pharmaceutical Co Ltd", 1.06, 0.13, LT, MMF),
        cs("Tokyo Gas Co Ltd", 1.05, 0.16, LT, MMF),
        cs("Tokio Marine Holdings Inc", 1.05, 0.18, LT, MMF),
        cs("Toray Industries Inc", 1.03, 0.13, LT, MMF),
        cs("Toshiba Corp", 1.03, 0.06, LT, MMF),
        cs("Toyota Motor Corp", 1.03, 0.04, LT, MMF),
    ]
}

/// The 12 stocks followed across the first reduction (phase 0 to 1).
pub fn phase01_panel() -> Vec<PanelRow> {
    vec![
        pr("Astellas Pharma Inc", 1.05, 0.14, 10.0, 1.72, 0.43, ST, BAL, 0.66, 0.50, 0.71, ST, BAL, 2, 0),
        pr("Canon Inc", 1.04, 0.06, 5.0, 1.13, 0.23, LT, MMF, 0.26, 0.19, 0.27, LT, MMF, 2, 0),
        pr("Honda Motor Co Ltd", 1.04, 0.10, 5.0, 1.23, 0.32, LT, MMF, 0.34, 0.26, 0.37, LT, MMF, 2, 0),
        pr("Japan Tobacco Inc", 1.04, 0.12, 5.0, 1.23, 0.32, LT, MMF, 0.39, 0.26, 0.41, LT, MMF, 2, 0),
        pr("Mitsui Fudosan Co Ltd", 1.07, 0.23, 5.0, 1.95, 0.66, ST, BAL, 0.63, 0.52, 0.69, ST, BAL, 2, 0),
        pr("Nippon Telegraph Telephone Corp", 1.04, 0.08, 10.0, 2.00, 0.62, ST, BAL, 0.46, 0.35, 0.51, LT, BAL, 1, 0),
        pr("Seven I Holdings Co Ltd", 1.06, 0.16, 5.0, 1.55, 0.51, AMB, BAL, 0.49, 0.38, 0.55, LT, BAL, 1, 1),
        pr("Softbank Corp", 1.05, 0.06, 10.0, 1.85, 0.50, ST, BAL, 0.40, 0.32, 0.40, LT, BAL, 1, 0),
        pr("Sumitomo Mitsui Financial Group Inc", 1.15, 0.08, 10.0, 1.33, 0.34, LT, MMF, 0.47, 0.27, 0.47, LT, BAL, 1, 0),
        pr("Takeda Pharmaceutical Co Ltd", 1.06, 0.13, 5.0, 1.46, 0.43, LT, BAL, 0.42, 0.28, 0.45, LT, BAL, 2, 0),
        pr("Tokio Marine Holdings Inc", 1.05, 0.18, 5.0, 1.39, 0.46, LT, BAL, 0.53, 0.41, 0.57, AMB, BAL, 1, 1),
        pr("Toyota Motor Corp", 1.03, 0.04, 10.0, 1.36, 0.32, LT, MMF, 0.35, 0.27, 0.33, LT, MMF, 2, 0),
    ]
}

/// The 48 stocks followed across the second reduction (phase 1 to 2).
pub fn phase12_panel() -> Vec<PanelRow> {
    vec![
        pr("Aeon Co Ltd", 1.03, 0.12, 2.0, 1.16, 0.16, LT, MMF, 0.21, 0.18, 0.26, LT, MMF, 2, 0),
        pr("Asahi Glass Co Ltd", 1.01, 0.14, 10.0, 2.49, 0.87, ST, BAL, 0.67, 0.52, 0.82, ST, BAL, 2, 0),
        pr("Asahi Kasei Corp", 1.03, 0.23, 10.0, 3.43, 1.02, ST, BAL, 0.93, 0.76, 1.07, ST, BAL, 2, 0),
        pr("ANA Holdings Inc", 1.00, 0.02, 10.0, 1.37, 0.30, LT, MMF, 0.29, 0.26, 0.31, LT, MMF, 2, 0),
        pr("Bank of Yokohama Ltd", 1.02, 0.22, 10.0, 3.28, 0.98, ST, BAL, 0.92, 0.77, 1.05, ST, BAL, 2, 0),
        pr("Canon Inc", 1.13, 0.23, 2.0, 1.59, 0.43, AMB, BAL, 0.36, 0.30, 0.43, LT, MMF, 0, 1),
        pr("Chubu Electric Power Co Inc", 1.10, 0.31, 2.0, 1.45, 0.44, LT, BAL, 0.48, 0.40, 0.55, LT, BAL, 2, 0),
        pr("Daiwa Securities Group Inc", 1.02, 0.19, 10.0, 3.42, 1.09, ST, BAL, 0.81, 0.70, 0.90, ST, BAL, 2, 0),
        pr("Dai-ichi Life Insurance Co Ltd", 1.08, 0.25, 2.0, 1.35, 0.35, LT, MMF, 0.39, 0.33, 0.47, LT, MMF, 2, 0),
        pr("Daiichi Sankyo Co Ltd", 1.10, 0.27, 2.0, 1.43, 0.40, LT, BAL, 0.43, 0.35, 0.50, LT, BAL, 2, 0),
        pr("Fujitsu Ltd", 1.01, 0.16, 10.0, 2.80, 0.97, ST, BAL, 0.72, 0.60, 0.80, ST, BAL, 2, 0),
        pr("Hitachi Ltd", 1.01, 0.09, 10.0, 2.55, 0.81, ST, BAL, 0.50, 0.42, 0.58, AMB, BAL, 1, 1),
        pr("Honda Motor Co Ltd", 1.23, 0.32, 2.0, 1.69, 0.49, ST, BAL, 0.49, 0.43, 0.55, LT, BAL, 1, 0),
        pr("Inpex Corp", 1.08, 0.25, 2.0, 1.34, 0.37, LT, MMF, 0.40, 0.35, 0.45, LT, BAL, 1, 0),
        pr("ITOCHU Corp", 1.03, 0.13, 2.0, 1.17, 0.24, LT, MMF, 0.23, 0.18, 0.27, LT, MMF, 2, 0),
        pr("Japan Tobacco Inc", 1.23, 0.32, 2.0, 1.86, 0.55, ST, BAL, 0.50, 0.40, 0.57, AMB, BAL, 1, 1),
        pr("JX Holdings Inc", 1.01, 0.07, 10.0, 1.52, 0.41, AMB, BAL, 0.44, 0.38, 0.50, LT, BAL, 1, 1),
        pr("Kansai Electric Power Co Inc", 1.07, 0.25, 10.0, 4.20, 1.03, ST, BAL, 1.01, 0.86, 1.17, ST, BAL, 2, 0),
        pr("Kirin Holdings Co Ltd", 1.10, 0.29, 2.0, 1.31, 0.34, LT, MMF, 0.45, 0.31, 0.57, LT, BAL, 1, 0),
        pr("Komatsu Ltd", 1.10, 0.24, 2.0, 1.50, 0.46, LT, BAL, 0.39, 0.33, 0.43, LT, MMF, 1, 0),
        pr("Kubota Corp", 1.15, 0.37, 2.0, 1.69, 0.59, ST, BAL, 0.57, 0.49, 0.64, ST, BAL, 2, 0),
        pr("Marubeni Corp", 1.01, 0.10, 10.0, 1.99, 0.57, ST, BAL, 0.54, 0.44, 0.62, ST, BAL, 2, 0),
        pr("Mitsubishi Chemical Holdings Corp", 1.00, 0.08, 10.0, 1.97, 0.59, ST, BAL, 0.46, 0.36, 0.52, LT, BAL, 1, 0),
        pr("Mitsubishi Corp", 1.05, 0.18, 2.0, 1.40, 0.36, LT, MMF, 0.29, 0.24, 0.34, LT, MMF, 2, 0),
        pr("Mitsubishi Electric Corp", 1.08, 0.29, 2.0, 1.50, 0.49, LT, BAL, 0.45, 0.39, 0.52, LT, BAL, 2, 0),
        pr("Mitsubishi Estate Co Ltd", 1.48, 0.53, 2.0, 2.46, 0.84, ST, BAL, 0.79, 0.71, 0.89, ST, BAL, 2, 0),
        pr("Mitsubishi Heavy Industries Ltd", 1.01, 0.11, 10.0, 2.42, 0.80, ST, BAL, 0.56, 0.45, 0.66, ST, BAL, 2, 0),
        pr("Mitsubishi UFJ Financial Group Inc", 1.00, 0.03, 10.0, 1.44, 0.32, LT, MMF, 0.30, 0.28, 0.32, LT, MMF, 2, 0),
        pr("Mitsui Co Ltd", 1.04, 0.14, 2.0, 1.18, 0.21, LT, MMF, 0.24, 0.20, 0.28, LT, MMF, 2, 0),
        pr("Nippon Steel Sumitomo Metal Corp", 1.00, 0.03, 10.0, 1.29, 0.31, LT, MMF, 0.30, 0.27, 0.34, LT, MMF, 2, 0),
        pr("Nissan Motor Co Ltd", 1.01, 0.09, 10.0, 2.27, 0.62, ST, BAL, 0.50, 0.42, 0.58, AMB, BAL, 1, 1),
        pr("Nomura Holdings Inc", 1.00, 0.05, 10.0, 1.90, 0.51, ST, BAL, 0.36, 0.33, 0.40, LT, MMF, 0, 0),
        pr("NTT DoCoMo Inc", 1.03, 0.17, 2.0, 1.28, 0.34, LT, MMF, 0.28, 0.24, 0.32, LT, MMF, 2, 0),
        pr("ORIX Corp", 1.06, 0.23, 2.0, 1.23, 0.33, LT, MMF, 0.37, 0.32, 0.42, LT, MMF, 2, 0),
        pr("Osaka Gas Co Ltd", 1.00, 0.12, 10.0, 2.21, 0.81, ST, BAL, 0.59, 0.47, 0.70, ST, BAL, 2, 0),
        pr("Panasonic Corp", 1.03, 0.14, 2.0, 1.19, 0.22, LT, MMF, 0.24, 0.20, 0.28, LT, MMF, 2, 0),
        pr("Resona Holdings Inc", 1.00, 0.06, 10.0, 1.84, 0.56, ST, BAL, 0.41, 0.36, 0.45, LT, BAL, 1, 0),
        pr("Ricoh Co Ltd", 1.05, 0.25, 2.0, 1.23, 0.29, LT, MMF, 0.39, 0.33, 0.46, LT, MMF, 2, 0),
        pr("Sony Corp", 1.04, 0.16, 2.0, 1.49, 0.37, LT, MMF, 0.26, 0.21, 0.32, LT, MMF, 2, 0),
        pr("Sumitomo Corp", 1.03, 0.14, 2.0, 1.17, 0.20, LT, MMF, 0.24, 0.19, 0.29, LT, MMF, 2, 0),
        pr("Sumitomo Electric Industries Ltd", 1.07, 0.29, 2.0, 1.32, 0.37, LT, MMF, 0.45, 0.36, 0.53, LT, BAL, 1, 0),
        pr("Sumitomo Mitsui Financial Group Inc", 1.33, 0.34, 2.0, 1.92, 0.59, ST, BAL, 0.52, 0.46, 0.59, AMB, BAL, 1, 1),
        pr("Sumitomo Mitsui Trust Holdings Inc", 1.00, 0.12, 10.0, 1.74, 0.62, ST, BAL, 0.59, 0.48, 0.67, ST, BAL, 2, 0),
        pr("Takeda Pharmaceutical Co Ltd", 1.46, 0.43, 2.0, 2.19, 0.67, ST, BAL, 0.65, 0.56, 0.73, ST, BAL, 2, 0),
        pr("Tokio Marine Holdings Inc", 1.39, 0.46, 2.0, 2.10, 0.70, ST, BAL, 0.70, 0.61, 0.76, ST, BAL, 2, 0),
        pr("Tokyo Gas Co Ltd", 1.01, 0.14, 10.0, 2.54, 0.91, ST, BAL, 0.66, 0.55, 0.76, ST, BAL, 2, 0),
        pr("Toray Industries Inc", 1.02, 0.14, 10.0, 3.24, 0.98, ST, BAL, 0.64, 0.51, 0.77, ST, BAL, 2, 0),
        pr("Toshiba Corp", 1.00, 0.05, 10.0, 1.74, 0.52, ST, BAL, 0.37, 0.31, 0.42, LT, MMF, 0, 0),
    ]
}
