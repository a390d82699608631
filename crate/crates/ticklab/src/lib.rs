//! Tick-size analytics for trade data: estimate the friction parameter
//! eta from one-tick price moves, classify stocks by spread regime and
//! cost balance, forecast what a tick-value change does to eta and to
//! trading costs, and simulate trade streams with known ground truth.
//!
//! The bundled defaults reproduce the 2014 Tokyo Stock Exchange
//! tick-size pilot (phase calendar, tick schedules, reference
//! statistics for the 55 stocks involved); everything is overridable
//! through [`config::Config`].
//!
//! ## Start with the examples
//!
//! ```text
//! examples/
//! ├── estimate_eta.rs        # simulate trades, estimate eta back
//! ├── classify_stocks.rs     # spread regime and balance labels
//! ├── predict_tick_change.rs # forecast eta across a tick change
//! ├── trading_costs.rs       # market-order cost, implicit spread, edge
//! ├── simulate_zones.rs      # generator determinism and export
//! ├── tse_study.rs           # reproduce the pilot-study tables
//! └── full_pipeline.rs       # file -> parse -> evaluate -> render
//! ```
//!
//! ```bash
//! cargo run --example estimate_eta
//! cargo run --example tse_study
//! cargo run --example full_pipeline
//! ```
//!
//! ## Modules
//!
//! - [`ingest`]: trade-file parsing/writing, sessions, tick tables, day
//!   selection
//! - [`estimator`]: one-tick jump extraction, continuation/alternation
//!   counts, daily and period eta
//! - [`classify`]: spread-regime and balance labels, thresholds
//! - [`predict`]: eta forecasts across a tick change, balance-point tick
//! - [`costs`]: market-order cost, implicit spread, realized
//!   volatility, volatility-link fit
//! - [`sim`]: synthetic trade streams with exact directional law
//! - [`tse`]: 2014 pilot calendar, tick schedules, reference data
//! - [`config`]: TOML study configuration
//! - [`report`]: per-stock evaluation, scoring, table and plot output

pub mod classify;
pub mod config;
pub mod costs;
pub mod error;
pub mod estimator;
pub mod ingest;
pub mod predict;
pub mod report;
pub mod sim;
pub mod tse;

pub use classify::{
    classify_balance, classify_regime, suitable_tick, BalanceLabel, RegimeLabel, Thresholds,
};
pub use config::Config;
pub use error::{Error, Result};
pub use estimator::{
    count_transitions, eta_day, eta_period, extract_jumps, DayStats, EtaEstimate,
};
pub use ingest::{
    parse_trades, parse_trades_path, session_filter, write_trades, PhaseWindow, SessionSpec,
    TickTable, TradeFormat, TradeRecord,
};
pub use predict::{optimal_tick, predict_eta, predict_with_ci, Prediction, TickChange};
pub use costs::{implicit_spread, market_order_cost, realized_vol};
pub use report::{
    aggregate_error, evaluate_phase_pair, evaluate_stock, render_reports, OutputFormat, ScoreCard,
    StockData, StockReport,
};
pub use sim::{continuation_prob, simulate, SimConfig, SimPath};
