// Closed loop through the whole crate: simulate a stock before a tick cut,
// forecast the after-phase eta from that data alone, generate the after
// phase at the forecast value, and let the evaluation pipeline score it.

use chrono::NaiveDate;
use ticklab::config::Config;
use ticklab::ingest::{PhaseWindow, TickTable};
use ticklab::predict::{predict_eta, TickChange};
use ticklab::report::{evaluate_stock, render_reports, OutputFormat};
use ticklab::sim::{simulate, SimConfig};

fn d(y: i32, m: u32, day: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, day).unwrap()
}

fn main() -> anyhow::Result<()> {
    let eta_a = 0.15;
    let (tick_a, tick_b) = (10.0, 5.0);

    let mut cfg_a = SimConfig::new(eta_a, tick_a);
    cfg_a.n_changes = 30_000;
    cfg_a.seed = 31;
    cfg_a.start_date = d(2020, 1, 6);
    let a = simulate(&cfg_a)?;

    let eta_b = predict_eta(eta_a, TickChange::new(tick_a, tick_b)?);
    println!("generator eta before: {eta_a}");
    println!("forecast for a tick cut {tick_a} to {tick_b}: {eta_b:.4}");

    let mut cfg_b = SimConfig::new(eta_b, tick_b);
    cfg_b.n_changes = 30_000;
    cfg_b.seed = 32;
    cfg_b.start_date = d(2020, 7, 1);
    let b = simulate(&cfg_b)?;

    let mut trades = a.trades;
    trades.extend(b.trades);
    println!("{} trades across both phases", trades.len());

    let cfg = Config {
        phases: vec![
            (PhaseWindow::new("before", d(2020, 1, 1), d(2020, 6, 30))?, TickTable::uniform(tick_a)?),
            (PhaseWindow::new("after", d(2020, 7, 1), d(2020, 12, 31))?, TickTable::uniform(tick_b)?),
        ],
        min_days: 3,
        ..Config::default()
    };
    let (phase_a, table_a) = cfg.phase("before").unwrap();
    let (phase_b, table_b) = cfg.phase("after").unwrap();
    let report = evaluate_stock("SyntheticStock", &trades, phase_a, table_a, phase_b, table_b, &cfg)?;

    println!();
    render_reports(&mut std::io::stdout().lock(), &[report.clone()], OutputFormat::Plain)?;
    if let Some(o) = report.outcome() {
        println!();
        println!(
            "stars {} of 2, relative forecast error {:.4}",
            o.score.stars,
            o.score.relative_error.unwrap()
        );
    }
    Ok(())
}
