// Estimate eta from a synthetic trade stream whose true value is known.

use ticklab::estimator::{day_stats, eta_period};
use ticklab::ingest::{TickTable, TradeRecord};
use ticklab::sim::{simulate, SimConfig};

fn main() -> anyhow::Result<()> {
    let mut cfg = SimConfig::new(0.15, 1.0);
    cfg.n_changes = 40_000;
    cfg.seed = 5;
    let path = simulate(&cfg)?;
    println!(
        "simulated {} trades over {} days, true eta {}",
        path.trades.len(),
        path.n_days,
        path.eta_true
    );

    let mut days: Vec<(chrono::NaiveDate, Vec<TradeRecord>)> = Vec::new();
    for tr in path.trades {
        match days.last_mut() {
            Some((d, v)) if *d == tr.date() => v.push(tr),
            _ => days.push((tr.date(), vec![tr])),
        }
    }

    let table = TickTable::uniform(cfg.tick)?;
    println!();
    println!("{:<12} {:>7} {:>6} {:>6} {:>8}", "date", "trades", "cont", "alt", "eta");
    let mut daily = Vec::new();
    for (date, trades) in &days {
        let d = day_stats(*date, trades, &table, chrono::TimeDelta::minutes(5));
        if let Some(eta) = d.eta {
            daily.push(eta);
            println!(
                "{:<12} {:>7} {:>6} {:>6} {:>8.4}",
                d.date, d.n_trades, d.n_continuations, d.n_alternations, eta
            );
        }
    }

    let est = eta_period(&daily).expect("at least one daily estimate");
    println!();
    println!(
        "period estimate {:.4} over {} days, daily quartiles [{:.4}, {:.4}]",
        est.mean, est.n_days, est.q25, est.q75
    );
    println!("absolute error against the generator: {:.4}", (est.mean - cfg.eta).abs());
    Ok(())
}
