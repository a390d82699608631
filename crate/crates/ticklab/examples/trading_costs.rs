// Trading costs implied by eta: taker cost, maker round-trip gain, and the
// volatility link behind the maker edge.

use chrono::TimeDelta;
use ticklab::costs::{cost_report, fit_c, mm_edge, realized_vol};
use ticklab::sim::{simulate, SimConfig};

fn main() -> anyhow::Result<()> {
    println!("costs per share at a 1 yen tick:");
    println!("{:>6} {:>12} {:>16} {}", "eta", "taker cost", "implicit spread", "");
    for eta in [0.10, 0.25, 0.40, 0.50, 0.55] {
        let r = cost_report(1.0, eta);
        println!(
            "{:>6.2} {:>12.3} {:>16.3} {}",
            eta,
            r.market_order.value,
            r.implicit_spread,
            if r.market_order.spread_widening_expected { "spread should widen" } else { "" }
        );
    }

    // a day of synthetic trading feeds the volatility side
    let mut cfg = SimConfig::new(0.3, 1.0);
    cfg.n_changes = 4_000;
    cfg.seed = 9;
    let path = simulate(&cfg)?;
    let first_date = path.trades[0].date();
    let day: Vec<_> = path.trades.iter().filter(|t| t.date() == first_date).cloned().collect();
    let v = realized_vol(&day, TimeDelta::minutes(5)).expect("a full day of samples");
    println!();
    println!("first simulated day: vol {:.1} over {} trades", v.sigma, v.m);
    println!(
        "maker edge at one-tick quotes, c = 1.4: {:+.4} per share",
        mm_edge(1.0, cfg.tick, 1.4, v.sigma, v.m)
    );

    // recover the proportionality constant from a noiseless cross-section
    let points: Vec<(f64, f64)> = (1..=20).map(|i| (i as f64 * 0.01, 1.37 * i as f64 * 0.01)).collect();
    println!();
    println!("slope through the origin of a c = 1.37 cross-section: {:.2}", fit_c(&points).unwrap());
    Ok(())
}
