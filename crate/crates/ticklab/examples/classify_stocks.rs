// Classify the bundled pre-program cross-section from spread and eta alone.

use ticklab::classify::{classify_balance, classify_regime, suitable_tick};
use ticklab::tse::phase0_cross_section;

fn main() {
    let rows = phase0_cross_section();
    println!("{} stocks in the bundled cross-section", rows.len());
    println!();
    println!(
        "{:<36} {:>6} {:>6}  {:<11} {:<15} {}",
        "name", "spread", "eta", "regime", "balance", "suitable"
    );

    let mut agree = 0;
    let mut suitable = 0;
    for r in &rows {
        let regime = classify_regime(r.spread_ticks);
        let balance = classify_balance(regime, r.eta);
        if (regime, balance) == (r.regime, r.balance) {
            agree += 1;
        }
        let ok = suitable_tick(regime, balance);
        if ok {
            suitable += 1;
        }
        println!(
            "{:<36} {:>6.2} {:>6.2}  {:<11} {:<15} {}",
            r.name,
            r.spread_ticks,
            r.eta,
            regime.to_string(),
            balance.to_string(),
            if ok { "yes" } else { "" }
        );
    }

    println!();
    println!("recomputed labels agree with the bundled ones on {agree}/{} stocks", rows.len());
    println!("{suitable} stocks already trade on a suitable tick value");
}
