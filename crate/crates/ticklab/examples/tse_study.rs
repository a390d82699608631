// Rescore the bundled pilot-program panels: forecasts made before each tick
// reduction against what the after phase showed.

use std::io;

use ticklab::classify::suitable_tick;
use ticklab::report::{aggregate_error, from_reference, render_reports, OutputFormat, StockReport};
use ticklab::tse::{phase0_cross_section, phase01_panel, phase12_panel};

fn main() -> io::Result<()> {
    let rows = phase0_cross_section();
    let suitable = rows.iter().filter(|r| suitable_tick(r.regime, r.balance)).count();
    println!(
        "cross-section before the program: {} stocks, {} already on a suitable tick",
        rows.len(),
        suitable
    );

    let panels = [("first tick reduction", phase01_panel()), ("second tick reduction", phase12_panel())];
    for (label, panel) in panels {
        let outcomes = from_reference(&panel);
        let agg = aggregate_error(outcomes.iter().map(|o| &o.score)).unwrap();
        println!();
        println!("{label}: {} stocks, mean relative forecast error {:.4}", outcomes.len(), agg);
        let reports: Vec<StockReport> = outcomes.into_iter().map(StockReport::Evaluated).collect();
        render_reports(&mut io::stdout().lock(), &reports, OutputFormat::Plain)?;
    }
    Ok(())
}
