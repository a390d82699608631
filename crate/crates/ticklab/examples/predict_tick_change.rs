// Forecast eta across a tick-value change, and find the tick that lands it
// on one half.

use ticklab::predict::{optimal_tick, predict_eta, TickChange};
use ticklab::tse::phase01_panel;

fn main() -> anyhow::Result<()> {
    // one worked case: eta 0.06 on a 5 yen tick, cut to 1 yen
    let eta0 = 0.06;
    let change = TickChange::new(5.0, 1.0)?;
    println!("eta {eta0} across {change}: forecast {:.4}", predict_eta(eta0, change));

    let astar = optimal_tick(eta0, 5.0);
    println!("tick value that centers the forecast on 0.5: {astar:.4}");
    println!("fed back through the forecast: {:.4}", predict_eta(eta0, TickChange::new(5.0, astar)?));

    // the bundled first-reduction panel, forecast from the before phase only
    println!();
    println!(
        "{:<36} {:>5} {:>7} {:>9} {:>7}",
        "name", "ratio", "before", "forecast", "after"
    );
    for r in phase01_panel() {
        let p = predict_eta(r.eta_before, TickChange::new(r.tick_ratio, 1.0)?);
        println!(
            "{:<36} {:>5} {:>7.2} {:>9.4} {:>7.2}",
            r.name, r.tick_ratio, r.eta_before, p, r.eta_after
        );
    }
    Ok(())
}
