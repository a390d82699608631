// Generate synthetic tick data and check it against the model it came from.

use ticklab::estimator::{count_transitions, extract_jumps};
use ticklab::sim::{continuation_prob, simulate, SimConfig};

fn main() -> anyhow::Result<()> {
    let mut cfg = SimConfig::new(0.45, 0.5);
    cfg.n_changes = 30_000;
    cfg.seed = 2;
    let path = simulate(&cfg)?;

    println!("first trades of the stream:");
    for tr in &path.trades[..6] {
        println!("  {}  price {:>7.1}  bid {:>7.1}  ask {:>7.1}", tr.timestamp, tr.price, tr.bid, tr.ask);
    }

    let cont = path.directions.windows(2).filter(|w| w[0] == w[1]).count();
    let freq = cont as f64 / (path.directions.len() - 1) as f64;
    println!();
    println!(
        "direction continuations: {:.4} observed, {:.4} in the model",
        freq,
        continuation_prob(cfg.eta)
    );

    let again = simulate(&cfg)?;
    println!("same seed reproduces the stream byte for byte: {}", again.trades == path.trades);

    // the estimator closes the loop on the stream's prices
    let prices: Vec<f64> = path.trades.iter().map(|t| t.price).collect();
    let jumps = extract_jumps(&prices, cfg.tick);
    let (nc, na) = count_transitions(&jumps);
    println!(
        "eta recovered from the prices: {:.4} (generator ran at {})",
        nc as f64 / (2.0 * na as f64),
        cfg.eta
    );
    Ok(())
}
