//! Synthetic trade streams with a known friction parameter.
//!
//! The traded price moves by one tick at a time. After each change the
//! next one repeats the direction with probability `2 eta / (1 + 2 eta)`
//! and reverses otherwise, which is exactly the directional law implied
//! by uncertainty zones of half-width `eta * alpha`: starting one tick
//! inside the last zone edge, the efficient price reaches the barrier
//! `alpha` away before the one `2 * eta * alpha` away with probability
//! `2 eta / (1 + 2 eta)`.
//!
//! Change epochs are spaced by i.i.d. gamma waits whose mean is set so
//! the realized variance rate of the traded price equals the configured
//! daily volatility, and the waits run on a session clock, so generated
//! days look like exchange days with a lunch gap.

use chrono::{Days, NaiveDate, NaiveTime, TimeDelta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma, Poisson};

use crate::error::{Error, Result};
use crate::ingest::{SessionSpec, TradeRecord};

/// Probability that a price change repeats the previous direction.
pub fn continuation_prob(eta: f64) -> f64 {
    2.0 * eta / (1.0 + 2.0 * eta)
}

/// Session windows the generated timestamps are confined to.
///
/// These are the exchange windows already shorn of the opening and
/// closing hour, so downstream trimming removes nothing.
pub fn default_sessions() -> SessionSpec {
    SessionSpec::new(
        vec![
            (NaiveTime::from_hms_opt(10, 0, 0).unwrap(), NaiveTime::from_hms_opt(11, 30, 0).unwrap()),
            (NaiveTime::from_hms_opt(12, 30, 0).unwrap(), NaiveTime::from_hms_opt(14, 0, 0).unwrap()),
        ],
        TimeDelta::zero(),
        TimeDelta::zero(),
    )
    .unwrap()
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Friction parameter the stream should exhibit.
    pub eta: f64,
    /// Tick value, also the size of every price change.
    pub tick: f64,
    /// Daily volatility of the traded price, in currency.
    pub sigma_day: f64,
    pub initial_price: f64,
    /// Price changes to generate.
    pub n_changes: u64,
    /// Mean number of extra same-price trades between changes.
    pub trades_between: f64,
    pub seed: u64,
    pub start_date: NaiveDate,
    pub sessions: SessionSpec,
}

impl SimConfig {
    /// A config with everything but `eta` and `tick` defaulted.
    pub fn new(eta: f64, tick: f64) -> Self {
        SimConfig {
            eta,
            tick,
            sigma_day: 30.0 * tick,
            initial_price: 3000.0 * tick,
            n_changes: 10_000,
            trades_between: 5.0,
            seed: 1,
            start_date: NaiveDate::from_ymd_opt(2014, 1, 14).unwrap(),
            sessions: default_sessions(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.eta > 0.0
            && self.eta <= 2.0
            && self.tick > 0.0
            && self.sigma_day > 0.0
            && self.initial_price > 0.0
            && self.trades_between >= 0.0
            && [self.eta, self.tick, self.sigma_day, self.initial_price, self.trades_between]
                .iter()
                .all(|v| v.is_finite());
        if !ok {
            return Err(Error::Config("simulation parameters out of range".into()));
        }
        if self.n_changes < 2 {
            return Err(Error::Config("need at least two price changes".into()));
        }
        Ok(())
    }
}

/// A generated stream plus the ground truth behind it.
#[derive(Debug, Clone)]
pub struct SimPath {
    pub trades: Vec<TradeRecord>,
    /// The eta the generator was run with.
    pub eta_true: f64,
    /// Direction of each price change, +1 or -1.
    pub directions: Vec<i8>,
    pub n_days: u32,
}

/// Maps elapsed in-session seconds to calendar timestamps.
struct SessionClock {
    windows: Vec<(NaiveTime, NaiveTime)>,
    day_len_ms: i64,
    start_date: NaiveDate,
}

impl SessionClock {
    fn new(sessions: &SessionSpec, start_date: NaiveDate) -> Self {
        let windows = sessions.kept_windows();
        let day_len_ms = windows.iter().map(|(s, e)| (*e - *s).num_milliseconds()).sum();
        SessionClock { windows, day_len_ms, start_date }
    }

    fn day_len_secs(&self) -> f64 {
        self.day_len_ms as f64 / 1000.0
    }

    fn at(&self, u_secs: f64) -> (u64, chrono::NaiveDateTime) {
        let total_ms = (u_secs * 1000.0).round() as i64;
        let day = total_ms.div_euclid(self.day_len_ms);
        let mut rem = total_ms.rem_euclid(self.day_len_ms);
        for &(s, e) in &self.windows {
            let w = (e - s).num_milliseconds();
            if rem < w {
                let date = self.start_date + Days::new(day as u64);
                return (day as u64, date.and_time(s) + TimeDelta::milliseconds(rem));
            }
            rem -= w;
        }
        unreachable!("offset exceeds session day length");
    }
}

/// Generate a trade stream.
///
/// Quotes always straddle the trade price by exactly one tick (at the
/// ask after an up change, at the bid after a down change), so the
/// quoted spread is one tick throughout.
pub fn simulate(cfg: &SimConfig) -> Result<SimPath> {
    cfg.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let clock = SessionClock::new(&cfg.sessions, cfg.start_date);

    let p_cont = continuation_prob(cfg.eta);
    let var_rate = cfg.sigma_day * cfg.sigma_day / clock.day_len_secs();
    let mean_wait = 2.0 * cfg.eta * cfg.tick * cfg.tick / var_rate;
    let shape = 1.5;
    let wait = Gamma::new(shape, mean_wait / shape)
        .map_err(|e| Error::Config(format!("bad wait distribution: {e}")))?;
    let extra = if cfg.trades_between > 0.0 {
        Some(Poisson::new(cfg.trades_between).map_err(|e| Error::Config(format!("bad trade count distribution: {e}")))?)
    } else {
        None
    };

    let est_extra = (cfg.n_changes as f64 * cfg.trades_between) as usize;
    let mut trades = Vec::with_capacity(cfg.n_changes as usize + est_extra + 1);
    let mut directions = Vec::with_capacity(cfg.n_changes as usize);

    let quotes = |price: f64, dir: i8| -> (f64, f64) {
        if dir > 0 {
            (price - cfg.tick, price)
        } else {
            (price, price + cfg.tick)
        }
    };

    // price is kept as an integer tick offset so long paths stay on grid
    let mut offset: i64 = 0;
    let price_at = |offset: i64| cfg.initial_price + offset as f64 * cfg.tick;
    let mut dir: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
    // direction of the change that set the current price; seeds the quotes
    let mut quote_dir: i8 = -dir;
    let (bid0, ask0) = quotes(price_at(offset), quote_dir);
    let (_, t0) = clock.at(0.0);
    trades.push(TradeRecord { timestamp: t0, price: price_at(offset), bid: bid0, ask: ask0 });

    let mut u = 0.0f64;
    let mut last_day = 0u64;
    let mut scratch: Vec<f64> = Vec::new();
    for i in 0..cfg.n_changes {
        let u_prev = u;
        u += wait.sample(&mut rng);
        if i > 0 && !rng.gen_bool(p_cont) {
            dir = -dir;
        }
        directions.push(dir);
        if price_at(offset + dir as i64) <= cfg.tick {
            return Err(Error::Config(
                "price path reached zero; raise initial_price or lower n_changes".into(),
            ));
        }

        if let Some(pois) = &extra {
            let k = pois.sample(&mut rng) as usize;
            scratch.clear();
            for _ in 0..k {
                if u > u_prev {
                    scratch.push(rng.gen_range(u_prev..u));
                }
            }
            scratch.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let price = price_at(offset);
            let (bid, ask) = quotes(price, quote_dir);
            for &ut in scratch.iter() {
                let (_, ts) = clock.at(ut);
                trades.push(TradeRecord { timestamp: ts, price, bid, ask });
            }
        }

        offset += dir as i64;
        quote_dir = dir;
        let price = price_at(offset);
        let (bid, ask) = quotes(price, dir);
        let (day, ts) = clock.at(u);
        last_day = day;
        trades.push(TradeRecord { timestamp: ts, price, bid, ask });
    }

    Ok(SimPath { trades, eta_true: cfg.eta, directions, n_days: last_day as u32 + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::{count_transitions, eta_day, extract_jumps};
    use crate::ingest::{session_filter, ticks_equal};

    #[test]
    fn continuation_prob_known_points() {
        assert!((continuation_prob(0.25) - 1.0 / 3.0).abs() < 1e-15);
        assert!((continuation_prob(0.5) - 0.5).abs() < 1e-15);
        assert!(continuation_prob(0.1) < continuation_prob(0.2));
        assert!(continuation_prob(1e-9) < 1e-8);
    }

    #[test]
    fn same_seed_reproduces_bit_identical_stream() {
        let cfg = SimConfig { n_changes: 500, ..SimConfig::new(0.2, 1.0) };
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a.trades.len(), b.trades.len());
        for (x, y) in a.trades.iter().zip(&b.trades) {
            assert_eq!(x.timestamp, y.timestamp);
            assert!(x.price.to_bits() == y.price.to_bits());
            assert!(x.bid.to_bits() == y.bid.to_bits());
            assert!(x.ask.to_bits() == y.ask.to_bits());
        }
        let c = simulate(&SimConfig { seed: 2, ..cfg }).unwrap();
        assert!(a.trades.iter().zip(&c.trades).any(|(x, y)| x.price != y.price || x.timestamp != y.timestamp));
    }

    #[test]
    fn direction_stream_matches_target_continuation_rate() {
        let cfg = SimConfig { n_changes: 20_000, trades_between: 0.0, ..SimConfig::new(0.3, 1.0) };
        let path = simulate(&cfg).unwrap();
        let pairs = path.directions.windows(2).count() as f64;
        let cont = path.directions.windows(2).filter(|w| w[0] == w[1]).count() as f64;
        let p = continuation_prob(0.3);
        let se = (p * (1.0 - p) / pairs).sqrt();
        assert!((cont / pairs - p).abs() < 3.0 * se, "rate {} target {}", cont / pairs, p);
    }

    #[test]
    fn estimator_recovers_eta_from_generated_prices() {
        let cfg = SimConfig { n_changes: 20_000, seed: 7, ..SimConfig::new(0.15, 1.0) };
        let path = simulate(&cfg).unwrap();
        let prices: Vec<f64> = path.trades.iter().map(|t| t.price).collect();
        let jumps = extract_jumps(&prices, cfg.tick);
        let (nc, na) = count_transitions(&jumps);
        let eta_hat = eta_day(nc, na).unwrap();
        assert!((eta_hat - 0.15).abs() < 0.02, "eta_hat {eta_hat}");
    }

    #[test]
    fn quotes_straddle_price_by_one_tick() {
        let cfg = SimConfig { n_changes: 300, ..SimConfig::new(0.4, 0.5) };
        let path = simulate(&cfg).unwrap();
        for t in &path.trades {
            assert!(ticks_equal(t.ask - t.bid, cfg.tick));
            assert!(t.price == t.bid || t.price == t.ask);
        }
    }

    #[test]
    fn timestamps_stay_in_session_and_in_order() {
        let cfg = SimConfig { n_changes: 4000, seed: 3, ..SimConfig::new(0.2, 1.0) };
        let path = simulate(&cfg).unwrap();
        let kept = session_filter(&path.trades, &cfg.sessions);
        assert_eq!(kept.len(), path.trades.len());
        for w in path.trades.windows(2) {
            assert!(w[0].timestamp <= w[1].timestamp);
        }
        let n_dates = {
            let mut dates: Vec<_> = path.trades.iter().map(|t| t.date()).collect();
            dates.dedup();
            dates.len()
        };
        assert_eq!(n_dates as u32, path.n_days);
        assert!(path.n_days > 1, "expected the stream to span several days");
    }

    #[test]
    fn zero_extra_trades_gives_one_trade_per_change() {
        let cfg = SimConfig { n_changes: 100, trades_between: 0.0, ..SimConfig::new(0.2, 1.0) };
        let path = simulate(&cfg).unwrap();
        assert_eq!(path.trades.len(), 101);
    }

    #[test]
    fn rejects_degenerate_configs() {
        assert!(simulate(&SimConfig { eta: 0.0, ..SimConfig::new(0.2, 1.0) }).is_err());
        assert!(simulate(&SimConfig { tick: -1.0, ..SimConfig::new(0.2, 1.0) }).is_err());
        assert!(simulate(&SimConfig { n_changes: 1, ..SimConfig::new(0.2, 1.0) }).is_err());
    }
}
