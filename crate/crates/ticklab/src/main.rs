//! Thin command-line front end; all logic lives in the library.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use ticklab::classify::{classify_balance_with, classify_regime_with, suitable_tick};
use ticklab::config::Config;
use ticklab::estimator::{day_stats, eta_period, DayStats, EtaEstimate};
use ticklab::ingest::{parse_trades_path, session_filter, TickTable, TradeRecord};
use ticklab::predict::{
    balance_forecast_with, classify_prediction_with, optimal_tick, predict_eta,
    predict_with_ci_thresholds, TickChange,
};
use ticklab::report::{
    eta_history, evaluate_stock, render_plot, render_reports, OutputFormat, StockReport,
};
use ticklab::sim::{simulate, SimConfig};

#[derive(Parser)]
#[command(name = "ticklab", version, about = "Tick-size analytics for trade data")]
struct Cli {
    /// TOML config file; omitted means the built-in pilot-program preset.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory of per-stock trade files (file stem = stock name).
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Phase pair to evaluate, as two config labels "before,after".
    #[arg(long, global = true, default_value = "phase0,phase1")]
    phases: String,
    /// Output format: plain, csv, or json.
    #[arg(long, global = true, default_value = "plain", value_parser = parse_format)]
    format: OutputFormat,
    /// Random seed for `simulate`.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Cmd {
    /// Estimate eta from a trade file: period summary, or daily rows.
    Eta(EtaArgs),
    /// Label a stock from its average spread (in ticks) and eta.
    Classify(ClassifyArgs),
    /// Forecast eta across a tick-value change, with a band if quartiles are given.
    Predict(PredictArgs),
    /// Tick value that moves the forecast eta to one half.
    OptimalTick(OptimalTickArgs),
    /// Generate a synthetic trade stream with known eta.
    Simulate(SimulateArgs),
    /// Evaluate every stock in the data directory across the phase pair.
    Report(ReportArgs),
}

#[derive(Args)]
struct EtaArgs {
    /// Trade file to estimate from.
    file: PathBuf,
    /// Tick value override; otherwise each day uses the config phase tables.
    #[arg(long)]
    tick: Option<f64>,
    /// Print one row per day instead of the period summary.
    #[arg(long)]
    daily: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Average spread in ticks.
    #[arg(long)]
    spread: f64,
    #[arg(long)]
    eta: f64,
}

#[derive(Args)]
struct PredictArgs {
    /// Eta estimated before the change (the period mean).
    #[arg(long)]
    eta0: f64,
    /// Tick value before the change.
    #[arg(long)]
    from: f64,
    /// Tick value after the change.
    #[arg(long)]
    to: f64,
    /// 25% quantile of the daily eta values; needs --q75.
    #[arg(long, requires = "q75")]
    q25: Option<f64>,
    /// 75% quantile of the daily eta values; needs --q25.
    #[arg(long, requires = "q25")]
    q75: Option<f64>,
}

#[derive(Args)]
struct OptimalTickArgs {
    #[arg(long)]
    eta0: f64,
    /// Current tick value.
    #[arg(long)]
    tick: f64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    eta: f64,
    #[arg(long)]
    tick: f64,
    /// Price changes to generate.
    #[arg(long, default_value_t = 10_000)]
    changes: u64,
    /// Mean number of extra same-price trades between changes.
    #[arg(long, default_value_t = 5.0)]
    trades_between: f64,
    /// Daily volatility in currency; defaults to 30 ticks.
    #[arg(long)]
    sigma_day: Option<f64>,
    /// Starting price; defaults to 3000 ticks.
    #[arg(long)]
    price: Option<f64>,
    #[arg(long, default_value = "2014-01-14")]
    start_date: NaiveDate,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Emit daily-eta plot rows for this stock instead of the table.
    #[arg(long)]
    plot: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path).with_context(|| format!("loading {}", path.display()))?,
        None => Config::default(),
    };
    match &cli.cmd {
        Cmd::Eta(args) => cmd_eta(&cli, &cfg, args),
        Cmd::Classify(args) => cmd_classify(&cli, &cfg, args),
        Cmd::Predict(args) => cmd_predict(&cli, &cfg, args),
        Cmd::OptimalTick(args) => cmd_optimal_tick(&cli, args),
        Cmd::Simulate(args) => cmd_simulate(&cli, &cfg, args),
        Cmd::Report(args) => cmd_report(&cli, &cfg, args),
    }
}

/// Session-filter a parsed file and split it into day slices.
fn load_days(path: &PathBuf, cfg: &Config) -> Result<Vec<(NaiveDate, Vec<TradeRecord>)>> {
    let out = parse_trades_path(path, &cfg.format)
        .with_context(|| format!("parsing {}", path.display()))?;
    if !out.row_errors.is_empty() {
        eprintln!("{}: {} rows rejected", path.display(), out.row_errors.len());
    }
    let kept = session_filter(&out.records, &cfg.sessions);
    let mut days: Vec<(NaiveDate, Vec<TradeRecord>)> = Vec::new();
    for tr in kept {
        match days.last_mut() {
            Some((date, list)) if *date == tr.date() => list.push(tr),
            _ => days.push((tr.date(), vec![tr])),
        }
    }
    Ok(days)
}

fn cmd_eta(cli: &Cli, cfg: &Config, args: &EtaArgs) -> Result<()> {
    let days = load_days(&args.file, cfg)?;
    let override_table = args.tick.map(TickTable::uniform).transpose()?;
    let mut stats: Vec<DayStats> = Vec::new();
    let mut skipped = 0usize;
    for (date, trades) in &days {
        let table = match &override_table {
            Some(t) => t,
            None => match cfg.phases.iter().find(|(p, _)| p.contains(*date)) {
                Some((_, t)) => t,
                None => {
                    skipped += 1;
                    continue;
                }
            },
        };
        stats.push(day_stats(*date, trades, table, cfg.rv_grid));
    }
    if skipped > 0 {
        eprintln!("{skipped} days outside every config phase were skipped (use --tick to override)");
    }

    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
    if args.daily {
        let rows: Vec<Vec<String>> = stats
            .iter()
            .map(|d| {
                vec![
                    d.date.to_string(),
                    opt(d.tick),
                    d.n_trades.to_string(),
                    d.n_continuations.to_string(),
                    d.n_alternations.to_string(),
                    opt(d.eta),
                    opt(d.avg_spread_ticks),
                    opt(d.sigma),
                ]
            })
            .collect();
        let headers = ["date", "tick", "trades", "continuations", "alternations", "eta", "spread", "sigma"];
        return emit_table(&headers, &rows, cli.format, cfg.format.delimiter);
    }

    let daily: Vec<f64> = stats.iter().filter_map(|d| d.eta).collect();
    let Some(est) = eta_period(&daily) else {
        bail!("no day produced an eta estimate (single-tick days with at least one alternation needed)");
    };
    let headers = ["days", "eta_mean", "eta_q25", "eta_q75"];
    let rows = vec![vec![
        est.n_days.to_string(),
        format!("{:.4}", est.mean),
        format!("{:.4}", est.q25),
        format!("{:.4}", est.q75),
    ]];
    emit_table(&headers, &rows, cli.format, cfg.format.delimiter)
}

fn cmd_classify(cli: &Cli, cfg: &Config, args: &ClassifyArgs) -> Result<()> {
    let th = &cfg.thresholds;
    let regime = classify_regime_with(args.spread, th);
    let balance = classify_balance_with(regime, args.eta, th);
    let headers = ["spread", "eta", "regime", "balance", "suitable_tick"];
    let rows = vec![vec![
        format!("{:.4}", args.spread),
        format!("{:.4}", args.eta),
        regime.to_string(),
        balance.to_string(),
        suitable_tick(regime, balance).to_string(),
    ]];
    emit_table(&headers, &rows, cli.format, cfg.format.delimiter)
}

fn cmd_predict(cli: &Cli, cfg: &Config, args: &PredictArgs) -> Result<()> {
    let th = &cfg.thresholds;
    let change = TickChange::new(args.from, args.to)?;
    let headers = ["eta_predicted", "ci_low", "ci_high", "clamped", "regime", "balance"];
    let row = match (args.q25, args.q75) {
        (Some(q25), Some(q75)) => {
            let est = EtaEstimate { mean: args.eta0, q25, q75, n_days: 0 };
            let p = predict_with_ci_thresholds(&est, change, th);
            vec![
                format!("{:.4}", p.eta),
                format!("{:.4}", p.ci.0),
                format!("{:.4}", p.ci.1),
                p.clamped.to_string(),
                p.regime.to_string(),
                p.balance.to_string(),
            ]
        }
        _ => {
            let eta_p = predict_eta(args.eta0, change);
            let regime = classify_prediction_with(eta_p, th);
            let balance = balance_forecast_with(eta_p, regime, th);
            vec![
                format!("{eta_p:.4}"),
                "-".into(),
                "-".into(),
                "-".into(),
                regime.to_string(),
                balance.to_string(),
            ]
        }
    };
    emit_table(&headers, &[row], cli.format, cfg.format.delimiter)
}

fn cmd_optimal_tick(cli: &Cli, args: &OptimalTickArgs) -> Result<()> {
    if !(args.eta0 > 0.0 && args.tick > 0.0) {
        bail!("eta0 and tick must be positive");
    }
    let alpha_star = optimal_tick(args.eta0, args.tick);
    let check = predict_eta(args.eta0, TickChange::new(args.tick, alpha_star)?);
    let headers = ["optimal_tick", "eta_at_optimal"];
    let rows = vec![vec![format!("{alpha_star:.6}"), format!("{check:.4}")]];
    emit_table(&headers, &rows, cli.format, b',')
}

fn cmd_simulate(cli: &Cli, cfg: &Config, args: &SimulateArgs) -> Result<()> {
    let mut sim_cfg = SimConfig::new(args.eta, args.tick);
    sim_cfg.n_changes = args.changes;
    sim_cfg.trades_between = args.trades_between;
    sim_cfg.seed = cli.seed;
    sim_cfg.start_date = args.start_date;
    if let Some(s) = args.sigma_day {
        sim_cfg.sigma_day = s;
    }
    if let Some(p) = args.price {
        sim_cfg.initial_price = p;
    }
    let path = simulate(&sim_cfg)?;
    match &args.out {
        Some(file) => {
            let f = File::create(file).with_context(|| format!("creating {}", file.display()))?;
            ticklab::ingest::write_trades(f, &path.trades, &cfg.format)?;
        }
        None => {
            let stdout = io::stdout();
            ticklab::ingest::write_trades(stdout.lock(), &path.trades, &cfg.format)?;
        }
    }
    eprintln!(
        "{} trades over {} days at eta {}",
        path.trades.len(),
        path.n_days,
        path.eta_true
    );
    Ok(())
}

fn phase_pair<'a>(
    cli: &Cli,
    cfg: &'a Config,
) -> Result<(
    (&'a ticklab::ingest::PhaseWindow, &'a TickTable),
    (&'a ticklab::ingest::PhaseWindow, &'a TickTable),
)> {
    let Some((a, b)) = cli.phases.split_once(',') else {
        bail!("--phases wants two comma-separated labels, got {:?}", cli.phases);
    };
    let find = |label: &str| {
        cfg.phase(label.trim())
            .with_context(|| format!("config has no phase labelled {:?}", label.trim()))
    };
    Ok((find(a)?, find(b)?))
}

fn cmd_report(cli: &Cli, cfg: &Config, args: &ReportArgs) -> Result<()> {
    let Some(dir) = &cli.data else {
        bail!("report needs --data pointing at a directory of trade files");
    };
    let ((phase_a, table_a), (phase_b, table_b)) = phase_pair(cli, cfg)?;

    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no trade files in {}", dir.display());
    }

    let stem = |p: &PathBuf| {
        p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
    };

    if let Some(want) = &args.plot {
        let Some(file) = files.iter().find(|p| stem(p) == *want) else {
            bail!("no trade file for stock {want:?} in {}", dir.display());
        };
        let days = load_days(file, cfg)?;
        let stat = |window: &ticklab::ingest::PhaseWindow, table: &TickTable| -> Vec<DayStats> {
            days.iter()
                .filter(|(d, _)| window.contains(*d))
                .map(|(d, trades)| day_stats(*d, trades, table, cfg.rv_grid))
                .collect()
        };
        let days_a = stat(phase_a, table_a);
        let days_b = stat(phase_b, table_b);
        let trades: Vec<TradeRecord> = days.into_iter().flat_map(|(_, t)| t).collect();
        let report = evaluate_stock(want, &trades, phase_a, table_a, phase_b, table_b, cfg)?;
        let forecast = report.outcome().map(|o| o.row.eta_predicted);
        let points = eta_history(&days_a, &days_b, forecast);
        let stdout = io::stdout();
        render_plot(&mut stdout.lock(), &points, cfg.format.delimiter)?;
        return Ok(());
    }

    let mut reports: Vec<StockReport> = Vec::new();
    for file in &files {
        let out = parse_trades_path(file, &cfg.format)
            .with_context(|| format!("parsing {}", file.display()))?;
        if !out.row_errors.is_empty() {
            eprintln!("{}: {} rows rejected", file.display(), out.row_errors.len());
        }
        reports.push(evaluate_stock(
            &stem(file),
            &out.records,
            phase_a,
            table_a,
            phase_b,
            table_b,
            cfg,
        )?);
    }
    let stdout = io::stdout();
    render_reports(&mut stdout.lock(), &reports, cli.format)?;
    Ok(())
}

/// Print rows in the chosen format: aligned plain text, delimiter-separated,
/// or an array of objects keyed by header.
fn emit_table(
    headers: &[&str],
    rows: &[Vec<String>],
    format: OutputFormat,
    delimiter: u8,
) -> Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match format {
        OutputFormat::Plain => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let print_row = |w: &mut dyn Write, cells: &[String]| -> io::Result<()> {
                let line: Vec<String> =
                    cells.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths[i])).collect();
                writeln!(w, "{}", line.join("  ").trim_end())
            };
            let head: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
            print_row(&mut w, &head)?;
            for row in rows {
                print_row(&mut w, row)?;
            }
        }
        OutputFormat::Csv => {
            let d = delimiter as char;
            writeln!(w, "{}", headers.join(&d.to_string()))?;
            for row in rows {
                writeln!(w, "{}", row.join(&d.to_string()))?;
            }
        }
        OutputFormat::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> = headers
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), serde_json::Value::String(c.clone())))
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &objects)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
