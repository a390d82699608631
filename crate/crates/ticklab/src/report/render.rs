//! Deterministic text output: result tables in three formats, and
//! plot-ready rows for daily eta history.

use std::io::{self, Write};
use std::str::FromStr;

use chrono::NaiveDate;
use serde::Serialize;

use super::{EvalOutcome, ScoreCard, StockReport};
use crate::estimator::DayStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "plain" => Ok(OutputFormat::Plain),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?}, want plain|csv|json")),
        }
    }
}

/// Star annotation: bracketed stars first, then full stars.
pub fn star_prefix(score: &ScoreCard) -> String {
    let mut s = "(*)".repeat(score.ambiguous_stars as usize);
    s.push_str(&"*".repeat(score.stars as usize));
    s
}

/// Point forecast with its band, two decimals: "0.26 [0.19,0.27]".
pub fn fmt_eta_ci(eta: f64, ci: (f64, f64)) -> String {
    format!("{:.2} [{:.2},{:.2}]", eta, ci.0, ci.1)
}

const HEADERS: [&str; 12] = [
    "stars",
    "name",
    "spread_before",
    "eta_before",
    "spread_after",
    "eta_after",
    "regime_after",
    "balance_after",
    "eta_predicted",
    "regime_predicted",
    "balance_predicted",
    "relative_error",
];

fn row_cells(out: &EvalOutcome) -> [String; 12] {
    let r = &out.row;
    [
        star_prefix(&out.score),
        r.name.clone(),
        format!("{:.2}", r.spread_before),
        format!("{:.2}", r.eta_before),
        format!("{:.2}", r.spread_after),
        format!("{:.2}", r.eta_after),
        r.regime_after.to_string(),
        r.balance_after.to_string(),
        fmt_eta_ci(r.eta_predicted, r.ci),
        r.regime_predicted.to_string(),
        r.balance_predicted.to_string(),
        out.score.relative_error.map_or(String::new(), |e| format!("{e:.4}")),
    ]
}

fn render_plain(w: &mut dyn Write, reports: &[StockReport]) -> io::Result<()> {
    let rows: Vec<[String; 12]> =
        reports.iter().filter_map(|r| r.outcome()).map(row_cells).collect();
    let mut widths: Vec<usize> = HEADERS.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let write_row = |w: &mut dyn Write, cells: &[String]| -> io::Result<()> {
        let line: Vec<String> =
            cells.iter().enumerate().map(|(i, c)| format!("{:<width$}", c, width = widths[i])).collect();
        writeln!(w, "{}", line.join("  ").trim_end())
    };
    let headers: Vec<String> = HEADERS.iter().map(|h| h.to_string()).collect();
    write_row(w, &headers)?;
    for row in &rows {
        write_row(w, row)?;
    }
    for r in reports {
        if let StockReport::Disqualified { name, reason } = r {
            writeln!(w, "{name}: disqualified ({reason})")?;
        }
    }
    Ok(())
}

fn render_csv(w: &mut dyn Write, reports: &[StockReport]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut headers: Vec<&str> = HEADERS.to_vec();
    headers.push("status");
    out.write_record(&headers).map_err(io_err)?;
    for r in reports {
        match r {
            StockReport::Evaluated(o) => {
                let mut cells = row_cells(o).to_vec();
                cells.push("evaluated".into());
                out.write_record(&cells).map_err(io_err)?;
            }
            StockReport::Disqualified { name, reason } => {
                let mut cells = vec![String::new(); HEADERS.len()];
                cells[1] = name.clone();
                cells.push(format!("disqualified: {reason}"));
                out.write_record(&cells).map_err(io_err)?;
            }
        }
    }
    out.flush()
}

fn io_err(e: csv::Error) -> io::Error {
    io::Error::new(io::ErrorKind::Other, e)
}

/// Write per-stock results in the chosen format.
pub fn render_reports(w: &mut dyn Write, reports: &[StockReport], format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Plain => render_plain(w, reports),
        OutputFormat::Csv => render_csv(w, reports),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, reports)?;
            writeln!(w)
        }
    }
}

/// One plot-data record: a dated value on a named series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotPoint {
    pub date: NaiveDate,
    pub value: f64,
    pub series: String,
}

fn span_line(days: &[DayStats], value: f64, series: &str, out: &mut Vec<PlotPoint>) {
    if let (Some(first), Some(last)) = (days.first(), days.last()) {
        out.push(PlotPoint { date: first.date, value, series: series.to_string() });
        out.push(PlotPoint { date: last.date, value, series: series.to_string() });
    }
}

/// Daily eta points for both phases, horizontal mean lines, and the
/// forecast line over the after phase.
pub fn eta_history(days_before: &[DayStats], days_after: &[DayStats], forecast: Option<f64>) -> Vec<PlotPoint> {
    let mut out = Vec::new();
    for (days, series) in [(days_before, "eta_daily_before"), (days_after, "eta_daily_after")] {
        for d in days {
            if let Some(eta) = d.eta {
                out.push(PlotPoint { date: d.date, value: eta, series: series.to_string() });
            }
        }
    }
    let mean = |days: &[DayStats]| {
        let etas: Vec<f64> = days.iter().filter_map(|d| d.eta).collect();
        (!etas.is_empty()).then(|| etas.iter().sum::<f64>() / etas.len() as f64)
    };
    if let Some(m) = mean(days_before) {
        span_line(days_before, m, "eta_mean_before", &mut out);
    }
    if let Some(m) = mean(days_after) {
        span_line(days_after, m, "eta_mean_after", &mut out);
    }
    if let Some(f) = forecast {
        span_line(days_after, f, "eta_forecast", &mut out);
    }
    out
}

/// Plot points as delimiter-separated "date,value,series" rows.
pub fn render_plot(w: &mut dyn Write, points: &[PlotPoint], delimiter: u8) -> io::Result<()> {
    let d = delimiter as char;
    writeln!(w, "date{d}value{d}series")?;
    for p in points {
        writeln!(w, "{}{d}{:.4}{d}{}", p.date.format("%Y-%m-%d"), p.value, p.series)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{EvalOutcome, StockRow};
    use crate::classify::{BalanceLabel, RegimeLabel};

    fn sample_outcome() -> EvalOutcome {
        EvalOutcome {
            row: StockRow {
                name: "Canon Inc".into(),
                spread_before: 1.04,
                eta_before: 0.06,
                spread_after: 1.13,
                eta_after: 0.23,
                regime_after: RegimeLabel::LargeTick,
                balance_after: BalanceLabel::MarketMakerFavorable,
                eta_predicted: 0.2578,
                ci: (0.19, 0.27),
                clamped: false,
                regime_predicted: RegimeLabel::LargeTick,
                balance_predicted: BalanceLabel::MarketMakerFavorable,
                days_used: (120, 100),
            },
            score: ScoreCard { stars: 2, ambiguous_stars: 0, relative_error: Some(0.1304) },
        }
    }

    #[test]
    fn star_prefix_orders_bracketed_first() {
        assert_eq!(star_prefix(&ScoreCard { stars: 2, ambiguous_stars: 0, relative_error: None }), "**");
        assert_eq!(star_prefix(&ScoreCard { stars: 1, ambiguous_stars: 1, relative_error: None }), "(*)*");
        assert_eq!(star_prefix(&ScoreCard { stars: 0, ambiguous_stars: 1, relative_error: None }), "(*)");
        assert_eq!(star_prefix(&ScoreCard { stars: 0, ambiguous_stars: 0, relative_error: None }), "");
    }

    #[test]
    fn eta_band_cell_uses_two_decimals() {
        assert_eq!(fmt_eta_ci(0.2578, (0.19, 0.27)), "0.26 [0.19,0.27]");
    }

    #[test]
    fn plain_table_contains_the_row_and_disqualifications() {
        let reports = vec![
            StockReport::Evaluated(sample_outcome()),
            StockReport::Disqualified { name: "Foo Corp".into(), reason: "tick value unchanged between the phases".into() },
        ];
        let mut buf = Vec::new();
        render_reports(&mut buf, &reports, OutputFormat::Plain).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("0.26 [0.19,0.27]"));
        assert!(text.contains("**"));
        assert!(text.contains("Foo Corp: disqualified"));
        assert!(text.lines().next().unwrap().starts_with("stars"));
    }

    #[test]
    fn empty_reports_render_header_only() {
        let mut buf = Vec::new();
        render_reports(&mut buf, &[], OutputFormat::Plain).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn csv_and_json_round_out_the_formats() {
        let reports = vec![StockReport::Evaluated(sample_outcome())];
        let mut buf = Vec::new();
        render_reports(&mut buf, &reports, OutputFormat::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("stars,name,"));
        assert!(text.contains("\"0.26 [0.19,0.27]\"") || text.contains("0.26 [0.19,0.27]"));

        let mut buf = Vec::new();
        render_reports(&mut buf, &reports, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["status"], "evaluated");
        assert_eq!(v[0]["row"]["name"], "Canon Inc");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("plain".parse::<OutputFormat>().unwrap(), OutputFormat::Plain);
        assert!("tsv".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn history_emits_daily_points_and_span_lines() {
        use chrono::NaiveDate;
        let day = |d: u32, eta: Option<f64>| DayStats {
            date: NaiveDate::from_ymd_opt(2014, 1, d).unwrap(),
            tick: Some(1.0),
            observed_ticks: vec![1.0],
            n_trades: 10,
            n_continuations: 1,
            n_alternations: 4,
            eta,
            avg_spread_ticks: Some(1.0),
            sigma: None,
        };
        let before = vec![day(6, Some(0.1)), day(7, None), day(8, Some(0.3))];
        let after = vec![day(20, Some(0.4)), day(21, Some(0.5))];
        let pts = eta_history(&before, &after, Some(0.44));
        let daily: Vec<_> = pts.iter().filter(|p| p.series == "eta_daily_before").collect();
        assert_eq!(daily.len(), 2);
        let mean_b: Vec<_> = pts.iter().filter(|p| p.series == "eta_mean_before").collect();
        assert_eq!(mean_b.len(), 2);
        assert!((mean_b[0].value - 0.2).abs() < 1e-12);
        assert_eq!(mean_b[0].date, NaiveDate::from_ymd_opt(2014, 1, 6).unwrap());
        assert_eq!(mean_b[1].date, NaiveDate::from_ymd_opt(2014, 1, 8).unwrap());
        let fc: Vec<_> = pts.iter().filter(|p| p.series == "eta_forecast").collect();
        assert_eq!(fc.len(), 2);
        assert!((fc[0].value - 0.44).abs() < 1e-12);

        let mut buf = Vec::new();
        render_plot(&mut buf, &pts, b',').unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("date,value,series"));
        assert!(text.contains("2014-01-06,0.1000,eta_daily_before"));
    }
}
