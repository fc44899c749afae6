//! Rendering report contents as aligned text or CSV.
//!
//! Text output rounds (3 decimals for summaries and quantiles, 1 for
//! efficiencies) and prints nonzero values that would round to zero as
//! `<0.001`. CSV output keeps full precision.

use std::fmt::Write as _;

use ebcount_core::{EfficiencyScope, IndexKind, Method, ProfileKind};

use crate::report::RunReport;

pub const SUMMARY_DECIMALS: usize = 3;
pub const EFFICIENCY_DECIMALS: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    Summary,
    Quantiles,
    Efficiency,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64, usize),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v, d) => format_rounded(*v, *d),
            Cell::Empty => String::new(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v, _) => v.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

/// Rounds to `decimals` places; nonzero values that would print as zero
/// become `<0.001` (or `>-0.001`).
pub fn format_rounded(v: f64, decimals: usize) -> String {
    if v.is_nan() {
        return "NA".into();
    }
    let half_unit = 0.5 * 10f64.powi(-(decimals as i32));
    if v != 0.0 && v.abs() < half_unit {
        let unit = format!("{:.*}", decimals, 10f64.powi(-(decimals as i32)));
        return if v > 0.0 {
            format!("<{unit}")
        } else {
            format!(">-{unit}")
        };
    }
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.decimals$}")
}

/// One titled block, typically one per index.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub key: String,
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn render_text(blocks: &[Block]) -> String {
    let mut out = String::new();
    for (b, block) in blocks.iter().enumerate() {
        if b > 0 {
            out.push('\n');
        }
        let rows: Vec<Vec<String>> = block
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let mut widths: Vec<usize> = block.header.iter().map(|h| h.chars().count()).collect();
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let _ = writeln!(out, "{}", block.title);
        let line = |cells: &[String], numeric: &dyn Fn(usize) -> bool| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                if numeric(i) {
                    let _ = write!(s, "{c:>w$}", w = widths[i]);
                } else {
                    let _ = write!(s, "{c:<w$}", w = widths[i]);
                }
            }
            s.trim_end().to_string()
        };
        // numbers right-aligned, labels left-aligned, headers follow their column
        let is_numeric_col = |i: usize| {
            block
                .rows
                .iter()
                .any(|r| matches!(r.get(i), Some(Cell::Num(..))))
        };
        let _ = writeln!(out, "{}", line(&block.header, &is_numeric_col));
        let total: usize = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
        let _ = writeln!(out, "{}", "-".repeat(total));
        for (r, raw) in rows.iter().zip(&block.rows) {
            let numeric = |i: usize| matches!(raw.get(i), Some(Cell::Num(..)));
            let _ = writeln!(out, "{}", line(r, &numeric));
        }
    }
    out
}

/// All blocks as one CSV table with a leading `index` column.
pub fn render_csv(blocks: &[Block]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = blocks.first() {
        let header = std::iter::once("index".to_string()).chain(first.header.iter().cloned());
        w.write_record(header).expect("in-memory write");
    }
    for block in blocks {
        for row in &block.rows {
            let record = std::iter::once(block.key.clone()).chain(row.iter().map(Cell::csv));
            w.write_record(record).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 input")
}

fn scenario_cells(report: &RunReport, id: &str) -> Vec<Cell> {
    match report.scenario(id) {
        Some(p) => vec![
            Cell::Text(p.scenario.profile_kind.name().into()),
            Cell::Text(p.scenario.alpha.to_string()),
            Cell::Text(p.scenario.beta.to_string()),
            Cell::Text(p.scenario.gamma.to_string()),
        ],
        None => vec![Cell::Text(id.into()), Cell::Empty, Cell::Empty, Cell::Empty],
    }
}

const SCENARIO_HEADER: [&str; 4] = ["profile", "alpha", "beta", "gamma"];

fn block_title(index: IndexKind) -> String {
    format!("{} ({})", index.title(), index.symbol())
}

/// Scenario ids in declaration order, restricted to those with summaries.
fn summarized_ids(report: &RunReport) -> Vec<&str> {
    let mut ids: Vec<&str> = Vec::new();
    for p in &report.metadata.scenarios {
        if report.summaries.iter().any(|s| s.scenario_id == p.id) {
            ids.push(&p.id);
        }
    }
    ids
}

/// Mean, SD, bias and RMSE of each estimator per scenario, one block per index.
pub fn summary_blocks(report: &RunReport) -> Vec<Block> {
    let d = SUMMARY_DECIMALS;
    let mut header: Vec<String> = SCENARIO_HEADER.iter().map(|s| s.to_string()).collect();
    header.push("true".into());
    for m in [Method::Eb, Method::Ml] {
        for stat in ["mean", "sd", "bias", "rmse"] {
            header.push(format!("{} {stat}", m.label()));
        }
    }
    let ids = summarized_ids(report);
    IndexKind::ALL
        .into_iter()
        .map(|index| {
            let mut rows = Vec::new();
            for id in &ids {
                let find = |m: Method| {
                    report
                        .summaries
                        .iter()
                        .find(|s| s.scenario_id == *id && s.index == index && s.estimator == m)
                };
                let (Some(eb), Some(ml)) = (find(Method::Eb), find(Method::Ml)) else {
                    continue;
                };
                let mut row = scenario_cells(report, id);
                row.push(Cell::Num(eb.true_value, d));
                for s in [eb, ml] {
                    let s = &s.summary;
                    row.push(Cell::Num(s.mean, d));
                    row.push(s.sd.map_or(Cell::Empty, |v| Cell::Num(v, d)));
                    row.push(Cell::Num(s.bias, d));
                    row.push(Cell::Num(s.rmse, d));
                }
                rows.push(row);
            }
            Block {
                key: index.symbol().into(),
                title: block_title(index),
                header: header.clone(),
                rows,
            }
        })
        .collect()
}

/// Five-number summaries per scenario and estimator, one block per index.
pub fn quantile_blocks(report: &RunReport) -> Vec<Block> {
    let d = SUMMARY_DECIMALS;
    let mut header: Vec<String> = SCENARIO_HEADER.iter().map(|s| s.to_string()).collect();
    header.extend(
        ["estimator", "min", "1st q.", "median", "3rd q.", "max"]
            .iter()
            .map(|s| s.to_string()),
    );
    let ids = summarized_ids(report);
    IndexKind::ALL
        .into_iter()
        .map(|index| {
            let mut rows = Vec::new();
            for id in &ids {
                for m in [Method::Eb, Method::Ml] {
                    let Some(s) = report
                        .summaries
                        .iter()
                        .find(|s| s.scenario_id == *id && s.index == index && s.estimator == m)
                    else {
                        continue;
                    };
                    let q = s.summary.quantiles;
                    let mut row = scenario_cells(report, id);
                    row.push(Cell::Text(m.label().into()));
                    for v in [q.min, q.q1, q.median, q.q3, q.max] {
                        row.push(Cell::Num(v, d));
                    }
                    rows.push(row);
                }
            }
            Block {
                key: index.symbol().into(),
                title: block_title(index),
                header: header.clone(),
                rows,
            }
        })
        .collect()
}

/// Relative efficiencies: one row per profile with a column per setting,
/// then the partial (per profile) and total (per index) columns.
pub fn efficiency_blocks(report: &RunReport) -> Vec<Block> {
    let d = EFFICIENCY_DECIMALS;
    let mut settings: Vec<&str> = Vec::new();
    let mut profiles: Vec<ProfileKind> = Vec::new();
    for p in &report.metadata.scenarios {
        if !settings.contains(&p.setting.as_str()) {
            settings.push(&p.setting);
        }
        if !profiles.contains(&p.scenario.profile_kind) {
            profiles.push(p.scenario.profile_kind);
        }
    }
    let mut header = vec!["profile".to_string()];
    header.extend(settings.iter().map(|s| s.to_string()));
    header.push("partial".into());
    header.push("total".into());

    IndexKind::ALL
        .into_iter()
        .map(|index| {
            let cells: Vec<_> = report
                .efficiency
                .iter()
                .filter(|c| c.index == index)
                .collect();
            let total = cells
                .iter()
                .find(|c| c.scope == EfficiencyScope::Total)
                .map(|c| c.value);
            let rows = profiles
                .iter()
                .enumerate()
                .map(|(i, &profile)| {
                    let mut row = vec![Cell::Text(profile.name().into())];
                    let value = |scope, setting: Option<&str>| {
                        cells
                            .iter()
                            .find(|c| {
                                c.scope == scope
                                    && c.profile == Some(profile)
                                    && c.setting.as_deref() == setting
                            })
                            .map_or(Cell::Empty, |c| Cell::Num(c.value, d))
                    };
                    for s in &settings {
                        row.push(value(EfficiencyScope::Specific, Some(s)));
                    }
                    row.push(value(EfficiencyScope::Partial, None));
                    row.push(match (i, total) {
                        (0, Some(t)) => Cell::Num(t, d),
                        _ => Cell::Empty,
                    });
                    row
                })
                .collect();
            Block {
                key: index.symbol().into(),
                title: block_title(index),
                header: header.clone(),
                rows,
            }
        })
        .collect()
}

pub fn blocks(report: &RunReport, kind: TableKind) -> Vec<Block> {
    match kind {
        TableKind::Summary => summary_blocks(report),
        TableKind::Quantiles => quantile_blocks(report),
        TableKind::Efficiency => efficiency_blocks(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_conventions() {
        assert_eq!(format_rounded(5.0889, 3), "5.089");
        assert_eq!(format_rounded(0.0004, 3), "<0.001");
        assert_eq!(format_rounded(-0.0004, 3), ">-0.001");
        assert_eq!(format_rounded(0.0, 3), "0.000");
        assert_eq!(format_rounded(-0.0, 3), "0.000");
        assert_eq!(format_rounded(0.0005, 3), "0.001");
        assert_eq!(format_rounded(42.44, 1), "42.4");
        assert_eq!(format_rounded(4.47, 1), "4.5");
        assert_eq!(format_rounded(f64::NAN, 1), "NA");
    }

    #[test]
    fn text_and_csv_rendering() {
        let blocks = vec![Block {
            key: "H".into(),
            title: "Shannon entropy (H)".into(),
            header: vec!["profile".into(), "value".into()],
            rows: vec![
                vec![Cell::Text("smooth".into()), Cell::Num(1.23456, 3)],
                vec![Cell::Text("quasi-uniform".into()), Cell::Empty],
            ],
        }];
        let text = render_text(&blocks);
        assert_eq!(
            text,
            "Shannon entropy (H)\n\
             profile        value\n\
             --------------------\n\
             smooth         1.235\n\
             quasi-uniform\n"
        );
        let csv = render_csv(&blocks);
        assert_eq!(
            csv,
            "index,profile,value\nH,smooth,1.23456\nH,quasi-uniform,\n"
        );
    }
}
