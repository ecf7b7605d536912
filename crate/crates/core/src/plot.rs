//! Static SVG charts of experiment CSV files.
//!
//! The output depends only on the records: numbers are printed with fixed
//! precision and nothing depends on time or locale.

use std::fmt::Write;

use crate::experiment::{aggregate, CellSummary, TrialRecord};
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;

/// Parameter on the horizontal axis: the first of n, ε, k, q, L that
/// varies across cells, else the cell position.
fn x_axis(cells: &[CellSummary]) -> (String, Vec<f64>) {
    for key in ["n", "epsilon", "k", "q", "L"] {
        let xs: Vec<Option<f64>> = cells.iter().map(|c| c.params[key].as_f64()).collect();
        if xs.iter().all(Option::is_some) {
            let xs: Vec<f64> = xs.into_iter().flatten().collect();
            if xs.iter().any(|x| *x != xs[0]) {
                return (key.to_string(), xs);
            }
        }
    }
    ("cell".to_string(), (0..cells.len()).map(|i| i as f64).collect())
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    }
}

/// Renders `measure` from `records` as an SVG 1.1 document. With several
/// cells the chart shows cell means with ±1 standard-error bars; with a
/// single cell it shows every trial's value against the trial index.
pub fn render_svg(records: &[TrialRecord], measure: Option<&str>) -> Result<String> {
    let measure = match measure {
        Some(m) => m.to_string(),
        None => records
            .first()
            .map(|r| r.measure_name.clone())
            .ok_or_else(|| Error::invalid("no records to plot"))?,
    };
    let selected: Vec<TrialRecord> = records.iter().filter(|r| r.measure_name == measure).cloned().collect();
    if selected.is_empty() {
        return Err(Error::invalid(format!("no records for measure {measure:?}")));
    }
    let cells = aggregate(&selected);
    let (x_label, points, bars): (String, Vec<(f64, f64)>, Vec<f64>) = if cells.len() > 1 {
        let (label, xs) = x_axis(&cells);
        let pts = xs.iter().zip(&cells).map(|(x, c)| (*x, c.mean)).collect();
        (label, pts, cells.iter().map(|c| c.stderr).collect())
    } else {
        let pts = selected.iter().map(|r| (r.trial as f64, r.measure_value)).collect();
        ("trial".to_string(), pts, vec![0.0; selected.len()])
    };
    let (x0, x1) = bounds(points.iter().map(|p| p.0));
    let (y0, y1) = bounds(points.iter().zip(&bars).flat_map(|(p, b)| [p.1 - b, p.1 + b]));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let w = &mut s;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).ok();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .ok();
    writeln!(w, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).ok();
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    writeln!(
        w,
        r#"<path d="M{left:.2} {top:.2} L{left:.2} {bottom:.2} L{right:.2} {bottom:.2}" stroke="black" fill="none"/>"#
    )
    .ok();
    for (v, anchor_y) in [(y0, bottom), (y1, top)] {
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
            left - 4.0,
            anchor_y + 4.0,
            fmt_tick(v)
        )
        .ok();
    }
    for (v, anchor_x) in [(x0, left), (x1, right)] {
        writeln!(
            w,
            r#"<text x="{anchor_x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            bottom + 16.0,
            fmt_tick(v)
        )
        .ok();
    }
    writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(&x_label)
    )
    .ok();
    writeln!(
        w,
        r#"<text x="16" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&measure)
    )
    .ok();
    if cells.len() > 1 {
        let path: Vec<String> = points
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{}{:.2} {:.2}", if i == 0 { "M" } else { "L" }, sx(p.0), sy(p.1)))
            .collect();
        writeln!(w, r##"<path d="{}" stroke="#1f77b4" fill="none"/>"##, path.join(" ")).ok();
    }
    for (p, b) in points.iter().zip(&bars) {
        if *b > 0.0 {
            writeln!(
                w,
                r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#1f77b4"/>"##,
                sy(p.1 - b),
                sy(p.1 + b),
                x = sx(p.0)
            )
            .ok();
        }
        writeln!(w, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#1f77b4"/>"##, sx(p.0), sy(p.1)).ok();
    }
    writeln!(w, "</svg>").ok();
    Ok(s)
}

fn fmt_tick(v: f64) -> String {
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
