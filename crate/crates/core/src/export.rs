//! CSV and SVG output of scan tables.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scan::{ScanRow, ScanTable};

/// Formats `v` with 12 significant digits, `%.12g` style.
pub fn format_g12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// CSV text: header `axis,<columns>`, one line per row, `\n` line endings.
pub fn csv_string(table: &ScanTable) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::arg("rows", "nothing to write"));
    }
    let mut out = String::from("axis");
    for c in &table.columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for row in &table.rows {
        if row.values.len() != table.columns.len() {
            return Err(Error::DimensionMismatch(format!(
                "row at {} has {} values for {} columns",
                row.axis,
                row.values.len(),
                table.columns.len()
            )));
        }
        out.push_str(&format_g12(row.axis));
        for &v in &row.values {
            if !v.is_finite() {
                return Err(Error::arg("rows", format!("non-finite value at axis {}", row.axis)));
            }
            out.push(',');
            out.push_str(&format_g12(v));
        }
        out.push('\n');
    }
    Ok(out)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit_csv(table: &ScanTable, path: &Path) -> Result<()> {
    write_file(path, &csv_string(table)?)
}

/// Parses CSV text produced by [`csv_string`].
pub fn parse_csv(text: &str) -> Result<ScanTable> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::arg("csv", "empty input"))?;
    let mut cols = header.split(',');
    if cols.next() != Some("axis") {
        return Err(Error::arg("csv", "first column must be `axis`"));
    }
    let columns: Vec<String> = cols.map(str::to_string).collect();
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let nums: Vec<f64> = line
            .split(',')
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| Error::arg("csv", format!("line {}: {e}", n + 2)))
            })
            .collect::<Result<_>>()?;
        if nums.len() != columns.len() + 1 {
            return Err(Error::arg("csv", format!("line {} has {} fields", n + 2, nums.len())));
        }
        rows.push(ScanRow {
            axis: nums[0],
            values: nums[1..].to_vec(),
        });
    }
    Ok(ScanTable { columns, rows })
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Self-contained SVG line plot: one polyline per column, legend from column names.
pub fn svg_string(table: &ScanTable, x_label: &str) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::arg("rows", "nothing to plot"));
    }
    let (w, h) = (900.0, 540.0);
    let (left, right, top, bottom) = (80.0, 200.0, 30.0, 60.0);
    let (pw, ph) = (w - left - right, h - top - bottom);

    let x0 = table.rows.first().map(|r| r.axis).unwrap_or(0.0);
    let x1 = table.rows.last().map(|r| r.axis).unwrap_or(1.0);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in &table.rows {
        for &v in &r.values {
            y0 = y0.min(v);
            y1 = y1.max(v);
        }
    }
    if !(y0.is_finite() && y1.is_finite()) {
        return Err(Error::arg("rows", "non-finite values"));
    }
    if y1 - y0 < 1e-12 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let xspan = if x1 > x0 { x1 - x0 } else { 1.0 };
    let sx = |x: f64| left + (x - x0) / xspan * pw;
    let sy = |y: f64| top + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#ccc"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            top,
            top + ph,
            top + ph + 18.0,
            format_tick(xv)
        );
        let _ = writeln!(
            s,
            r##"<line x1="{left}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ccc"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            left + pw,
            left - 6.0,
            py + 4.0,
            format_tick(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        h - 15.0,
        escape(x_label)
    );

    for (c, name) in table.columns.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        let pts: Vec<String> = table
            .rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", sx(r.axis), sy(r.values[c])))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = top + 10.0 + 18.0 * c as f64;
        let lx = left + pw + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn format_tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else {
        trim_zeros(format!("{v:.4}"))
    }
}

pub fn emit_plot(table: &ScanTable, x_label: &str, path: &Path) -> Result<()> {
    write_file(path, &svg_string(table, x_label)?)
}
