//! CSV and SVG emitters for sampled data.
//!
//! CSV: header `x,value[,value2,…]`, one row per abscissa, values in Rust's
//! shortest round-trip decimal form, `\n` line endings. Output depends only
//! on the data, so repeated runs are byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::falpha::GridFunction;

/// An abscissa column plus one or more value columns of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    xs: Vec<f64>,
    columns: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl Table {
    pub fn new(xs: Vec<f64>) -> Self {
        Table {
            xs,
            columns: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Adds a value column; `label` is used only in the SVG legend.
    pub fn with_column(mut self, label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.xs.len() {
            return Err(Error::InvalidParameter(format!(
                "column has {} values for {} abscissae",
                values.len(),
                self.xs.len()
            )));
        }
        self.columns.push(values);
        self.labels.push(label.into());
        Ok(self)
    }

    pub fn from_grid(g: &GridFunction) -> Self {
        Table {
            xs: g.xs().to_vec(),
            columns: vec![g.values().to_vec()],
            labels: vec![g.label().to_string()],
        }
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn header(&self) -> String {
        let mut h = String::from("x");
        for i in 0..self.columns.len() {
            if i == 0 {
                h.push_str(",value");
            } else {
                let _ = write!(h, ",value{}", i + 1);
            }
        }
        h
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for (i, x) in self.xs.iter().enumerate() {
            let _ = write!(out, "{x}");
            for col in &self.columns {
                let _ = write!(out, ",{}", col[i]);
            }
            out.push('\n');
        }
        out
    }

    /// A self-contained line plot; non-finite samples break the polyline.
    pub fn to_svg(&self, title: &str) -> String {
        const W: f64 = 640.0;
        const H: f64 = 400.0;
        const PAD: f64 = 48.0;
        const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

        let finite = |v: &&f64| v.is_finite();
        let (x0, x1) = bounds(self.xs.iter().filter(finite).copied());
        let (y0, y1) = bounds(self.columns.iter().flatten().filter(finite).copied());
        let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
        let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            W / 2.0,
            escape(title)
        );
        let _ = writeln!(
            s,
            r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
            H - PAD,
            W - PAD
        );
        for (label, (x, anchor)) in [
            (x0, (PAD, "start")),
            (x1, (W - PAD, "end")),
        ] {
            let _ = writeln!(
                s,
                r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{}</text>"#,
                H - PAD + 16.0,
                fmt_tick(label)
            );
        }
        for (label, y) in [(y0, H - PAD), (y1, PAD)] {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
                PAD - 4.0,
                y + 4.0,
                fmt_tick(label)
            );
        }
        for (k, col) in self.columns.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let mut d = String::new();
            let mut pen_down = false;
            for (x, y) in self.xs.iter().zip(col) {
                if !(x.is_finite() && y.is_finite()) {
                    pen_down = false;
                    continue;
                }
                let _ = write!(d, "{}{:.2} {:.2} ", if pen_down { "L" } else { "M" }, sx(*x), sy(*y));
                pen_down = true;
            }
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                d.trim_end()
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
                PAD + 8.0,
                PAD + 14.0 * (k as f64 + 1.0),
                escape(&self.labels[k])
            );
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn write_svg(&self, path: &Path, title: &str) -> Result<()> {
        std::fs::write(path, self.to_svg(title))?;
        Ok(())
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{:.3}", v)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
