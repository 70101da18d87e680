//! Datasets for the seven figures.
//!
//! | name | content |
//! |------|---------|
//! | fig1 | pre-fractal intervals, stages 0–5: `x` left end, `value` right end, `value2` stage |
//! | fig2 | staircase `S(x)` on `[0, 1]` |
//! | fig3 | `Γ(S(x))` and classical `Γ(x)` |
//! | fig4 | `x²`, `S(x)²` and their order-1/2 RL derivatives |
//! | fig5 | `x²`, `S(x)²` and their order-1/2 RL integrals |
//! | fig6 | Examples 1 and 3 on the Cantor set and on the real line |
//! | fig7 | Example 2 on the Cantor set and on the real line |

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::falpha::{linspace, FractalFn};
use crate::operators::{self, KernelConvention, OperatorSpec, Side};
use crate::output::Table;
use crate::solutions::{derive, ExampleProblem, DEFAULT_LAMBDA};
use crate::special::{gamma_fractal, GammaMode};
use crate::staircase::{prefractal_intervals, StaircaseFn};

pub const FIGURE_NAMES: [&str; 7] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFormat {
    Csv,
    Svg,
}

impl FigureFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FigureFormat::Csv => "csv",
            FigureFormat::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    Lines,
    /// Each row is a horizontal segment from `x` to `value` at height `value2`.
    Intervals,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub name: &'static str,
    pub title: &'static str,
    pub style: PlotStyle,
    pub table: Table,
}

impl Figure {
    pub fn to_svg(&self) -> String {
        match self.style {
            PlotStyle::Lines => self.table.to_svg(self.title),
            PlotStyle::Intervals => intervals_svg(&self.table, self.title),
        }
    }

    pub fn render(&self, format: FigureFormat) -> String {
        match format {
            FigureFormat::Csv => self.table.to_csv(),
            FigureFormat::Svg => self.to_svg(),
        }
    }
}

/// Settings shared by all figures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FigureOptions {
    /// The fractal staircase; the real-line curves always use the identity map.
    pub sf: StaircaseFn,
    pub convention: KernelConvention,
}

pub fn figure(name: &str, opts: &FigureOptions) -> Result<Figure> {
    match name {
        "fig1" => fig1(),
        "fig2" => fig2(opts),
        "fig3" => fig3(opts),
        "fig4" => fig_operator(opts, false),
        "fig5" => fig_operator(opts, true),
        "fig6" => fig6(opts),
        "fig7" => fig7(opts),
        _ => Err(Error::InvalidParameter(format!("unknown figure '{name}'"))),
    }
}

pub fn all_figures(opts: &FigureOptions) -> Result<Vec<Figure>> {
    FIGURE_NAMES.iter().map(|n| figure(n, opts)).collect()
}

/// Writes every figure into `dir` as `<name>.<ext>` and returns the paths.
pub fn write_figures(dir: &Path, format: FigureFormat, opts: &FigureOptions) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for fig in all_figures(opts)? {
        let path = dir.join(format!("{}.{}", fig.name, format.extension()));
        std::fs::write(&path, fig.render(format))?;
        paths.push(path);
    }
    Ok(paths)
}

fn fig1() -> Result<Figure> {
    let (mut left, mut right, mut stage) = (Vec::new(), Vec::new(), Vec::new());
    for depth in 0..=5 {
        for (a, b) in prefractal_intervals(depth)? {
            left.push(a);
            right.push(b);
            stage.push(depth as f64);
        }
    }
    Ok(Figure {
        name: "fig1",
        title: "Pre-fractal stages of the triadic Cantor set",
        style: PlotStyle::Intervals,
        table: Table::new(left).with_column("right end", right)?.with_column("stage", stage)?,
    })
}

fn fig2(opts: &FigureOptions) -> Result<Figure> {
    let xs = linspace(0.0, 1.0, 1001)?;
    let s = sample(&xs, |x| opts.sf.eval(x))?;
    Ok(Figure {
        name: "fig2",
        title: "Staircase function S(x)",
        style: PlotStyle::Lines,
        table: Table::new(xs).with_column("S(x)", s)?,
    })
}

fn fig3(opts: &FigureOptions) -> Result<Figure> {
    let xs = linspace(0.1, 3.0, 291)?;
    let fractal = sample(&xs, |x| gamma_fractal(x, GammaMode::StaircaseComposed, &opts.sf))?;
    let classical = sample(&xs, |x| gamma_fractal(x, GammaMode::RawArgument, &opts.sf))?;
    Ok(Figure {
        name: "fig3",
        title: "Gamma(S(x)) and classical Gamma(x)",
        style: PlotStyle::Lines,
        table: Table::new(xs)
            .with_column("Gamma(S(x))", fractal)?
            .with_column("Gamma(x)", classical)?,
    })
}

fn fig_operator(opts: &FigureOptions, integral: bool) -> Result<Figure> {
    let xs = linspace(0.05, 1.0, 96)?;
    let spec = if integral {
        OperatorSpec::rl_integral(Side::Left, 0.0, 0.5)?
    } else {
        OperatorSpec::rl_derivative(Side::Left, 0.0, 0.5)?
    }
    .with_convention(opts.convention);
    let square = FractalFn::of_staircase(|u| u * u);
    let line = StaircaseFn::Identity;
    let x2 = sample(&xs, |x| Ok(x * x))?;
    let s2 = sample(&xs, |x| opts.sf.eval(x).map(|u| u * u))?;
    let op_x2 = sample(&xs, |x| operators::apply(&spec, &square, &line, x))?;
    let op_s2 = sample(&xs, |x| operators::apply(&spec, &square, &opts.sf, x))?;
    let (name, title, tag) = if integral {
        ("fig5", "x^2, S(x)^2 and their order-1/2 integrals", "I")
    } else {
        ("fig4", "x^2, S(x)^2 and their order-1/2 derivatives", "D")
    };
    Ok(Figure {
        name,
        title,
        style: PlotStyle::Lines,
        table: Table::new(xs)
            .with_column("x^2", x2)?
            .with_column("S(x)^2", s2)?
            .with_column(format!("{tag}^1/2 x^2"), op_x2)?
            .with_column(format!("{tag}^1/2 S(x)^2"), op_s2)?,
    })
}

/// Derived solution of example `id` sampled on `xs`, once through the
/// staircase and once through the identity map.
fn example_columns(id: u8, opts: &FigureOptions, xs: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let problem = ExampleProblem::paper(id, DEFAULT_LAMBDA)?;
    let derivation = derive(&problem)?;
    let a = problem.operator.terminal();
    let on = |sf: StaircaseFn| -> Result<Vec<f64>> {
        let base = sf.eval(a)?;
        sample(xs, |x| derivation.eval_w(sf.eval(x)? - base))
    };
    Ok((on(opts.sf)?, on(StaircaseFn::Identity)?))
}

fn fig6(opts: &FigureOptions) -> Result<Figure> {
    let xs = linspace(0.01, 1.0, 199)?;
    let (e1_cantor, e1_line) = example_columns(1, opts, &xs)?;
    let (e3_cantor, e3_line) = example_columns(3, opts, &xs)?;
    Ok(Figure {
        name: "fig6",
        title: "Examples 1 and 3 on the Cantor set and the real line",
        style: PlotStyle::Lines,
        table: Table::new(xs)
            .with_column("example 1, Cantor set", e1_cantor)?
            .with_column("example 1, real line", e1_line)?
            .with_column("example 3, Cantor set", e3_cantor)?
            .with_column("example 3, real line", e3_line)?,
    })
}

fn fig7(opts: &FigureOptions) -> Result<Figure> {
    let xs = linspace(1.0, 2.0, 201)?;
    let (cantor, line) = example_columns(2, opts, &xs)?;
    Ok(Figure {
        name: "fig7",
        title: "Example 2 on the Cantor set and the real line",
        style: PlotStyle::Lines,
        table: Table::new(xs)
            .with_column("example 2, Cantor set", cantor)?
            .with_column("example 2, real line", line)?,
    })
}

fn sample(xs: &[f64], f: impl Fn(f64) -> Result<f64>) -> Result<Vec<f64>> {
    xs.iter().map(|&x| f(x)).collect()
}

fn intervals_svg(table: &Table, title: &str) -> String {
    use std::fmt::Write as _;
    const W: f64 = 640.0;
    const PAD: f64 = 40.0;
    const ROW: f64 = 36.0;
    let stages = &table.columns()[1];
    let top = stages.iter().copied().fold(0.0, f64::max);
    let h = 2.0 * PAD + ROW * (top + 1.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{h}" viewBox="0 0 {W} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>"#,
        W / 2.0
    );
    let sx = |x: f64| PAD + x * (W - 2.0 * PAD);
    for ((a, b), k) in table.xs().iter().zip(&table.columns()[0]).zip(stages) {
        let y = PAD + ROW * (k + 0.5);
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{y}" x2="{:.3}" y2="{y}" stroke="black" stroke-width="6"/>"#,
            sx(*a),
            sx(*b)
        );
    }
    s.push_str("</svg>\n");
    s
}
