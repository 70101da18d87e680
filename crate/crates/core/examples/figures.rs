//! Writes the seven figure datasets as CSV and SVG into a directory
//! (first argument, default `figures`).

use fractal_calculus::figures::{write_figures, FigureFormat, FigureOptions};

fn main() -> fractal_calculus::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    let opts = FigureOptions::default();
    for format in [FigureFormat::Csv, FigureFormat::Svg] {
        for path in write_figures(dir.as_ref(), format, &opts)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}
