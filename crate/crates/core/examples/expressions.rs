//! The expression grammar used for function arguments on the command line.

use fractal_calculus::expr::Expr;
use fractal_calculus::operators::{apply, OperatorSpec, Side};
use fractal_calculus::staircase::StaircaseFn;

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();
    let spec = OperatorSpec::rl_integral(Side::Left, 0.0, 0.5)?;
    for src in ["S(x)^2", "exp(-S(x)) * sin(pi*S(x))", "x^2", "1 + 2*x"] {
        let e: Expr = src.parse()?;
        let f = e.to_fractal_fn(sf);
        println!(
            "{src:<28} uses raw x: {:<5}  value at 1/4: {:.8}  I^1/2 at 1: {:.8}",
            e.uses_x(),
            f.at_x(&sf, 0.25)?,
            apply(&spec, &f, &sf, 1.0)?
        );
    }
    println!("{}", "sin(".parse::<Expr>().unwrap_err());
    Ok(())
}
