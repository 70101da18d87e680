//! With the identity map in place of the staircase the fractal operators
//! reduce to classical fractional calculus; compare with Grünwald–Letnikov.

use fractal_calculus::classical::{classical_caputo, classical_rl_derivative, classical_rl_integral};
use fractal_calculus::operators::{apply, OperatorSpec, Side};
use fractal_calculus::staircase::StaircaseFn;
use fractal_calculus::FractalFn;

fn main() -> fractal_calculus::Result<()> {
    let line = StaircaseFn::Identity;
    let phi = |x: f64| x * x;
    let f = FractalFn::of_staircase(phi);
    let int = OperatorSpec::rl_integral(Side::Left, 0.0, 0.5)?;
    let der = OperatorSpec::rl_derivative(Side::Left, 0.0, 0.5)?;
    let cap = OperatorSpec::caputo(Side::Left, 0.0, 0.5)?;
    for x in [0.25, 0.5, 1.0] {
        println!(
            "x = {x}: I {:.8}/{:.8}  D {:.8}/{:.8} (1.5045 x^1.5 = {:.8})  C {:.8}/{:.8}",
            apply(&int, &f, &line, x)?,
            classical_rl_integral(&phi, 0.5, Side::Left, 0.0, x)?,
            apply(&der, &f, &line, x)?,
            classical_rl_derivative(&phi, 0.5, Side::Left, 0.0, x)?,
            1.5045 * x.powf(1.5),
            apply(&cap, &f, &line, x)?,
            classical_caputo(&phi, 0.5, Side::Left, 0.0, x)?,
        );
    }
    Ok(())
}
