//! Gamma (both readings), fractal Beta and Mittag-Leffler functions.

use fractal_calculus::special::{
    beta_fractal, beta_fractal_quadrature, gamma_classical, gamma_fractal, gamma_fractal_quadrature, ml,
    GammaMode,
};
use fractal_calculus::staircase::StaircaseFn;

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();
    println!("Gamma(1/2) = {:.12} (sqrt(pi) = {:.12})", gamma_classical(0.5)?, std::f64::consts::PI.sqrt());
    for x in [1.0, 4.0 / 3.0, 2.5] {
        println!(
            "x = {x:.4}: Gamma(S(x)) = {:.10}, Gamma(x) = {:.10}, quadrature = {:.8}",
            gamma_fractal(x, GammaMode::StaircaseComposed, &sf)?,
            gamma_fractal(x, GammaMode::RawArgument, &sf)?,
            gamma_fractal_quadrature(x, &sf, 40.0)?
        );
    }
    for (r, w) in [(0.5, 0.5), (1.5, 2.0), (2.0, 1.5)] {
        println!(
            "B({r}, {w}) = {:.12}   quadrature {:.12}",
            beta_fractal(r, w)?,
            beta_fractal_quadrature(&sf, r, w)?
        );
    }
    let u: f64 = 1.5;
    println!("E_1,1({u}) = {:.12}  e^u        = {:.12}", ml(1.0, 1.0, u)?, u.exp());
    println!("E_1,2({u}) = {:.12}  (e^u-1)/u  = {:.12}", ml(1.0, 2.0, u)?, u.exp_m1() / u);
    println!("E_2,1({u}^2) = {:.12}  cosh u   = {:.12}", ml(2.0, 1.0, u * u)?, u.cosh());
    println!("E_2,2({u}^2) = {:.12}  sinh(u)/u = {:.12}", ml(2.0, 2.0, u * u)?, u.sinh() / u);
    println!("E_1/2,1/2(-1) = {:.12}", ml(0.5, 0.5, -1.0)?);
    Ok(())
}
