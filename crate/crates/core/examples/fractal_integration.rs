//! F^α-derivative, F^α-integral and the fractal exponential.

use fractal_calculus::falpha::{
    f_alpha_derivative, f_alpha_integral, fractal_exp, stieltjes_sum, FractalFn, DEFAULT_DERIVATIVE_STEP,
};
use fractal_calculus::staircase::StaircaseFn;

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();
    let square = FractalFn::of_staircase(|u| u * u);
    let h = DEFAULT_DERIVATIVE_STEP;
    println!("D S(x)^2 at x = 1/4: {:.8} (exact 2/3)", f_alpha_derivative(&square, &sf, 0.25, h)?);
    println!("D S(x)^2 at x = 1/2 (gap): {}", f_alpha_derivative(&square, &sf, 0.5, h)?);

    let s = FractalFn::of_staircase(|u| u);
    let decay = FractalFn::of_staircase(|u| (-u).exp());
    println!("int_0^1 S dS     = {:.12} (exact 1/2)", f_alpha_integral(&s, &sf, 0.0, 1.0, 64)?);
    println!("int_0^1 e^-S dS  = {:.12} (exact {:.12})", f_alpha_integral(&decay, &sf, 0.0, 1.0, 64)?, 1.0 - (-1f64).exp());
    println!("Stieltjes sum    = {:.6} (slow x-partition cross-check)", stieltjes_sum(&s, &sf, 0.0, 1.0, 3usize.pow(8))?);

    // functions of raw x are pulled back through the quantile
    let x_squared = FractalFn::of_x(|x| x * x);
    println!("int_0^1 x^2 dS   = {:.10}", f_alpha_integral(&x_squared, &sf, 0.0, 1.0, 64)?);

    for t in [0.0, 2.0 / 3.0, 1.0] {
        println!("exp(-S({t:.4})) = {:.10}", fractal_exp(&sf, t)?);
    }
    Ok(())
}
