//! Transform algebra in σ, rule-based inversion, the numeric transform and
//! the convolution theorem.

use fractal_calculus::laplace::{
    convolve, inverse_laplace, laplace_numeric, laplace_rule, solve_linear, Image, LaplaceExpr, LaplaceOptions,
    LaplaceTerm, TransformRule,
};
use fractal_calculus::special::gamma;
use fractal_calculus::staircase::StaircaseFn;
use fractal_calculus::FractalFn;

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();

    // numeric transform of S^β against the power rule
    for beta in [0.0, 0.5, 2.0] {
        let f = FractalFn::of_staircase(move |u| u.powf(beta));
        let v = laplace_numeric(&f, &sf, 2.0, LaplaceOptions::default())?;
        println!("L[S^{beta}](2) = {:.12}  rule {:.12}  tail <= {:.1e}", v.value, gamma(1.0 + beta)? / 2f64.powf(beta + 1.0), v.tail_bound);
    }

    // D^{1/2} y - y = 0 with I^{1/2} y(0) = 1, solved symbolically
    let lhs = laplace_rule(&TransformRule::RLDerivative { beta: 0.5, boundary: vec![1.0] }, &Image::unknown())?
        .minus(&Image::unknown());
    let y = solve_linear(&lhs, &Image::known(LaplaceExpr::zero()))?;
    println!("Y(σ) = {y}");
    let inverse = inverse_laplace(&y, &sf)?;
    for t in inverse.terms() {
        println!("  term {t}");
    }
    println!("y(1/4) = {:.10}", inverse.eval(0.25)?);

    // the inverse transforms back
    let expr = LaplaceExpr::new(vec![LaplaceTerm::resolvent(1.0, 0.0, 4.0 / 3.0, -0.5)])?;
    let back = inverse_laplace(&expr, &sf)?.to_fractal_fn();
    let v = laplace_numeric(&back, &sf, 2.0, LaplaceOptions::default())?;
    println!("round trip at σ = 2: {:.8} vs {:.8}", v.value, expr.eval(2.0));

    // convolution theorem: L[f * g] = L[f] L[g]
    let conv = FractalFn::of_x(move |x| convolve(&|u| u, &|u| (-u).exp(), &sf, x).unwrap_or(f64::NAN));
    let lhs = laplace_numeric(&conv, &sf, 3.0, LaplaceOptions::default())?.value;
    println!("L[S * e^-S](3) = {lhs:.10}  product {:.10}", (1.0 / 9.0) * (1.0 / 4.0));
    Ok(())
}
