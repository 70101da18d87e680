//! Riemann–Liouville and Caputo fractal operators, power rules and the
//! composition identities.

use fractal_calculus::operators::{
    apply, composition_residual, power_rule_derivative, power_rule_integral, CompositionKind, KernelConvention,
    OperatorSpec, Scheme, Side,
};
use fractal_calculus::staircase::StaircaseFn;
use fractal_calculus::FractalFn;

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();
    let square = FractalFn::of_staircase(|u| u * u);
    let integral = OperatorSpec::rl_integral(Side::Left, 0.0, 0.5)?;
    let derivative = OperatorSpec::rl_derivative(Side::Left, 0.0, 0.5)?;
    let caputo = OperatorSpec::caputo(Side::Right, 1.0, 0.5)?;
    println!("{:>8} {:>14} {:>14} {:>14} {:>14} {:>14}", "x", "I^1/2 S^2", "power rule", "D^1/2 S^2", "power rule", "right Caputo");
    for x in [0.25, 0.5, 0.75, 0.9] {
        println!(
            "{x:>8.4} {:>14.10} {:>14.10} {:>14.10} {:>14.10} {:>14.10}",
            apply(&integral, &square, &sf, x)?,
            power_rule_integral(0.5, 2.0, &sf, 0.0, x)?,
            apply(&derivative, &square, &sf, x)?,
            power_rule_derivative(0.5, 2.0, &sf, 0.0, x)?,
            apply(&caputo, &square, &sf, x)?,
        );
    }

    let de = derivative.with_scheme(Scheme::DoubleExponential);
    let shifted = derivative.with_convention(KernelConvention::DimensionShifted);
    println!("D^1/2 S^2 at 1: tanh-sinh {:.10}, dimension-shifted kernel {:.10}", apply(&de, &square, &sf, 1.0)?, apply(&shifted, &square, &sf, 1.0)?);

    let grid: Vec<f64> = [0.25, 0.5, 0.75].iter().map(|&u| sf.quantile(u)).collect::<Result<_, _>>()?;
    for kind in CompositionKind::ALL {
        println!("composition {kind:?}: residual {:.2e}", composition_residual(kind, &square, 0.5, &sf, (0.0, 1.0), &grid)?);
    }
    Ok(())
}
